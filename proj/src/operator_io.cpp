#include "pcsft/operator_io.hpp"

#include "pcsft/linalg.hpp"
#include "pcsft/state.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pcsft {

using nlohmann::json;

std::string to_string(OperatorRole role) {
  switch (role) {
    case OperatorRole::kDensity:
      return "density";
    case OperatorRole::kHamiltonian:
      return "hamiltonian";
    case OperatorRole::kObservable:
      return "observable";
    case OperatorRole::kKrausBlock:
      return "kraus-block";
    case OperatorRole::kProjector:
      return "projector";
    case OperatorRole::kUnspecified:
      break;
  }
  return "unspecified";
}

OperatorRole role_from_string(const std::string& s) {
  if (s == "density") return OperatorRole::kDensity;
  if (s == "hamiltonian") return OperatorRole::kHamiltonian;
  if (s == "observable") return OperatorRole::kObservable;
  if (s == "kraus-block") return OperatorRole::kKrausBlock;
  if (s == "projector") return OperatorRole::kProjector;
  throw SchemaError("unknown role \"" + s +
                    "\" (expected density, hamiltonian, observable, "
                    "kraus-block or projector)");
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Complex parse_complex(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
      !value[1].is_number()) {
    throw SchemaError(where + ": expected a [re, im] pair of numbers, got " +
                      value.dump());
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

OperatorRecord record_from_json(const json& node, const std::string& where) {
  if (!node.is_object()) {
    throw SchemaError(where + ": expected an operator object");
  }
  if (!node.contains("dim") || !node["dim"].is_number_integer() ||
      node["dim"].get<long long>() < 1) {
    throw SchemaError(where + ": \"dim\" must be a positive integer");
  }
  const Index dim = node["dim"].get<Index>();
  if (!node.contains("entries") || !node["entries"].is_array() ||
      node["entries"].size() != static_cast<std::size_t>(dim)) {
    throw SchemaError(where + ": \"entries\" must be an array of " +
                      std::to_string(dim) + " rows");
  }

  OperatorRecord record;
  record.entries.resize(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row = node["entries"][static_cast<std::size_t>(i)];
    const std::string row_where =
        where + ": entries[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw SchemaError(row_where + ": expected " + std::to_string(dim) +
                        " columns");
    }
    for (Index j = 0; j < dim; ++j) {
      record.entries(i, j) =
          parse_complex(row[static_cast<std::size_t>(j)],
                        row_where + "[" + std::to_string(j) + "]");
    }
  }
  if (node.contains("name")) {
    if (!node["name"].is_string()) {
      throw SchemaError(where + ": \"name\" must be a string");
    }
    record.name = node["name"].get<std::string>();
  }
  if (node.contains("role")) {
    if (!node["role"].is_string()) {
      throw SchemaError(where + ": \"role\" must be a string");
    }
    record.role = role_from_string(node["role"].get<std::string>());
  }
  return record;
}

json record_to_json(const ComplexMatrix& m, const std::string& name,
                    OperatorRole role) {
  json node;
  node["dim"] = m.rows();
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  node["entries"] = std::move(rows);
  if (!name.empty()) {
    node["name"] = name;
  }
  if (role != OperatorRole::kUnspecified) {
    node["role"] = to_string(role);
  }
  return node;
}

}  // namespace

void validate_role(const OperatorRecord& record) {
  const ComplexMatrix& m = record.entries;
  switch (record.role) {
    case OperatorRole::kDensity: {
      // Full invariant check; reuse the constructor's validation.
      const DensityOperator validated(m);
      static_cast<void>(validated);
      return;
    }
    case OperatorRole::kHamiltonian:
    case OperatorRole::kObservable:
      if (!is_hermitian(m, scaled_tol(m))) {
        throw NotHermitian("operator with role \"" + to_string(record.role) +
                           "\" is not Hermitian");
      }
      return;
    case OperatorRole::kProjector:
      if (!is_hermitian(m, scaled_tol(m))) {
        throw NotProjector("projector is not Hermitian");
      }
      if (frobenius_distance(m * m, m) > scaled_tol(m)) {
        throw NotProjector("projector is not idempotent");
      }
      return;
    case OperatorRole::kKrausBlock:
    case OperatorRole::kUnspecified:
      return;
  }
}

OperatorRecord load_operator_file(const std::string& path) {
  const json root = parse_file(path);
  OperatorRecord record = record_from_json(root, path);
  validate_role(record);
  return record;
}

std::vector<OperatorRecord> load_channel_file(const std::string& path) {
  const json root = parse_file(path);
  if (!root.is_array() || root.empty()) {
    throw SchemaError(path +
                      ": expected a non-empty array of operator records");
  }
  std::vector<OperatorRecord> records;
  for (std::size_t i = 0; i < root.size(); ++i) {
    OperatorRecord record =
        record_from_json(root[i], path + "[" + std::to_string(i) + "]");
    if (record.role != OperatorRole::kUnspecified &&
        record.role != OperatorRole::kKrausBlock) {
      throw SchemaError(path + "[" + std::to_string(i) +
                        "]: channel entries must have role \"kraus-block\"");
    }
    records.push_back(std::move(record));
  }
  return records;
}

BlockFilter block_filter_from_records(
    const std::vector<OperatorRecord>& records, bool unchecked) {
  BlockFilter filter;
  for (const OperatorRecord& record : records) {
    filter.blocks.push_back(record.entries);
  }
  filter.unchecked = unchecked;
  filter.require_consistent();
  return filter;
}

std::string operator_to_json(const ComplexMatrix& m, const std::string& name,
                             OperatorRole role) {
  return record_to_json(m, name, role).dump(2) + "\n";
}

std::string channel_to_json(const std::vector<ComplexMatrix>& blocks,
                            const std::string& name) {
  json arr = json::array();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string block_name =
        name.empty() ? "" : name + "[" + std::to_string(i) + "]";
    arr.push_back(
        record_to_json(blocks[i], block_name, OperatorRole::kKrausBlock));
  }
  return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << content;
}

}  // namespace pcsft
