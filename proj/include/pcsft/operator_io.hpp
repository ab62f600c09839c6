#pragma once

#include "pcsft/errors.hpp"
#include "pcsft/filters.hpp"
#include "pcsft/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcsft {

// Declared role of an operator record; role-specific invariants are
// validated on load.
enum class OperatorRole {
  kUnspecified,
  kDensity,
  kHamiltonian,
  kObservable,
  kKrausBlock,
  kProjector,
};

std::string to_string(OperatorRole role);
OperatorRole role_from_string(const std::string& s);

// One operator as stored on disk: a dim x dim complex matrix whose entries
// are [re, im] pairs, plus optional metadata.
struct OperatorRecord {
  ComplexMatrix entries;
  std::string name;
  OperatorRole role = OperatorRole::kUnspecified;
};

// Parses and validates a single-operator JSON file. Schema errors name the
// offending key or entry; role invariants (Hermitian, PSD, trace-1,
// idempotent) are enforced according to the declared role.
OperatorRecord load_operator_file(const std::string& path);

// Parses a channel file: an ordered JSON array of operator records with
// role "kraus-block" (the role may be omitted; any other role is rejected).
std::vector<OperatorRecord> load_channel_file(const std::string& path);

BlockFilter block_filter_from_records(
    const std::vector<OperatorRecord>& records, bool unchecked = false);

// Writers for the same schema; used by tooling and tests.
std::string operator_to_json(const ComplexMatrix& m, const std::string& name,
                             OperatorRole role);
std::string channel_to_json(const std::vector<ComplexMatrix>& blocks,
                            const std::string& name);
void write_text_file(const std::string& path, const std::string& content);

// Enforces the invariants implied by the declared role; throws the matching
// domain error (InvalidState, NotHermitian, NotProjector, ...).
void validate_role(const OperatorRecord& record);

}  // namespace pcsft
