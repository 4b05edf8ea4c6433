#ifndef PRM_JSON_UTIL_HPP
#define PRM_JSON_UTIL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prm/natural.hpp"

namespace prm {

using Json = nlohmann::json;

// Thrown for structurally invalid artifact documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The document was written under a different cost model.
class VersionMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

// Throws VersionMismatch unless j.cost_model_version is the current one.
void require_cost_model_version(const Json& j);

// Naturals below 2^64 are JSON numbers, larger ones decimal strings.
Json natural_to_json(const Natural& n);
Natural natural_from_json(const Json& j, const char* what);

Json naturals_to_json(const std::vector<Natural>& v);
std::vector<Natural> naturals_from_json(const Json& j, const char* what);

// Run-length encoding of a bit vector: alternating run lengths, the first run
// counting zeros (possibly 0).
std::vector<std::uint64_t> rle_encode(const std::vector<bool>& bits);
std::vector<bool> rle_decode(const std::vector<std::uint64_t>& runs);

// Canonical text: sorted keys (nlohmann's object is ordered by key), no
// floats, fixed indentation.
std::string canonical_dump(const Json& j);

std::string sha256_hex(const std::string& data);

// Fetch a required member or throw FormatError.
const Json& field(const Json& j, const char* key);

}  // namespace prm

#endif  // PRM_JSON_UTIL_HPP
