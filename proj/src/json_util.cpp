#include "prm/json_util.hpp"

#include "prm/eval.hpp"

#include <cstdio>

#include <openssl/evp.h>

namespace prm {

Json natural_to_json(const Natural& n) {
  require_natural(n, "serialized natural");
  if (fits_u64(n)) return Json(n.convert_to<std::uint64_t>());
  return Json(n.str());
}

Natural natural_from_json(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw FormatError(std::string(what) + ": negative value");
    return Natural(v);
  }
  if (j.is_string()) {
    try {
      return parse_natural(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw FormatError(std::string(what) + ": expected a natural number");
}

Json naturals_to_json(const std::vector<Natural>& v) {
  Json out = Json::array();
  for (const Natural& n : v) out.push_back(natural_to_json(n));
  return out;
}

std::vector<Natural> naturals_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + ": expected an array");
  std::vector<Natural> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(natural_from_json(e, what));
  return out;
}

std::vector<std::uint64_t> rle_encode(const std::vector<bool>& bits) {
  std::vector<std::uint64_t> runs;
  bool current = false;
  std::uint64_t len = 0;
  for (bool b : bits) {
    if (b == current) {
      ++len;
    } else {
      runs.push_back(len);
      current = b;
      len = 1;
    }
  }
  if (len > 0 || !runs.empty()) runs.push_back(len);
  return runs;
}

std::vector<bool> rle_decode(const std::vector<std::uint64_t>& runs) {
  constexpr std::uint64_t kMaxBits = std::uint64_t{1} << 32;
  std::vector<bool> bits;
  std::uint64_t total = 0;
  bool current = false;
  for (std::uint64_t r : runs) {
    total += r;
    if (r > kMaxBits || total > kMaxBits) throw FormatError("run-length data too long");
    bits.insert(bits.end(), r, current);
    current = !current;
  }
  return bits;
}

std::string canonical_dump(const Json& j) { return j.dump(1) + "\n"; }

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

void require_cost_model_version(const Json& j) {
  const Json& v = field(j, "cost_model_version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != kCostModelVersion)
    throw VersionMismatch("cost model version " + v.dump() + " (expected " +
                          std::to_string(kCostModelVersion) + ")");
}

}  // namespace prm
