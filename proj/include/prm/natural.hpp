#ifndef PRM_NATURAL_HPP
#define PRM_NATURAL_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace prm {

// Arbitrary-precision natural number (expression templates off so `auto` and
// ?: behave). The backend is signed; every public entry point that accepts a
// Natural rejects negative values.
using Natural = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

inline bool fits_u64(const Natural& n) {
  return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

inline std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) {
    throw std::out_of_range("natural does not fit in 64 bits: " + n.str());
  }
  return n.convert_to<std::uint64_t>();
}

// Saturating conversion, used for step budgets.
inline std::uint64_t to_u64_saturating(const Natural& n) {
  if (n < 0) return 0;
  if (!fits_u64(n)) return std::numeric_limits<std::uint64_t>::max();
  return n.convert_to<std::uint64_t>();
}

inline void require_natural(const Natural& n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be a natural number");
}

inline Natural parse_natural(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a natural number: '" + text + "'");
  }
  return Natural(text);
}

// Number of significant bits (0 for zero).
inline std::size_t bit_length(const Natural& n) {
  return n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
}

}  // namespace prm

#endif  // PRM_NATURAL_HPP
