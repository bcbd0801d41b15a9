#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

namespace modelspace {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

// Narrowing helpers; callers have already bounded the value by a size ceiling.
inline bool fits_size(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::size_t>::max());
}

inline bool fits_int64(const BigInt& v) {
  return v >= BigInt(std::numeric_limits<std::int64_t>::min()) &&
         v <= BigInt(std::numeric_limits<std::int64_t>::max());
}

// Nonnegative remainder.
inline BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

}  // namespace modelspace
