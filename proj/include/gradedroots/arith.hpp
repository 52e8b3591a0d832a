#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gradedroots {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* Error categories; the CLI layer maps them to process exit codes
   (input_error -> 2, cap_error -> 3, mismatch_error -> 1). */
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};
struct cap_error : std::runtime_error {
  explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};
struct mismatch_error : std::runtime_error {
  explicit mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

inline std::int64_t to_int64(const Int& v) { return static_cast<std::int64_t>(v); }

inline Int rat_to_int(const Rat& v, const char* context) {
  if (boost::multiprecision::denominator(v) != 1)
    throw input_error(std::string(context) + ": expected an integer, got " + v.str());
  return boost::multiprecision::numerator(v);
}

/* Inverse of a modulo m, for coprime a, m >= 1. */
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw input_error("mod_inverse: arguments are not coprime");
  return ((t % m) + m) % m;
}

inline bool pairwise_coprime(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1;
}

}  // namespace gradedroots
