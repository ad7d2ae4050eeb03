#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace esk {

// All geometric arithmetic is exact. Coordinates are arbitrary-precision
// integers, ordinates produced by the linear realizer are exact rationals.
using bigint = mpz_class;
using bigrat = mpq_class;

inline bigint bigint_from_string(const std::string& s) {
  mpz_class v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return v;
}

inline std::string to_string(const bigint& v) { return v.get_str(); }

inline int sign_of(const bigint& v) { return mpz_sgn(v.get_mpz_t()); }
inline int sign_of(const bigrat& v) { return mpq_sgn(v.get_mpq_t()); }

}  // namespace esk
