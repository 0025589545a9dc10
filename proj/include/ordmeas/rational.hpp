#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ordmeas {

// Contract violations (malformed input, mismatched spaces, out-of-domain
// requests) are reported by throwing this type.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalars are exact rationals. Every identity in this library is an exact
// equality; there are no tolerances anywhere.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw error("rational with zero denominator");
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p", "-p", and "p/q"; arbitrary precision. Result is canonical.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    mpz_class num(slash == std::string::npos ? text : text.substr(0, slash));
    mpz_class den(slash == std::string::npos ? std::string("1")
                                             : text.substr(slash + 1));
    if (den == 0) throw error("rational with zero denominator: " + text);
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw error("malformed rational: " + text);
  }
}

}  // namespace ordmeas
