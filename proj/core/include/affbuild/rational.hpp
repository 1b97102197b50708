#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace affbuild {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when operands live in groups/spaces of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised by parsers; carries the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string token)
      : Error(message + " near '" + token + "'"), token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

/// n / d in lowest terms; mpq's two-argument constructor does not reduce.
inline Rational make_rational(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Converts an integral rational to a machine integer; throws otherwise.
std::int64_t to_int64(const Rational& q);

}  // namespace affbuild
