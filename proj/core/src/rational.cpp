#include "affbuild/rational.hpp"

#include <cctype>

namespace affbuild {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty rational", std::string(text));
  auto valid_int = [](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw ParseError("malformed rational", std::string(text));
  }
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  Rational q;
  q.get_num() = mpz_class(num);
  q.get_den() = mpz_class(den);
  if (q.get_den() == 0) throw ParseError("zero denominator", std::string(text));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw Error("expected an integer, got " + to_string(q));
  if (!q.get_num().fits_slong_p()) throw Error("integer out of range: " + to_string(q));
  return q.get_num().get_si();
}

}  // namespace affbuild
