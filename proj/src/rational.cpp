#include "itres/rational.hpp"

#include "itres/error.hpp"

#include <cctype>

namespace itres {

std::string to_string(const Rational& q) {
  return q.get_str(10);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return r;
}

}  // namespace itres
