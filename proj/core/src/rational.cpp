#include "d1lc/rational.hpp"

#include "d1lc/error.hpp"

#include <string>

namespace d1lc {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    auto b = t.find_first_not_of(" \t");
    auto e = t.find_last_not_of(" \t");
    t = b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw Error(Errc::Parse, "empty rational");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      if (frac.empty()) frac = "0";
      for (char c : whole + frac) {
        if (c < '0' || c > '9') throw Error(Errc::Parse, "bad decimal '" + s + "'");
      }
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational q(mpz_class(whole) * den + mpz_class(frac), den);
      q.canonicalize();
      return negative ? Rational(-q) : q;
    }
    Rational q(s);
    if (q.get_den() == 0) throw Error(Errc::Parse, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(Errc::Parse, "bad rational '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

namespace {

// floor((n^a)^(1/b)) together with an exactness flag.
std::pair<mpz_class, bool> integer_root_of_power(std::uint64_t n, const Rational& q) {
  if (q < 0) throw Error(Errc::BadParameters, "negative exponent");
  mpz_class a = q.get_num();
  mpz_class b = q.get_den();
  if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw Error(Errc::BadParameters, "exponent too large");
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), n, a.get_ui());
  mpz_class root;
  int exact = mpz_root(root.get_mpz_t(), base.get_mpz_t(), b.get_ui());
  return {root, exact != 0};
}

}  // namespace

std::uint64_t ceil_pow(std::uint64_t n, const Rational& q) {
  auto [root, exact] = integer_root_of_power(n, q);
  if (!exact) root += 1;
  return root.get_ui();
}

std::uint64_t floor_pow(std::uint64_t n, const Rational& q) {
  return integer_root_of_power(n, q).first.get_ui();
}

}  // namespace d1lc
