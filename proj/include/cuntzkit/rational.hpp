#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "cuntzkit/error.hpp"

namespace cuntzkit {

/// Exact arbitrary-precision rational. Always kept canonical (gcd 1, q > 0).
using Rational = mpq_class;

inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Formats as "p/q", including "n/1" for integers.
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "p/q", "p" or a finite decimal such as "1.1" or "-0.25".
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return MalformedInput("invalid rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-') throw bad();
    mpz_class q(den);
    if (q == 0) throw bad();
    Rational r(mpz_class(num), q);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (neg) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (!is_int(whole) || frac.empty() || !is_int(frac) || frac.front() == '-') throw bad();
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(mpz_class(whole) * den + mpz_class(frac), den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  if (!is_int(s)) throw bad();
  return Rational(mpz_class(s));
}

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

}  // namespace cuntzkit
