#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plrelu {

/// Exact rational scalar. GMP keeps mpq_class values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline int sign(const Scalar& s) { return sgn(s); }

/// num/den in canonical form. mpq_class(num, den) alone does not reduce.
inline Scalar ratio(long num, long den) {
  Scalar r(num, den);
  r.canonicalize();
  return r;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline Scalar pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return Scalar(p);
}

} // namespace detail

/// Parses "p/q", "-12", "3.25", "1e-3" or "-2.5E+2" exactly.
inline Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto fail = [&]() -> ParseError {
    return ParseError("not an exact number: '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Scalar result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    result = Scalar(n, d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!detail::all_digits(exp_text) || exp_text.size() > 6) throw fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto int_part = s.substr(0, dot);
      auto frac_part = s.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) throw fail();
      if ((!int_part.empty() && !detail::all_digits(int_part)) ||
          (!frac_part.empty() && !detail::all_digits(frac_part)))
        throw fail();
      digits = std::string(int_part) + std::string(frac_part);
      fraction_digits = static_cast<long>(frac_part.size());
    } else {
      if (!detail::all_digits(s)) throw fail();
      digits = std::string(s);
    }
    result = Scalar(mpz_class(digits, 10));
    long shift = exponent - fraction_digits;
    if (shift > 0) result *= detail::pow10(shift);
    else if (shift < 0) result /= detail::pow10(-shift);
  }
  return negative ? Scalar(-result) : result;
}

/// Canonical text: "p/q", or "p" when the denominator is one.
inline std::string format_scalar(const Scalar& s) { return s.get_str(10); }

inline double to_double(const Scalar& s) { return s.get_d(); }

} // namespace plrelu
