#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Core>
#include <boost/rational.hpp>

namespace latmorph {

using Rational = boost::rational<std::int64_t>;

template <typename T>
struct is_rational : std::false_type {};
template <typename I>
struct is_rational<boost::rational<I>> : std::true_type {};

/// Converts between double and Rational; exact in the Rational -> double
/// direction up to double rounding.
template <typename To, typename From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>)
    return v;
  else if constexpr (is_rational<From>::value)
    return boost::rational_cast<To>(v);
  else
    return static_cast<To>(v);
}

namespace detail {
inline std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw std::invalid_argument("rational: bad integer '" + std::string(s) + "'");
  return v;
}
}  // namespace detail

/// Parses "p", "p/q" or a terminating decimal such as "-0.25" exactly.
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = detail::parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(detail::parse_int(s.substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("rational: too many decimals");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string digits(s.substr(0, dot));
    digits += frac;
    if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
    return Rational(detail::parse_int(digits), scale);
  }
  return Rational(detail::parse_int(s));
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace latmorph

namespace Eigen {

template <>
struct NumTraits<latmorph::Rational> : GenericNumTraits<latmorph::Rational> {
  using Real = latmorph::Rational;
  using NonInteger = latmorph::Rational;
  using Literal = latmorph::Rational;
  using Nested = latmorph::Rational;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
