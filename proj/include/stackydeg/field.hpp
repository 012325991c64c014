#pragma once

// Exact arithmetic over Q and Q(t), with the t-adic valuation at the origin.
// Elements regular at t = 0 model the discrete valuation ring; the variable t
// is its uniformizer.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stackydeg {

/// Exact rational number, always kept in lowest terms with positive
/// denominator (GMP canonicalizes after every operation).
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

/// Prints `p/q`, or just `p` when the denominator is 1. Never decimals.
std::string to_string(const Rat& r);

/// Parses `[-]int[/nat]`.
Rat parse_rat(std::string_view s);

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A t-adic valuation: an integer or +infinity (the valuation of 0).
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::int64_t v) : value_(v), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation{}; }

  constexpr bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  constexpr std::int64_t value() const { return value_; }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a,
                                                    const Valuation& b) {
    if (a.infinite_ || b.infinite_) return int(a.infinite_) <=> int(b.infinite_);
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = true;
};

std::string to_string(const Valuation& v);

/// Dense univariate polynomial over Q; coeffs()[i] is the coefficient of t^i.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  Poly(const Rat& c);  // NOLINT: constants convert implicitly
  static Poly monomial(const Rat& c, std::size_t exponent);
  static Poly t() { return monomial(Rat(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }
  /// Order of vanishing at t = 0; infinite for the zero polynomial.
  Valuation order_at_origin() const;

  Poly monic() const;
  /// Divides by t^k; requires k <= order_at_origin().
  Poly shift_down(std::size_t k) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// Monic gcd (zero iff both inputs are zero).
  static Poly gcd(Poly a, Poly b);

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

/// Element of Q(t) in canonical form: numerator and monic denominator are
/// coprime, and zero is 0/1. Structural equality is mathematical equality.
class RatFunc {
 public:
  RatFunc() : den_(Rat(1)) {}
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rat(c)) {}              // NOLINT
  RatFunc(Poly num, Poly den);
  static RatFunc t() { return RatFunc(Poly::t(), Poly(Rat(1))); }
  /// t^k for any integer k.
  static RatFunc t_pow(std::int64_t k);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  /// Largest exponent appearing in numerator or denominator.
  long max_degree() const { return std::max(num_.degree(), den_.degree()); }

 private:
  /// Caller guarantees gcd(num, den) = 1.
  static RatFunc from_coprime(Poly num, Poly den);
  void canonicalize();
  void normalize_leading();
  Poly num_;
  Poly den_;
};

RatFunc add(const RatFunc& f, const RatFunc& g);
RatFunc mul(const RatFunc& f, const RatFunc& g);
RatFunc neg(const RatFunc& f);
/// Throws DivisionByZero on f = 0.
RatFunc inv(const RatFunc& f);

/// Order of vanishing at t = 0 (negative for poles, +inf for 0).
Valuation val(const RatFunc& f);

/// Membership in the local ring at the origin: val(f) >= 0.
bool is_regular_at_origin(const RatFunc& f);

/// Writes p / q with exponents in descending order and no whitespace, e.g.
/// `t^2-1/2t+3/t+1`. The output re-parses to the identical canonical form.
std::string to_string(const Poly& p);
std::string to_string(const RatFunc& f);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

/// Grammar: `poly ("/" poly)?`, `poly := term (("+"|"-") term)*`,
/// `term := coeff? "t" ("^" nat)? | coeff`, `coeff := int ("/" nat)?`.
/// Whitespace is ignored, a leading sign is allowed, and either poly may be
/// wrapped in parentheses. Any exponent above `max_degree` is rejected.
RatFunc parse_ratfunc(std::string_view s,
                      long max_degree = std::numeric_limits<long>::max());

}  // namespace stackydeg
