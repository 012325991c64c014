#include "stackydeg/field.hpp"

#include <cctype>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <utility>

namespace stackydeg {

Rat make_rat(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  auto is_int = [](const std::string& x, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < x.size() && (x[i] == '-' || x[i] == '+')) ++i;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  std::string num = str.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false))
    throw ParseError("malformed rational '" + str + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Valuation& v) {
  return v.is_infinite() ? std::string("inf") : std::to_string(v.value());
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(const Rat& c) {
  if (c != 0) coeffs_.push_back(c);
}

Poly Poly::monomial(const Rat& c, std::size_t exponent) {
  if (c == 0) return {};
  std::vector<Rat> v(exponent + 1, Rat(0));
  v[exponent] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Valuation Poly::order_at_origin() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return Valuation(static_cast<std::int64_t>(i));
  return Valuation::infinity();
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Rat lc = leading();
  std::vector<Rat> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeffs_[i] / lc;
  return Poly(std::move(v));
}

Poly Poly::shift_down(std::size_t k) const {
  if (k == 0 || is_zero()) return *this;
  return Poly(std::vector<Rat>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Rat> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

namespace {

// Integer numerators over a common denominator.
mpz_class scale_to_int(const std::vector<Rat>& c, std::vector<mpz_class>& out) {
  mpz_class l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  out.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), l.get_mpz_t(), c[i].get_den_mpz_t());
    out[i] *= c[i].get_num();
  }
  return l;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> x, y;
  const mpz_class den = scale_to_int(a.coeffs_, x) * scale_to_int(b.coeffs_, y);
  std::vector<mpz_class> acc(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      mpz_addmul(acc[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  std::vector<Rat> v(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    v[k] = Rat(acc[k], den);
    v[k].canonicalize();
  }
  return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rat> r = a.coeffs_;
  const long db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
  const Rat lb = b.leading();
  for (long i = a.degree(); i >= db; --i) {
    const Rat c = r[static_cast<std::size_t>(i)] / lb;
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (long j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

namespace {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

// A nonzero scalar multiple of f reduced mod p; fails when a denominator or
// the leading coefficient vanishes mod p.
bool reduce_mod(const Poly& f, std::vector<std::uint64_t>& out) {
  const auto& c = f.coeffs();
  const std::size_t n = c.size();
  std::vector<std::uint64_t> num(n), den(n), suffix(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    num[i] = mpz_fdiv_ui(c[i].get_num_mpz_t(), kPrime);
    den[i] = mpz_fdiv_ui(c[i].get_den_mpz_t(), kPrime);
    if (den[i] == 0) return false;
  }
  for (std::size_t i = n; i-- > 0;) suffix[i] = mulmod(suffix[i + 1], den[i]);
  out.assign(n, 0);
  std::uint64_t prefix = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = mulmod(num[i], mulmod(prefix, suffix[i + 1]));
    prefix = mulmod(prefix, den[i]);
  }
  return !out.empty() && out.back() != 0;
}

void trim_mod(std::vector<std::uint64_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

long gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const std::uint64_t lb = invmod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t q = mulmod(a.back(), lb);
      const std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[off + j] = (a[off + j] + kPrime - mulmod(q, b[j])) % kPrime;
      trim_mod(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<long>(a.size()) - 1;
}

using IntPoly = std::vector<mpz_class>;

IntPoly primitive(IntPoly v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  mpz_class g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g > 1)
    for (auto& c : v) c /= g;
  if (!v.empty() && v.back() < 0)
    for (auto& c : v) c = -c;
  return v;
}

IntPoly to_int(const Poly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.get_den());
  IntPoly v;
  for (const auto& c : f.coeffs()) v.push_back(c.get_num() * (l / c.get_den()));
  return primitive(std::move(v));
}

IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const mpz_class& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const mpz_class la = a.back();
    const std::size_t off = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= la * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

Poly Poly::gcd(Poly a, Poly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly(Rat(1));
  std::vector<std::uint64_t> am, bm;
  if (reduce_mod(a, am) && reduce_mod(b, bm) && gcd_degree_mod(am, bm) == 0) return Poly(Rat(1));

  IntPoly x = to_int(a), y = to_int(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    IntPoly r = primitive(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rat> c;
  for (const auto& z : x) c.emplace_back(z);
  return Poly(std::move(c)).monic();
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  canonicalize();
}

RatFunc RatFunc::from_coprime(Poly num, Poly den) {
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize_leading();
  return r;
}

void RatFunc::normalize_leading() {
  if (num_.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  const Rat lc = den_.leading();
  if (lc != 1) {
    num_ = num_ * Poly(Rat(1) / lc);
    den_ = den_ * Poly(Rat(1) / lc);
  }
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  if (den_.degree() > 0) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
  }
  normalize_leading();
}

RatFunc RatFunc::t_pow(std::int64_t k) {
  if (k >= 0) return RatFunc(Poly::monomial(Rat(1), static_cast<std::size_t>(k)), Poly(Rat(1)));
  return RatFunc(Poly(Rat(1)), Poly::monomial(Rat(1), static_cast<std::size_t>(-k)));
}

bool RatFunc::is_one() const { return den_.degree() == 0 && num_ == Poly(Rat(1)); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  const Poly g = Poly::gcd(a.den_, b.den_);
  if (g.degree() == 0)
    return RatFunc::from_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  const Poly ad = Poly::divmod(a.den_, g).first;
  const Poly bd = Poly::divmod(b.den_, g).first;
  return RatFunc(a.num_ * bd + b.num_ * ad, ad * b.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Cross-cancel first so the products stay reduced.
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (Poly g = Poly::gcd(an, bd); g.degree() > 0) {
    an = Poly::divmod(an, g).first;
    bd = Poly::divmod(bd, g).first;
  }
  if (Poly g = Poly::gcd(bn, ad); g.degree() > 0) {
    bn = Poly::divmod(bn, g).first;
    ad = Poly::divmod(ad, g).first;
  }
  return RatFunc::from_coprime(an * bn, ad * bd);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc add(const RatFunc& f, const RatFunc& g) { return f + g; }
RatFunc mul(const RatFunc& f, const RatFunc& g) { return f * g; }
RatFunc neg(const RatFunc& f) { return -f; }
RatFunc inv(const RatFunc& f) { return f.inverse(); }

Valuation val(const RatFunc& f) {
  if (f.is_zero()) return Valuation::infinity();
  return Valuation(f.numerator().order_at_origin().value() -
                   f.denominator().order_at_origin().value());
}

bool is_regular_at_origin(const RatFunc& f) { return val(f) >= Valuation(0); }

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (c < 0)
      out += "-";
    else if (!first)
      out += "+";
    first = false;
    if (i == 0) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag);
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::string to_string(const RatFunc& f) {
  std::string s = to_string(f.numerator());
  if (f.denominator().degree() > 0) s += "/" + to_string(f.denominator());
  return s;
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class RatFuncParser {
 public:
  RatFuncParser(std::string_view src, long max_degree) : max_degree_(max_degree) {
    for (char c : src)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  RatFunc parse() {
    if (s_.empty()) fail("empty expression");
    Poly num = poly();
    Poly den(Rat(1));
    if (peek() == '/') {
      ++pos_;
      den = poly();
      if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return RatFunc(std::move(num), std::move(den));
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool digit_at(std::size_t i) const {
    return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]));
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse rational function '" + s_ + "' at offset " +
                     std::to_string(pos_) + ": " + why);
  }

  mpz_class natural() {
    if (!digit_at(pos_)) fail("expected digits");
    std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return mpz_class(s_.substr(start, pos_ - start));
  }

  Poly poly() {
    const bool paren = peek() == '(';
    if (paren) ++pos_;
    Poly acc;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    acc = term(negative);
    while (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
      acc = acc + term(negative);
    }
    if (paren) {
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return acc;
  }

  Poly term(bool negative) {
    Rat coeff(1);
    bool has_coeff = false;
    if (digit_at(pos_)) {
      has_coeff = true;
      mpz_class n = natural();
      mpz_class d = 1;
      // A '/' belongs to the coefficient only when a natural number follows.
      if (peek() == '/' && digit_at(pos_ + 1)) {
        ++pos_;
        d = natural();
        if (d == 0) throw DivisionByZero("coefficient with zero denominator");
      }
      coeff = Rat(n, d);
      coeff.canonicalize();
      if (peek() == '*') ++pos_;
    }
    std::size_t exponent = 0;
    if (peek() == 't') {
      ++pos_;
      exponent = 1;
      if (peek() == '^') {
        ++pos_;
        if (!digit_at(pos_)) fail("expected exponent");
        std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        const std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 18) fail("exponent too large");
        exponent = std::stoull(digits);
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    if (exponent > static_cast<unsigned long>(max_degree_))
      fail("exponent " + std::to_string(exponent) + " exceeds the degree cap " +
           std::to_string(max_degree_));
    if (negative) coeff = -coeff;
    return Poly::monomial(coeff, exponent);
  }

  std::string s_;
  std::size_t pos_ = 0;
  long max_degree_;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view s, long max_degree) {
  return RatFuncParser(s, max_degree).parse();
}

}  // namespace stackydeg
