#pragma once

// Exact univariate polynomials in the percolation parameter p.
//
// BasicPolynomial<Rational> is the general coefficient field; BasicPolynomial<Integer>
// is the subring used wherever every coefficient is known to be integral (kernel
// entries, normalized stationary vectors, their powers). Sturm machinery works
// on the integer form with content stripped.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace layerperc {

template <class Coeff>
class BasicPolynomial {
 public:
  using coefficient_type = Coeff;

  BasicPolynomial() = default;

  BasicPolynomial(int constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) coeffs_.emplace_back(constant);
  }

  BasicPolynomial(const Coeff& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) coeffs_.push_back(constant);
  }

  /// Coefficients in ascending degree order; trailing zeros are stripped.
  explicit BasicPolynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  BasicPolynomial(std::initializer_list<int> coeffs) {
    for (int c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static BasicPolynomial monomial(const Coeff& c, std::size_t degree) {
    if (c == 0) return {};
    std::vector<Coeff> v(degree + 1, Coeff(0));
    v[degree] = c;
    return BasicPolynomial(std::move(v));
  }

  /// The variable p.
  static BasicPolynomial variable() { return monomial(Coeff(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  const std::vector<Coeff>& coefficients() const { return coeffs_; }

  Coeff operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }

  const Coeff& leading() const {
    if (coeffs_.empty()) throw Error(ErrorCode::zero_polynomial, "leading coefficient of 0");
    return coeffs_.back();
  }

  /// Exponent of the largest power of p dividing this polynomial (0 for the zero polynomial).
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
    return coeffs_.empty() ? 0 : k;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  BasicPolynomial& operator*=(const BasicPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  BasicPolynomial& operator*=(const Coeff& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }

  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return BasicPolynomial(std::move(out));
  }

  friend BasicPolynomial operator*(BasicPolynomial a, const Coeff& c) { return a *= c; }
  friend BasicPolynomial operator*(const Coeff& c, BasicPolynomial a) { return a *= c; }
  friend BasicPolynomial operator*(BasicPolynomial a, int c) { return a *= Coeff(c); }
  friend BasicPolynomial operator*(int c, BasicPolynomial a) { return a *= Coeff(c); }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Multiplies by p^k.
  BasicPolynomial shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Coeff> v(k, Coeff(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return BasicPolynomial(std::move(v));
  }

  BasicPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Coeff> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return BasicPolynomial(std::move(v));
  }

  /// Exact value at a rational point (Horner).
  Rational operator()(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= at;
      acc += Rational(*it);
    }
    return acc;
  }

  double evaluate(double at) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + Rational(*it).get_d();
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using Polynomial = BasicPolynomial<Rational>;
using IntPolynomial = BasicPolynomial<Integer>;

template <class Coeff>
BasicPolynomial<Coeff> pow(BasicPolynomial<Coeff> base, unsigned exponent) {
  BasicPolynomial<Coeff> result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

/// p^k (1-p)^m, expanded.
template <class Coeff = Integer>
BasicPolynomial<Coeff> bernoulli_weight(unsigned open, unsigned closed) {
  return pow(BasicPolynomial<Coeff>{1, -1}, closed).shifted(open);
}

// ---------------------------------------------------------------------------
// Division

/// Quotient and remainder over the rationals.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::zero_polynomial, "division by zero polynomial");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  const Rational& lead = b.leading();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<std::size_t>(i)] / lead;
    if (f == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// a / b, which must divide exactly (throws inexact_division otherwise).
inline Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::inexact_division, "nonzero remainder");
  return q;
}

/// a / b over the integers; every step's leading division must be exact.
inline IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::zero_polynomial, "division by zero polynomial");
  if (a.is_zero()) return {};
  const int db = b.degree();
  if (a.degree() < db) throw Error(ErrorCode::inexact_division, "divisor degree exceeds dividend");
  std::vector<Integer> rem = a.coefficients();
  std::vector<Integer> quot(static_cast<std::size_t>(a.degree() - db + 1), Integer(0));
  const Integer& lead = b.leading();
  Integer f;
  for (int i = a.degree(); i >= db; --i) {
    auto& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw Error(ErrorCode::inexact_division, "leading coefficient does not divide");
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    quot[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      const auto& bj = b.coefficients()[static_cast<std::size_t>(j)];
      if (bj != 0) rem[static_cast<std::size_t>(i - db + j)] -= f * bj;
    }
  }
  for (int i = 0; i < db; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) throw Error(ErrorCode::inexact_division, "nonzero remainder");
  return IntPolynomial(std::move(quot));
}

/// lc(b)^(deg a - deg b + 1) * a  mod  b, computed without fractions.
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::zero_polynomial, "pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> rem = a.coefficients();
  const int db = b.degree();
  const Integer& lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Integer top = rem[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) rem[static_cast<std::size_t>(k)] *= lead;
    rem[static_cast<std::size_t>(i)] = 0;
    if (top != 0)
      for (int j = 0; j < db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= top * b.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return IntPolynomial(std::move(rem));
}

// ---------------------------------------------------------------------------
// Content, primitive parts, gcd

/// Nonnegative gcd of all coefficients (0 for the zero polynomial).
inline Integer content(const IntPolynomial& q) {
  Integer g = 0;
  for (const auto& c : q.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// q / content(q); keeps the sign of the leading coefficient.
inline IntPolynomial primitive_part(const IntPolynomial& q) {
  Integer g = content(q);
  if (g <= 1) return q;
  std::vector<Integer> v = q.coefficients();
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

/// Clears denominators and content: the unique primitive integer polynomial that is a
/// positive rational multiple of q.
inline IntPolynomial to_primitive_integer(const Polynomial& q) {
  Integer l = 1;
  for (const auto& c : q.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  v.reserve(q.coefficients().size());
  for (const auto& c : q.coefficients()) v.emplace_back(c.get_num() * (l / c.get_den()));
  return primitive_part(IntPolynomial(std::move(v)));
}

inline Polynomial to_rational(const IntPolynomial& q) {
  std::vector<Rational> v(q.coefficients().begin(), q.coefficients().end());
  return Polynomial(std::move(v));
}

/// Primitive gcd over Z[p] with positive leading coefficient (contents are ignored); gcd(0,0) = 0.
inline IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero() && b.is_zero()) return {};
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  if (a.leading() < 0) a = -a;
  return a;
}

/// Monic gcd over Q[p]; gcd(0,0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  IntPolynomial g = gcd(to_primitive_integer(a), to_primitive_integer(b));
  if (g.is_zero()) return {};
  Polynomial r = to_rational(g);
  return r * Rational(1 / r.leading());
}

/// Squarefree factors (Yun): q = c * f_1 * f_2^2 * ... * f_k^k with each f_i primitive,
/// squarefree, pairwise coprime. Index 0 of the result holds f_1.
inline std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial& q) {
  if (q.is_zero()) throw Error(ErrorCode::zero_polynomial, "squarefree decomposition of 0");
  std::vector<IntPolynomial> factors;
  IntPolynomial a = primitive_part(q);
  if (a.leading() < 0) a = -a;
  if (a.degree() <= 0) return factors;
  IntPolynomial da = a.derivative();
  IntPolynomial b = gcd(a, da);
  IntPolynomial c = exact_div(a, b);
  IntPolynomial d = exact_div(da, b) - c.derivative();
  while (c.degree() > 0) {
    IntPolynomial f = gcd(c, d);
    c = exact_div(c, f);
    d = exact_div(d, f) - c.derivative();
    factors.push_back(f);
  }
  while (!factors.empty() && factors.back().degree() <= 0) factors.pop_back();
  return factors;
}

/// Sign of q at num/den (den > 0) using only integer arithmetic.
inline int sign_at(const IntPolynomial& q, const Rational& at) {
  if (q.is_zero()) return 0;
  const Integer& num = at.get_num();
  const Integer& den = at.get_den();
  // sum c_i num^i den^(d-i), Horner in the homogenized form.
  Integer acc = 0;
  Integer den_pow = 1;
  const auto& c = q.coefficients();
  acc = c.back();
  for (int i = q.degree() - 1; i >= 0; --i) {
    den_pow *= den;
    acc *= num;
    acc += c[static_cast<std::size_t>(i)] * den_pow;
  }
  return sgn(acc);
}

// ---------------------------------------------------------------------------
// Rendering

template <class Coeff>
std::string to_string(const BasicPolynomial<Coeff>& q, const char* var = "p") {
  if (q.is_zero()) return "0";
  std::string out;
  const auto& c = q.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational r(c[i]);
    bool neg = r < 0;
    if (neg) r = -r;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = r == 1;
    if (!unit || i == 0) out += r.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace layerperc
