#pragma once

// Real-root counting with Sturm sequences and sign certification of polynomials on
// rational sub-intervals of [0, 1].

#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace layerperc {

/// Rational interval with independently open or closed ends.
struct Interval {
  Rational lower = 0;
  Rational upper = 1;
  bool lower_closed = false;
  bool upper_closed = false;

  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Interval open_closed(Rational a, Rational b) { return {std::move(a), std::move(b), false, true}; }
  static Interval unit() { return open(0, 1); }

  bool contains(const Rational& x) const {
    return (lower_closed ? x >= lower : x > lower) && (upper_closed ? x <= upper : x < upper);
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Verdict { positive, nonnegative_with_zeros, identically_zero, changes_sign, negative };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::positive: return "positive";
    case Verdict::nonnegative_with_zeros: return "nonnegative-with-interior-zeros";
    case Verdict::identically_zero: return "identically-zero";
    case Verdict::changes_sign: return "changes-sign";
    case Verdict::negative: return "negative";
  }
  return "?";
}

inline Verdict parse_verdict(const std::string& s) {
  for (auto v : {Verdict::positive, Verdict::nonnegative_with_zeros, Verdict::identically_zero,
                 Verdict::changes_sign, Verdict::negative})
    if (s == to_string(v)) return v;
  throw Error(ErrorCode::parse_error, "unknown verdict " + s);
}

/// Outcome of certify_sign. `witness` is an open sub-interval with the polynomial taking
/// opposite nonzero signs at its endpoints; it is present iff the verdict is changes_sign.
/// "negative" also covers polynomials that are <= 0 with zeros.
struct SignCertificate {
  Verdict verdict = Verdict::identically_zero;
  Interval interval;
  std::optional<Interval> witness;

  /// The predicate used by the monotonicity engine.
  bool nonnegative() const {
    return verdict == Verdict::positive || verdict == Verdict::nonnegative_with_zeros ||
           verdict == Verdict::identically_zero;
  }

  friend bool operator==(const SignCertificate&, const SignCertificate&) = default;
};

/// Sturm sequence of a squarefree polynomial, each member content-stripped.
/// Members are positive multiples of the classical sequence f, f', -rem(...), ...
inline std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& f) {
  std::vector<IntPolynomial> seq;
  if (f.is_zero()) return seq;
  seq.push_back(primitive_part(f));
  IntPolynomial d = f.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(primitive_part(d));
  while (seq.back().degree() > 0) {
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem = lc(b)^k a mod b; flip so the member is a positive multiple of -rem(a, b).
    unsigned k = static_cast<unsigned>(a.degree() - b.degree() + 1);
    bool lc_negative_power = b.leading() < 0 && (k % 2 == 1);
    r = primitive_part(r);
    seq.push_back(lc_negative_power ? r : -r);
  }
  return seq;
}

/// Sign variations of the sequence at a rational point, zeros dropped.
inline int sign_variations(const std::vector<IntPolynomial>& seq, const Rational& at) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    int sg = sign_at(s, at);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

namespace detail {

/// Distinct roots strictly inside (a, b) of a squarefree polynomial, given its sequence.
inline int count_open(const std::vector<IntPolynomial>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) throw Error(ErrorCode::zero_polynomial, "root count of 0");
  if (!(a < b)) return 0;
  int n = sign_variations(seq, a) - sign_variations(seq, b);
  if (sign_at(seq.front(), b) == 0) --n;
  return n;
}

inline IntPolynomial squarefree_part(const IntPolynomial& q) {
  IntPolynomial g = gcd(q, q.derivative());
  return g.degree() <= 0 ? primitive_part(q) : exact_div(primitive_part(q), g);
}

}  // namespace detail

/// Number of distinct real roots of q strictly inside (a, b).
inline int sturm_root_count(const IntPolynomial& q, const Rational& a, const Rational& b) {
  if (q.is_zero()) throw Error(ErrorCode::zero_polynomial, "root count of the zero polynomial");
  if (q.degree() == 0) return 0;
  return detail::count_open(sturm_sequence(detail::squarefree_part(q)), a, b);
}

inline int sturm_root_count(const Polynomial& q, const Rational& a, const Rational& b) {
  if (q.is_zero()) throw Error(ErrorCode::zero_polynomial, "root count of the zero polynomial");
  return sturm_root_count(to_primitive_integer(q), a, b);
}

/// Decides the sign behaviour of q on a sub-interval of [0, 1].
///
/// Endpoint factors p^a and (1-p)^b are stripped (they are positive on the open unit
/// interval), the remainder is split into odd- and even-multiplicity squarefree parts,
/// and only the odd part can produce a sign change. Zeros at closed endpoints are
/// reported as nonnegative-with-interior-zeros.
inline SignCertificate certify_sign(const IntPolynomial& q, const Interval& interval) {
  if (!(interval.lower < interval.upper) || interval.lower < 0 || interval.upper > 1)
    throw Error(ErrorCode::invalid_argument, "interval must satisfy 0 <= a < b <= 1");
  SignCertificate cert;
  cert.interval = interval;
  if (q.is_zero()) {
    cert.verdict = Verdict::identically_zero;
    return cert;
  }

  // Strip p^a.
  IntPolynomial r(std::vector<Integer>(q.coefficients().begin() + static_cast<long>(q.low_order()),
                                       q.coefficients().end()));
  // Strip (1-p)^b by repeated exact division.
  const IntPolynomial one_minus_p{1, -1};
  while (r.degree() > 0 && sign_at(r, Rational(1)) == 0) r = exact_div(r, one_minus_p);
  r = primitive_part(r);

  const Rational& a = interval.lower;
  const Rational& b = interval.upper;

  IntPolynomial odd(1), even(1);
  if (r.degree() > 0) {
    auto factors = squarefree_decomposition(r);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() <= 0) continue;
      if (i % 2 == 0) odd *= factors[i];   // multiplicity i + 1 odd
      else even *= factors[i];
    }
  }

  int odd_roots = odd.degree() > 0 ? detail::count_open(sturm_sequence(odd), a, b) : 0;
  if (odd_roots == 0) {
    // Sign is constant on the interior away from even roots; probe a non-root point.
    Rational probe = (a + b) / 2;
    while (sign_at(r, probe) == 0) probe = (a + probe) / 2;
    int s = sign_at(r, probe);
    bool zeros = even.degree() > 0 && detail::count_open(sturm_sequence(even), a, b) > 0;
    if (interval.lower_closed && sign_at(q, a) == 0) zeros = true;
    if (interval.upper_closed && sign_at(q, b) == 0) zeros = true;
    if (s > 0) cert.verdict = zeros ? Verdict::nonnegative_with_zeros : Verdict::positive;
    else cert.verdict = Verdict::negative;
    return cert;
  }

  // Bisect on the odd part down to one odd root with nonzero endpoint values.
  auto seq = sturm_sequence(odd);
  Rational lo = a, hi = b;
  for (;;) {
    if (detail::count_open(seq, lo, hi) == 1 && sign_at(q, lo) != 0 && sign_at(q, hi) != 0) break;
    Rational mid = (lo + hi) / 2;
    while (sign_at(r, mid) == 0) mid = (lo + mid) / 2;
    if (detail::count_open(seq, lo, mid) > 0) hi = mid;
    else lo = mid;
  }
  cert.verdict = Verdict::changes_sign;
  cert.witness = Interval::open(lo, hi);
  return cert;
}

inline SignCertificate certify_sign(const Polynomial& q, const Interval& interval) {
  if (q.is_zero()) return certify_sign(IntPolynomial(), interval);
  // to_primitive_integer scales by a positive rational, so signs are unchanged.
  return certify_sign(to_primitive_integer(q), interval);
}

}  // namespace layerperc
