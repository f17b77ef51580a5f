#pragma once

#include <cmath>

namespace memfract {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 32 significant digits.
///
/// Raw-monomial polynomials of degree ~24 on [0, 171] cancel terms of size
/// 1e13 down to results of order one. Every coefficient product and partial
/// sum in those paths is carried in this type.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace dd {

inline DoubleDouble quick_two_sum(double a, double b) {
  double s = a + b;
  double e = b - (s - a);
  return {s, e};
}

inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  double e = std::fma(a, b, -p);
  return {p, e};
}

inline DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline DoubleDouble sub(DoubleDouble a, DoubleDouble b) { return add(a, neg(b)); }

inline DoubleDouble mul(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble mul(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble div(DoubleDouble a, DoubleDouble b) {
  double q1 = a.hi / b.hi;
  DoubleDouble r = sub(a, mul(b, q1));
  double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  double q3 = r.hi / b.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  return add(q, DoubleDouble(q3));
}

}  // namespace dd

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) { return dd::add(a, b); }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return dd::sub(a, b); }
inline DoubleDouble operator-(DoubleDouble a) { return dd::neg(a); }
inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) { return dd::mul(a, b); }
inline DoubleDouble operator*(DoubleDouble a, double b) { return dd::mul(a, b); }
inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) { return dd::div(a, b); }

/// Neumaier-compensated running sum for plain doubles.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace memfract
