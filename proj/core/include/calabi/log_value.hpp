#pragma once

#include <cmath>
#include <limits>

namespace calabi {

// Signed log-domain scalar: a real number x is stored as
// (sign(x), log|x|).  Quantities like e^{j z^n / 2} and Gamma(Q+1)
// overflow double precision long before the expressions they appear in
// do, so every evaluator that can meet them works in this representation.
struct LogValue {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();  // ignored when sign == 0

  constexpr LogValue() = default;
  constexpr LogValue(int s, double la) : sign(s), log_abs(s == 0 ? -std::numeric_limits<double>::infinity() : la) {}

  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue one() { return LogValue(+1, 0.0); }

  // Log of a known-positive quantity.
  static constexpr LogValue from_log(double la) { return LogValue(+1, la); }

  static LogValue from_value(double x) {
    if (x == 0.0) return zero();
    return LogValue(x > 0 ? +1 : -1, std::log(std::fabs(x)));
  }

  // Materialize; overflows to +-inf, underflows to 0.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
  }

  bool is_zero() const { return sign == 0; }
  bool finite() const { return sign == 0 || std::isfinite(log_abs); }

  LogValue operator-() const { return LogValue(-sign, log_abs); }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return LogValue(a.sign * b.sign, a.log_abs + b.log_abs);
  }

  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (a.sign == 0) return zero();
    return LogValue(a.sign * b.sign, a.log_abs - b.log_abs);
  }

  LogValue& operator*=(const LogValue& b) { return *this = *this * b; }
  LogValue& operator/=(const LogValue& b) { return *this = *this / b; }
};

// Signed log-sum-exp of two terms.
inline LogValue log_add(const LogValue& a, const LogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogValue& hi = (a.log_abs >= b.log_abs) ? a : b;
  const LogValue& lo = (a.log_abs >= b.log_abs) ? b : a;
  const double d = lo.log_abs - hi.log_abs;  // <= 0
  if (hi.sign == lo.sign) {
    return LogValue(hi.sign, hi.log_abs + std::log1p(std::exp(d)));
  }
  const double m = std::exp(d);
  if (m == 1.0) return LogValue::zero();  // exact cancellation
  return LogValue(hi.sign, hi.log_abs + std::log1p(-m));
}

inline LogValue log_sub(const LogValue& a, const LogValue& b) { return log_add(a, -b); }

// Running signed accumulator built on pairwise log-sum-exp merging.
class LogSum {
 public:
  void add(const LogValue& v) { total_ = log_add(total_, v); }
  void add_value(double x) { add(LogValue::from_value(x)); }
  const LogValue& total() const { return total_; }

 private:
  LogValue total_ = LogValue::zero();
};

}  // namespace calabi
