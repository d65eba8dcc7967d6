#ifndef KDV_EXTENDED_REAL_HPP
#define KDV_EXTENDED_REAL_HPP

#include <cmath>
#include <limits>
#include <ostream>

namespace kdv {

/// An element of the one-point compactification R ∪ {∞}.
///
/// Reciprocal is continuous: 1/0 = ∞ and 1/∞ = 0. There is no signed
/// infinity; the point at infinity is reached from both ends of the line.
template <typename Scalar>
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(Scalar value) : value_(value) {}  // NOLINT: implicit by design of R ⊂ R̂

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  /// Builds sign * exp(log_abs), saturating to 0 or ∞ instead of
  /// underflowing or overflowing.
  static ExtendedReal from_log(int sign, Scalar log_abs) {
    using std::exp;
    using std::log;
    static const Scalar kLogMax = log(std::numeric_limits<Scalar>::max());
    static const Scalar kLogMin = log(std::numeric_limits<Scalar>::denorm_min());
    if (sign == 0 || log_abs < kLogMin) return ExtendedReal(Scalar(0));
    if (log_abs > kLogMax) return infinity();
    return ExtendedReal(sign > 0 ? exp(log_abs) : -exp(log_abs));
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == Scalar(0); }

  /// Finite value; +inf for the point at infinity.
  constexpr Scalar value() const {
    return infinite_ ? std::numeric_limits<Scalar>::infinity() : value_;
  }

  /// |v| with ∞ mapped to +inf.
  Scalar magnitude() const {
    using std::abs;
    return infinite_ ? std::numeric_limits<Scalar>::infinity() : abs(value_);
  }

  ExtendedReal reciprocal() const {
    if (infinite_) return ExtendedReal(Scalar(0));
    if (value_ == Scalar(0)) return infinity();
    return ExtendedReal(Scalar(1) / value_);
  }

  template <typename Other>
  ExtendedReal<Other> cast() const {
    return infinite_ ? ExtendedReal<Other>::infinity()
                     : ExtendedReal<Other>(static_cast<Other>(value_));
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& v) {
    if (v.infinite_) return os << "inf";
    return os << v.value_;
  }

 private:
  Scalar value_{0};
  bool infinite_ = false;
};

template <typename Scalar>
ExtendedReal<Scalar> reciprocal(const ExtendedReal<Scalar>& v) {
  return v.reciprocal();
}

}  // namespace kdv

#endif  // KDV_EXTENDED_REAL_HPP
