#ifndef KDV_POLYNOMIAL_HPP
#define KDV_POLYNOMIAL_HPP

#include <complex>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

namespace kdv {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Horner evaluation of sum_m coeffs(m) z^m (ascending coefficients).
template <typename Derived, typename T>
T horner(const Eigen::MatrixBase<Derived>& coeffs, const T& z) {
  T acc(0);
  for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) acc = acc * z + T(coeffs(m));
  return acc;
}

/// Derivative coefficients of an ascending coefficient vector.
template <typename Derived>
VectorX<typename Derived::Scalar> derivative(const Eigen::MatrixBase<Derived>& coeffs) {
  using Scalar = typename Derived::Scalar;
  if (coeffs.size() <= 1) return VectorX<Scalar>::Zero(1);
  VectorX<Scalar> d(coeffs.size() - 1);
  for (Eigen::Index m = 1; m < coeffs.size(); ++m) d(m - 1) = Scalar(m) * coeffs(m);
  return d;
}

/// Coefficients of p(-z).
template <typename Derived>
VectorX<typename Derived::Scalar> reflect(const Eigen::MatrixBase<Derived>& coeffs) {
  VectorX<typename Derived::Scalar> r = coeffs;
  for (Eigen::Index m = 1; m < r.size(); m += 2) r(m) = -r(m);
  return r;
}

/// Multiplies an ascending coefficient vector by (1 + a z).
template <typename Scalar>
VectorX<Scalar> mul_linear(const VectorX<Scalar>& coeffs, Scalar a) {
  VectorX<Scalar> out = VectorX<Scalar>::Zero(coeffs.size() + 1);
  out.head(coeffs.size()) = coeffs;
  out.tail(coeffs.size()) += a * coeffs;
  return out;
}

/// Complex roots of a polynomial with nonzero leading coefficient, via the
/// balanced companion matrix.
template <typename Scalar>
VectorX<std::complex<Scalar>> roots(const VectorX<Scalar>& coeffs) {
  if (coeffs.size() <= 1) return {};
  Eigen::PolynomialSolver<Scalar, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  return solver.roots();
}

}  // namespace kdv

#endif  // KDV_POLYNOMIAL_HPP
