#ifndef KDV_DETERMINANT_HPP
#define KDV_DETERMINANT_HPP

// Classical N-soliton formula
//   q = -2 d^2/dx^2 log det(I + G),  G_ij = v_i v_j / (kappa_i + kappa_j),
//   v_i = gamma_i exp(4 kappa_i^3 t - kappa_i x).
// Kept independent of the coupling-problem route so the two can be compared.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "kdv/reconstruct.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

/// Right norming constants gamma_n > 0 at time 0.
struct GammaData {
  std::vector<double> kappas;
  std::vector<double> gammas;
};

/// -i times the residue of the Blaschke product T at i kappa_n (0-based n):
/// 2 kappa_n prod_{j != n} (kappa_n + kappa_j) / (kappa_n - kappa_j).
double residue_T(const std::vector<double>& kappas, std::size_t n);

/// gamma_n^2 = c_n(0) * residue_T; throws NegativeSquare on a sign violation.
GammaData gamma_from_c(const SpectralData& data);

namespace detail {

template <typename Scalar>
struct ScaledSystem {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;  // S^-1 A S^-1
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v;                    // S^-1 v
  Scalar log_scale = 0;                                          // sum log s_i
};

// s_i = v_i when v_i > 1, else 1. Locally in x the scaling only adds a term
// linear in x to log det, which the second derivative does not see.
template <typename Scalar>
ScaledSystem<Scalar> scaled_system(const GammaData& gd, Scalar x, Scalar t) {
  using std::abs;
  using std::exp;
  using std::log;
  const Eigen::Index n = static_cast<Eigen::Index>(gd.kappas.size());
  ScaledSystem<Scalar> sys;
  sys.matrix.resize(n, n);
  sys.v.resize(n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> inv_s2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar k = static_cast<Scalar>(gd.kappas[i]);
    const Scalar g = static_cast<Scalar>(gd.gammas[i]);
    const Scalar log_v = log(abs(g)) + 4 * k * k * k * t - k * x;
    const Scalar log_s = log_v > 0 ? log_v : Scalar(0);
    sys.log_scale += log_s;
    sys.v(i) = (g < 0 ? -1 : 1) * exp(log_v - log_s);
    inv_s2(i) = exp(-2 * log_s);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar kij = static_cast<Scalar>(gd.kappas[i]) + static_cast<Scalar>(gd.kappas[j]);
      sys.matrix(i, j) = sys.v(i) * sys.v(j) / kij + (i == j ? inv_s2(i) : Scalar(0));
    }
  }
  return sys;
}

}  // namespace detail

/// log det(I + G) at (x, t), evaluated without overflow.
template <typename Scalar = double>
Scalar log_det(const GammaData& gd, Scalar x, Scalar t) {
  using std::log;
  const auto sys = detail::scaled_system(gd, x, t);
  Eigen::LLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> llt(sys.matrix);
  Scalar ld(0);
  for (Eigen::Index i = 0; i < sys.matrix.rows(); ++i) ld += log(llt.matrixL()(i, i));
  return 2 * ld + 2 * sys.log_scale;
}

/// Since dA/dx = -v v^T and dv/dx = -K v,
///   (log det A)'' = 2 (K v)^T A^-1 v - (v^T A^-1 v)^2.
template <typename Scalar = double>
Scalar q_det(const GammaData& gd, Scalar x, Scalar t) {
  if (gd.kappas.empty()) throw InvalidN("determinant formula needs N >= 1");
  const auto sys = detail::scaled_system(gd, x, t);
  Eigen::LLT<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> llt(sys.matrix);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = llt.solve(sys.v);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> kv = sys.v;
  for (Eigen::Index i = 0; i < kv.size(); ++i) kv(i) *= static_cast<Scalar>(gd.kappas[i]);
  const Scalar vw = sys.v.dot(w);
  return Scalar(-2) * (Scalar(2) * kv.dot(w) - vw * vw);
}

/// Leading principal minors of the scaled matrix; all positive for valid data.
std::vector<double> leading_minors(const GammaData& gd, double x, double t);

/// sup over the grid of |q_det - q_point|. Throws InvalidN for empty data.
double compare(const SpectralData& data, const GridSpec& grid);

}  // namespace kdv

#endif  // KDV_DETERMINANT_HPP
