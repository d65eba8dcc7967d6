#include "kdv/determinant.hpp"

#include <algorithm>
#include <string>

#include "kdv/errors.hpp"

namespace kdv {

double residue_T(const std::vector<double>& kappas, std::size_t n) {
  const double kn = kappas.at(n);
  double r = 2.0 * kn;
  for (std::size_t j = 0; j < kappas.size(); ++j) {
    if (j != n) r *= (kn + kappas[j]) / (kn - kappas[j]);
  }
  return r;
}

GammaData gamma_from_c(const SpectralData& data) {
  const SpectralData at_zero = evolve_to(data, 0.0);
  GammaData gd;
  gd.kappas = at_zero.kappas;
  gd.gammas.reserve(at_zero.size());
  for (std::size_t n = 0; n < at_zero.size(); ++n) {
    const double sq = at_zero.c[n] * residue_T(at_zero.kappas, n);
    if (!(sq > 0)) {
      throw NegativeSquare("gamma^2 = c * res T is not positive at n=" + std::to_string(n + 1));
    }
    gd.gammas.push_back(std::sqrt(sq));
  }
  return gd;
}

std::vector<double> leading_minors(const GammaData& gd, double x, double t) {
  const auto sys = detail::scaled_system<double>(gd, x, t);
  std::vector<double> minors;
  for (Eigen::Index k = 1; k <= sys.matrix.rows(); ++k) {
    minors.push_back(sys.matrix.topLeftCorner(k, k).determinant());
  }
  return minors;
}

double compare(const SpectralData& data, const GridSpec& grid) {
  if (data.empty()) throw InvalidN("compare: determinant formula needs N >= 1");
  const GammaData gd = gamma_from_c(data);
  double worst = 0;
  for (const GridRow& row : q_grid(data, grid)) {
    worst = std::max(worst, std::abs(q_det(gd, row.x, row.t) - row.q));
  }
  return worst;
}

}  // namespace kdv
