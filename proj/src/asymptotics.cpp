#include "kdv/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "kdv/coupling.hpp"
#include "kdv/errors.hpp"

namespace kdv {

SolitonProfile phase_shifts(const SpectralData& data) {
  const SpectralData at_zero = evolve_to(data, 0.0);
  const auto& k = at_zero.kappas;
  SolitonProfile profile;
  for (std::size_t n = 0; n < k.size(); ++n) {
    double xi = 0.5 * std::log(std::abs(at_zero.c[n]));
    for (std::size_t j = 0; j < n; ++j) xi -= 0.5 * std::log((k[j] + k[n]) / (k[j] - k[n]));
    for (std::size_t j = n + 1; j < k.size(); ++j) {
      xi += 0.5 * std::log((k[n] + k[j]) / (k[n] - k[j]));
    }
    profile.terms.push_back({k[n], xi});
  }
  return profile;
}

double profile_eval(const SolitonProfile& profile, double x, double t) {
  double q = 0;
  for (const auto& [kappa, xi] : profile.terms) {
    const double arg = kappa * x - 4 * kappa * kappa * kappa * t - xi;
    if (std::abs(arg) > 400) continue;
    const double sech = 1.0 / std::cosh(arg);
    q -= 2 * kappa * kappa * sech * sech;
  }
  return q;
}

WindowRule window_rule(const SpectralData& data, double t) {
  if (data.empty()) return {-1.0, 1.0, 2.0};
  const double k1 = data.kappas.front();
  const double kn = data.kappas.back();
  return {std::min(4 * kn * kn * t, 0.0) - 20 / kn, 4 * k1 * k1 * t + 20 / k1, 0.05 / k1};
}

GridSpec auto_window(const SpectralData& data, double t) {
  const WindowRule rule = window_rule(data, t);
  GridSpec grid;
  grid.x_min = rule.x_min;
  grid.x_max = rule.x_max;
  grid.nx = static_cast<int>(std::ceil((rule.x_max - rule.x_min) / rule.max_spacing)) + 1;
  grid.t_values = {t};
  return grid;
}

double deviation(const SpectralData& data, double t, const GridSpec& window) {
  require_valid(data);
  window.check();
  if (data.empty()) return 0.0;
  const WindowRule rule = window_rule(data, t);
  if (window.x_min > rule.x_min || window.x_max < rule.x_max) {
    throw WindowTooSmall("deviation window must cover [" + std::to_string(rule.x_min) + ", " +
                         std::to_string(rule.x_max) + "]");
  }
  if (window.spacing() > rule.max_spacing * (1 + 1e-12)) {
    throw WindowTooSmall("deviation grid spacing must be at most " +
                         std::to_string(rule.max_spacing));
  }
  const SolitonProfile profile = phase_shifts(data);
  const SpectralData at_t = evolve_to(data, t);
  double worst = 0;
  for (int i = 0; i < window.nx; ++i) {
    const double x = window.node(i);
    worst = std::max(worst, std::abs(q_point(at_t, x) - profile_eval(profile, x, t)));
  }
  return worst;
}

ExtendedReal<double> hat_eta(const std::vector<double>& lambdas,
                             const std::vector<PairRole>& partition,
                             ExtendedReal<double> eta0) {
  if (lambdas.size() != partition.size()) {
    throw InvalidData("hat_eta: partition length differs from lambdas");
  }
  const auto pivots = std::count(partition.begin(), partition.end(), PairRole::Pivot);
  if (pivots != 1) throw InvalidData("hat_eta: exactly one lambda must be the pivot");
  if (eta0.is_infinite()) return eta0;

  const auto pivot = static_cast<std::size_t>(
      std::find(partition.begin(), partition.end(), PairRole::Pivot) - partition.begin());
  const double l0 = lambdas[pivot];
  double value = eta0.value();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l = lambdas[i];
    if (partition[i] == PairRole::Zero) value *= (l + l0) / (l - l0);
    if (partition[i] == PairRole::Infinity) value *= (l - l0) / (l + l0);
  }
  return value;
}

double sech2_half_log(ExtendedReal<double> eta) {
  if (eta.is_infinite() || eta.is_zero()) return 0.0;
  const double a = std::abs(eta.value());
  // 4a/(1+a)^2, written to stay finite for huge a
  return a > 1 ? 4.0 / (a * (1 + 1 / a) * (1 + 1 / a)) : 4.0 * a / ((1 + a) * (1 + a));
}

std::complex<double> limit_F(double lambda0, ExtendedReal<double> hat, std::complex<double> z) {
  return 1.0 + z * z / (lambda0 * lambda0 - z * z) * sech2_half_log(hat);
}

double tail_bound(const std::vector<double>& kappas, std::size_t keep) {
  double s = 0;
  for (std::size_t n = keep; n < kappas.size(); ++n) s += kappas[n] * kappas[n];
  return 2 * s;
}

double coupling_limit_gap(const SpectralData& data, std::size_t n, double t,
                          std::complex<double> z_scaled, double shift) {
  const SpectralData at_t = evolve_to(data, t);
  const double kn = at_t.kappas.at(n);
  const double x = 4 * kn * kn * t + shift;
  const CouplingSpec<double> spec = coupling_spec<double>(at_t, x);
  const CouplingSolution<double> sol = solve(spec);

  std::vector<PairRole> partition(at_t.size());
  for (std::size_t j = 0; j < at_t.size(); ++j) {
    partition[j] = j == n ? PairRole::Pivot : (j > n ? PairRole::Zero : PairRole::Infinity);
  }
  const double lambda0 = spec.lambdas[n];
  const ExtendedReal<double> hat = hat_eta(spec.lambdas, partition, spec.eta[n]);
  const std::complex<double> z = z_scaled * lambda0;
  return std::abs(eval_F(spec, sol, z) - limit_F(lambda0, hat, z));
}

}  // namespace kdv
