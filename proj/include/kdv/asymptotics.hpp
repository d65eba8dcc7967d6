#ifndef KDV_ASYMPTOTICS_HPP
#define KDV_ASYMPTOTICS_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "kdv/extended_real.hpp"
#include "kdv/reconstruct.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

struct SolitonTerm {
  double kappa;
  double xi;
};

/// Superposition of single solitons -2 kappa^2 sech^2(kappa x - 4 kappa^3 t - xi).
struct SolitonProfile {
  std::vector<SolitonTerm> terms;
};

/// Long-time phase shifts, computed from the coupling constants at t = 0:
///   xi_n = log|c_n(0)|/2 - sum_{j<n} log((k_j+k_n)/(k_j-k_n))/2
///                        + sum_{j>n} log((k_n+k_j)/(k_n-k_j))/2.
SolitonProfile phase_shifts(const SpectralData& data);

double profile_eval(const SolitonProfile& profile, double x, double t);

/// x range the deviation scan must cover at time t (soliton trajectories
/// plus 20/kappa decay margins) and the finest spacing it must use.
struct WindowRule {
  double x_min;
  double x_max;
  double max_spacing;
};

WindowRule window_rule(const SpectralData& data, double t);

/// Smallest grid satisfying window_rule at time t.
GridSpec auto_window(const SpectralData& data, double t);

/// sup over the window of |q(x, t) - profile(x, t)|. Throws WindowTooSmall
/// when the window misses part of the required range or is too coarse.
double deviation(const SpectralData& data, double t, const GridSpec& window);

enum class PairRole { Zero, Pivot, Infinity };

/// eta(lambda0) prod_{sigma_0} (lambda + lambda0)/(lambda - lambda0)
///              prod_{sigma_inf} (lambda - lambda0)/(lambda + lambda0),
/// and ∞ when eta(lambda0) is.
ExtendedReal<double> hat_eta(const std::vector<double>& lambdas,
                             const std::vector<PairRole>& partition,
                             ExtendedReal<double> eta0);

/// cosh^-2(log|eta|/2) = 4|eta| / (1 + |eta|)^2, continuously 0 at 0 and ∞.
double sech2_half_log(ExtendedReal<double> eta);

/// 1 + z^2 / (lambda0^2 - z^2) * cosh^-2(log|hat|/2).
std::complex<double> limit_F(double lambda0, ExtendedReal<double> hat, std::complex<double> z);

/// 2 * sum_{n >= keep} kappa_n^2: sup-norm of the dropped profile terms.
double tail_bound(const std::vector<double>& kappas, std::size_t keep);

/// |F(z) - limit_F(z)| along the ray x = 4 kappa_n^2 t + shift for soliton
/// n (0-based), with z given in units of lambda0 = 1/kappa_n.
double coupling_limit_gap(const SpectralData& data, std::size_t n, double t,
                          std::complex<double> z_scaled, double shift = 0.0);

}  // namespace kdv

#endif  // KDV_ASYMPTOTICS_HPP
