#ifndef KDV_SCATTERING_HPP
#define KDV_SCATTERING_HPP

// Direct scattering for -f'' + q f = k^2 f with a sampled potential, used as
// ground truth for the reconstruction: reflectionlessness, bound states and
// coupling constants.

#include <complex>
#include <optional>
#include <vector>

#include "kdv/spectral.hpp"

namespace kdv {

/// q sampled on the uniform grid x_i = -L + i h, interpolated by a natural
/// cubic spline and taken as 0 outside [-L, L].
class SampledPotential {
 public:
  SampledPotential(double half_width, std::vector<double> samples);

  double operator()(double x) const;

  double half_width() const { return half_width_; }
  double spacing() const { return h_; }
  const std::vector<double>& samples() const { return q_; }

 private:
  double half_width_;
  double h_;
  std::vector<double> q_;
  std::vector<double> curvature_;  // spline second derivatives
};

/// Samples q(., data.t) on [-L, L] with spacing h.
SampledPotential sample_potential(const SpectralData& data, double half_width, double spacing);

/// Jost solutions f_- (~ e^{-ikx} at -inf) and f_+ (~ e^{ikx} at +inf) and
/// their derivatives at the matching point x = 0.
struct JostData {
  std::complex<double> f_minus, df_minus;
  std::complex<double> f_plus, df_plus;

  std::complex<double> wronskian() const { return df_plus * f_minus - f_plus * df_minus; }
};

JostData jost_pair(const SampledPotential& potential, std::complex<double> k, double rtol = 1e-10);

/// T(k) = 2ik / W(f_+, f_-). Throws NearPole when |W| < 1e-12.
std::complex<double> transmission(const SampledPotential& potential, std::complex<double> k,
                                  double rtol = 1e-10);

/// prod (k + i kappa_n) / (k - i kappa_n). Throws PoleAt at k = i kappa_n.
std::complex<double> blaschke_T(const std::vector<double>& kappas, std::complex<double> k);

/// Zeros of the Wronskian along k = i kappa, kappa in (0, kappa_max], by
/// sign changes on a grid of the given spacing refined by bisection.
/// Returned in descending order. Throws MissedEigenvalue when the count
/// differs from `expected`.
std::vector<double> eigenvalues(const SampledPotential& potential, double kappa_max,
                                double spacing, std::optional<std::size_t> expected = {},
                                double rtol = 1e-10, double tol = 1e-9);

struct ScatterConfig {
  double k_min = 0.3;
  double k_max = 3.0;
  int nk = 60;
  double rtol = 1e-10;
  double tail_cutoff = 1e-10;
  double bisection_tol = 1e-9;
  // eigenvalues that would need a finer imaginary-axis scan count as unresolved
  int max_scan_points = 20000;
};

struct ScatteringReport {
  double half_width = 0;
  double spacing = 0;
  double max_unitarity_error = 0;  // max ||T| - 1| on the real k grid
  double max_blaschke_error = 0;   // max |T - blaschke_T|
  std::vector<double> expected_kappas;
  std::vector<double> recovered_kappas;
  double max_eigenvalue_error = 0;
  std::vector<double> coupling_ratios;  // f_-/f_+ at the recovered eigenvalues
  double max_coupling_error = 0;        // relative to the stored c_n
};

/// Half width rule: max(20/kappa_N, 30), widened until |q| < cutoff at ±L.
double scattering_half_width(const SpectralData& data, double cutoff);

ScatteringReport scatter_report(const SpectralData& data, const ScatterConfig& config = {});

}  // namespace kdv

#endif  // KDV_SCATTERING_HPP
