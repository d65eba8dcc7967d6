#ifndef KDV_RECONSTRUCT_HPP
#define KDV_RECONSTRUCT_HPP

#include <cmath>
#include <vector>

#include "kdv/coupling.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

/// Uniform x grid, optionally sampled at several absolute times.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  int nx = 201;
  std::vector<double> t_values;

  /// Throws InvalidData unless x_min < x_max and nx >= 2.
  void check() const;
  double spacing() const { return (x_max - x_min) / (nx - 1); }
  double node(int i) const { return i == nx - 1 ? x_max : x_min + i * spacing(); }
};

/// Coupling constants outside [1/kEtaGuard, kEtaGuard] count as 0 or ∞.
inline constexpr double kEtaGuard = 1e300;

/// q(x) at the data's stored time, read off the second Taylor coefficient of
/// Phi_-(z) Phi_+(z) / W(z) at z = 0:
///   Phi_+ Phi_- = 1 + (2 p_2 - p_1^2) z^2 + ...,  1/W = 1 + (sum kappa^2) z^2 + ...
/// so q = -2 (2 p_2 - p_1^2 + sum kappa^2).
///
/// Precondition: validate(data).ok().
template <typename Scalar = double>
Scalar q_point(const SpectralData& data, Scalar x, const SolveOptions& opts = {}) {
  using std::abs;
  if (data.empty()) return Scalar(0);
  const CouplingSpec<Scalar> spec = coupling_spec<Scalar>(data, x);

  bool all_saturated = true;
  for (const auto& e : spec.eta) {
    const Scalar m = e.magnitude();
    if (m >= Scalar(1) / Scalar(kEtaGuard) && m <= Scalar(kEtaGuard)) all_saturated = false;
  }
  if (all_saturated) return Scalar(0);

  const CouplingSolution<Scalar> sol = solve(spec, opts);
  const Scalar p1 = sol.p(1);
  const Scalar p2 = sol.p.size() > 2 ? sol.p(2) : Scalar(0);
  Scalar kappa_sq(0);
  for (double k : data.kappas) kappa_sq += static_cast<Scalar>(k) * static_cast<Scalar>(k);
  return Scalar(-2) * (Scalar(2) * p2 - p1 * p1 + kappa_sq);
}

/// q at absolute time t.
template <typename Scalar = double>
Scalar q_at(const SpectralData& data, Scalar x, double t, const SolveOptions& opts = {}) {
  return q_point<Scalar>(t == data.t ? data : evolve_to(data, t), x, opts);
}

struct GridRow {
  double t;
  double x;
  double q;
};

/// Rows ordered t-major, x ascending. An empty t list means the data's own
/// time.
std::vector<GridRow> q_grid(const SpectralData& data, const GridSpec& grid);

/// |q_t - 6 q q_x + q_xxx| from finite differences: five-point stencils in x
/// and a centred difference in t, all with spacing h. The samples are
/// computed in extended precision so that the O(h^2) truncation error is
/// not buried under roundoff amplified by 1/h^3.
double pde_residual(const SpectralData& data, double x, double t, double h);

}  // namespace kdv

#endif  // KDV_RECONSTRUCT_HPP
