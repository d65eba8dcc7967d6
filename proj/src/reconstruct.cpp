#include "kdv/reconstruct.hpp"

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "kdv/errors.hpp"

namespace kdv {
// 113-bit significand; only the residual stencil needs it
using Quad = boost::multiprecision::cpp_bin_float_quad;
}  // namespace kdv

// Eigen derives every trait from std::numeric_limits, which Boost provides.
template <>
struct Eigen::NumTraits<kdv::Quad> : Eigen::GenericNumTraits<kdv::Quad> {};

namespace kdv {

void GridSpec::check() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max)) {
    throw InvalidData("grid: need finite x_min < x_max");
  }
  if (nx < 2) throw InvalidData("grid: need nx >= 2, got " + std::to_string(nx));
  for (double t : t_values) {
    if (!std::isfinite(t)) throw InvalidData("grid: time values must be finite");
  }
}

std::vector<GridRow> q_grid(const SpectralData& data, const GridSpec& grid) {
  require_valid(data);
  grid.check();
  const std::vector<double> times =
      grid.t_values.empty() ? std::vector<double>{data.t} : grid.t_values;

  std::vector<GridRow> rows;
  rows.reserve(times.size() * static_cast<std::size_t>(grid.nx));
  for (double t : times) {
    const SpectralData at_t = evolve_to(data, t);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.node(i);
      rows.push_back({t, x, q_point(at_t, x)});
    }
  }
  return rows;
}

double pde_residual(const SpectralData& data, double x, double t, double h) {
  if (!(h > 0)) throw InvalidData("pde_residual: step must be positive");
  if (data.empty()) return 0.0;
  using Real = Quad;

  const SpectralData now = evolve_to(data, t);
  const Real xl = x;
  const Real hl = h;
  auto at = [&](int j) { return q_point<Real>(now, xl + j * hl); };
  const Real fm2 = at(-2), fm1 = at(-1), f0 = at(0), f1 = at(1), f2 = at(2);

  const Real qx = (fm2 - 8 * fm1 + 8 * f1 - f2) / (12 * hl);
  const Real qxxx = (-fm2 + 2 * fm1 - 2 * f1 + f2) / (2 * hl * hl * hl);
  const Real qt = (q_point<Real>(evolve_to(data, t + h), xl) -
                   q_point<Real>(evolve_to(data, t - h), xl)) /
                  (2 * hl);
  const Real residual = qt - 6 * f0 * qx + qxxx;
  return static_cast<double>(abs(residual));
}

}  // namespace kdv
