#include "kdv/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "kdv/errors.hpp"
#include "kdv/ode.hpp"
#include "kdv/reconstruct.hpp"

namespace kdv {

SampledPotential::SampledPotential(double half_width, std::vector<double> samples)
    : half_width_(half_width), q_(std::move(samples)) {
  if (q_.size() < 3 || !(half_width_ > 0)) {
    throw InvalidData("sampled potential needs a positive width and at least 3 samples");
  }
  const std::size_t n = q_.size() - 1;
  h_ = 2 * half_width_ / static_cast<double>(n);

  // Natural spline: M_{i-1} + 4 M_i + M_{i+1} = 6 (q_{i+1} - 2 q_i + q_{i-1}) / h^2.
  curvature_.assign(q_.size(), 0.0);
  std::vector<double> diag(n, 4.0), rhs(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    rhs[i] = 6.0 * (q_[i + 1] - 2 * q_[i] + q_[i - 1]) / (h_ * h_);
  }
  for (std::size_t i = 2; i < n; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 1; i >= 1; --i) {
    curvature_[i] = (rhs[i] - (i + 1 < n ? curvature_[i + 1] : 0.0)) / diag[i];
  }
}

double SampledPotential::operator()(double x) const {
  const double s = (x + half_width_) / h_;
  if (s < 0 || s > static_cast<double>(q_.size() - 1)) return 0.0;
  std::size_t i = static_cast<std::size_t>(s);
  if (i >= q_.size() - 1) i = q_.size() - 2;
  const double b = s - static_cast<double>(i);
  const double a = 1 - b;
  return a * q_[i] + b * q_[i + 1] +
         ((a * a * a - a) * curvature_[i] + (b * b * b - b) * curvature_[i + 1]) * h_ * h_ / 6;
}

SampledPotential sample_potential(const SpectralData& data, double half_width, double spacing) {
  const auto intervals = static_cast<std::size_t>(std::ceil(2 * half_width / spacing));
  std::vector<double> q(intervals + 1);
  const double h = 2 * half_width / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) {
    q[i] = q_point(data, -half_width + static_cast<double>(i) * h);
  }
  return SampledPotential(half_width, std::move(q));
}

JostData jost_pair(const SampledPotential& potential, std::complex<double> k, double rtol) {
  if (k == 0.0) throw InvalidData("jost_pair: k must be nonzero");
  using State = Eigen::Vector2cd;
  const std::complex<double> k2 = k * k;
  auto rhs = [&](double x, const State& y) {
    return State(y(1), (potential(x) - k2) * y(0));
  };
  OdeOptions opts;
  opts.rtol = rtol;
  const double L = potential.half_width();
  const std::complex<double> i(0, 1);
  // plane waves are exact on a vanishing sample
  const auto& q = potential.samples();
  if (std::all_of(q.begin(), q.end(), [](double v) { return v == 0.0; })) {
    return {1.0, -i * k, 1.0, i * k};
  }
  const std::complex<double> edge = std::exp(i * k * L);

  const State minus = integrate_dopri5(rhs, -L, 0.0, State(edge, -i * k * edge), opts);
  const State plus = integrate_dopri5(rhs, L, 0.0, State(edge, i * k * edge), opts);
  return {minus(0), minus(1), plus(0), plus(1)};
}

std::complex<double> transmission(const SampledPotential& potential, std::complex<double> k,
                                  double rtol) {
  const JostData jost = jost_pair(potential, k, rtol);
  const std::complex<double> w = jost.wronskian();
  if (std::abs(w) < 1e-12) throw NearPole("transmission: Wronskian vanishes near k");
  return 2.0 * std::complex<double>(0, 1) * k / w;
}

std::complex<double> blaschke_T(const std::vector<double>& kappas, std::complex<double> k) {
  const std::complex<double> i(0, 1);
  std::complex<double> t(1);
  for (double kappa : kappas) {
    const std::complex<double> den = k - i * kappa;
    if (std::abs(den) == 0.0) {
      throw PoleAt(kappa, "Blaschke product has a pole at k = i*" + std::to_string(kappa));
    }
    t *= (k + i * kappa) / den;
  }
  return t;
}

namespace {

double imaginary_axis_wronskian(const SampledPotential& potential, double kappa, double rtol) {
  return jost_pair(potential, {0.0, kappa}, rtol).wronskian().real();
}

}  // namespace

std::vector<double> eigenvalues(const SampledPotential& potential, double kappa_max,
                                double spacing, std::optional<std::size_t> expected, double rtol,
                                double tol) {
  if (!(spacing > 0) || !(kappa_max > spacing)) {
    throw InvalidData("eigenvalues: need 0 < spacing < kappa_max");
  }
  std::vector<double> found;
  double lo = spacing;
  double w_lo = imaginary_axis_wronskian(potential, lo, rtol);
  while (lo < kappa_max) {
    const double hi = std::min(lo + spacing, kappa_max);
    const double w_hi = imaginary_axis_wronskian(potential, hi, rtol);
    if ((w_lo < 0) != (w_hi < 0)) {
      double a = lo, b = hi, wa = w_lo;
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double wm = imaginary_axis_wronskian(potential, mid, rtol);
        if ((wm < 0) == (wa < 0)) {
          a = mid;
          wa = wm;
        } else {
          b = mid;
        }
      }
      found.push_back(0.5 * (a + b));
    }
    lo = hi;
    w_lo = w_hi;
  }
  std::sort(found.begin(), found.end(), std::greater<>());
  if (expected && found.size() != *expected) {
    throw MissedEigenvalue("found " + std::to_string(found.size()) + " eigenvalues, expected " +
                           std::to_string(*expected));
  }
  return found;
}

double scattering_half_width(const SpectralData& data, double cutoff) {
  double L = data.empty() ? 30.0 : std::max(20.0 / data.kappas.back(), 30.0);
  if (data.empty()) return L;
  for (int attempt = 0; attempt < 20; ++attempt) {
    if (std::abs(q_point(data, -L)) < cutoff && std::abs(q_point(data, L)) < cutoff) return L;
    L *= 1.5;
  }
  throw InvalidData("potential does not decay below the cutoff on any tried domain");
}

ScatteringReport scatter_report(const SpectralData& data, const ScatterConfig& config) {
  require_valid(data);
  ScatteringReport report;
  report.half_width = scattering_half_width(data, config.tail_cutoff);
  report.spacing = data.empty() ? 0.05 : 0.01 / data.kappas.front();
  const SampledPotential potential = sample_potential(data, report.half_width, report.spacing);

  for (int i = 0; i < config.nk; ++i) {
    const double k =
        config.nk == 1 ? config.k_min
                       : config.k_min + (config.k_max - config.k_min) * i / (config.nk - 1);
    const std::complex<double> t = transmission(potential, k, config.rtol);
    report.max_unitarity_error = std::max(report.max_unitarity_error, std::abs(std::abs(t) - 1));
    report.max_blaschke_error =
        std::max(report.max_blaschke_error, std::abs(t - blaschke_T(data.kappas, k)));
  }

  report.expected_kappas = data.kappas;
  if (data.empty()) return report;

  double min_gap = data.kappas.back();
  for (std::size_t n = 1; n < data.size(); ++n) {
    min_gap = std::min(min_gap, data.kappas[n - 1] - data.kappas[n]);
  }
  const double step = min_gap / 8;
  const double kappa_max = 1.25 * data.kappas.front() + step;
  if (kappa_max / step > config.max_scan_points) {
    throw MissedEigenvalue("eigenvalues are closer than the search grid can resolve");
  }
  report.recovered_kappas = eigenvalues(potential, kappa_max, step,
                                        data.size(), config.rtol, config.bisection_tol);
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double kappa = report.recovered_kappas[n];
    report.max_eigenvalue_error =
        std::max(report.max_eigenvalue_error, std::abs(kappa - data.kappas[n]));
    // f_- = c f_+ at a bound state; least squares over value and slope.
    const JostData j = jost_pair(potential, {0.0, kappa}, config.rtol);
    const double ratio = (j.f_minus * std::conj(j.f_plus) + j.df_minus * std::conj(j.df_plus)).real() /
                         (std::norm(j.f_plus) + std::norm(j.df_plus));
    report.coupling_ratios.push_back(ratio);
    report.max_coupling_error =
        std::max(report.max_coupling_error, std::abs(ratio - data.c[n]) / std::abs(data.c[n]));
  }
  return report;
}

}  // namespace kdv
