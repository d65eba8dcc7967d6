#include "kdv/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kdv/errors.hpp"

namespace kdv {

ValidationReport validate(const SpectralData& data) {
  ValidationReport report;
  auto add = [&report](const std::string& msg) { report.violations.push_back(msg); };

  if (data.kappas.size() != data.c.size()) {
    std::ostringstream os;
    os << "length mismatch: " << data.kappas.size() << " kappas vs " << data.c.size()
       << " coupling constants";
    add(os.str());
    return report;
  }
  if (!std::isfinite(data.t)) add("time is not finite");

  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t n = i + 1;
    const double kappa = data.kappas[i];
    if (!std::isfinite(kappa) || kappa <= 0) {
      add("kappa must be positive and finite at n=" + std::to_string(n));
    }
    if (i > 0) {
      const double prev = data.kappas[i - 1];
      if (!(kappa < prev)) {
        add("kappas not strictly decreasing at n=" + std::to_string(n));
      } else if (prev - kappa < kMinRelativeGap * prev) {
        add("kappas nearly coincident at n=" + std::to_string(n));
      }
    }
    const double c = data.c[i];
    if (!std::isfinite(c) || c == 0) {
      add("coupling constant must be nonzero and finite at n=" + std::to_string(n));
      continue;
    }
    // eta / (lambda W'(lambda)) <= 0 at lambda_n; lambda W' has sign (-1)^n.
    const bool want_positive = (n % 2) == 1;
    if ((c > 0) != want_positive) add("sign rule at n=" + std::to_string(n));
  }
  return report;
}

void require_valid(const SpectralData& data) {
  const ValidationReport report = validate(data);
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid spectral data";
  for (const auto& v : report.violations) os << "; " << v;
  throw InvalidData(os.str());
}

SpectralData evolve(const SpectralData& data, double dt) {
  SpectralData out = data;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double k = out.kappas[n];
    out.c[n] *= std::exp(8.0 * k * k * k * dt);
  }
  out.t = data.t + dt;
  return out;
}

double kappa_sq_sum(const SpectralData& data) {
  return std::accumulate(data.kappas.begin(), data.kappas.end(), 0.0,
                         [](double acc, double k) { return acc + k * k; });
}

SigmaSet SigmaSet::from_kappas(const std::vector<double>& kappas) {
  SigmaSet sigma;
  sigma.lambdas.reserve(kappas.size());
  for (double k : kappas) sigma.lambdas.push_back(1.0 / k);
  return sigma;
}

double SigmaSet::reciprocal_sum() const {
  double s = 0.0;
  for (double l : lambdas) s += 1.0 / l;
  return s;
}

}  // namespace kdv
