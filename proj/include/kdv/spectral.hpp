#ifndef KDV_SPECTRAL_HPP
#define KDV_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "kdv/extended_real.hpp"

namespace kdv {

/// Spectral data of a reflectionless potential with finitely many bound
/// states: eigenvalues -kappa_n^2 and coupling constants c_n at time t.
///
/// kappas are strictly decreasing and positive; c_n is nonzero with sign
/// (-1)^(n+1) (1-based n). The constants are stored at time `t`.
struct SpectralData {
  std::vector<double> kappas;
  std::vector<double> c;
  double t = 0.0;
  std::string label;

  std::size_t size() const { return kappas.size(); }
  bool empty() const { return kappas.empty(); }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Relative gap below which neighbouring kappas count as coincident.
inline constexpr double kMinRelativeGap = 1e-12;

ValidationReport validate(const SpectralData& data);

/// Throws InvalidData carrying every violation when validate() fails.
void require_valid(const SpectralData& data);

/// Advances the coupling constants by dt: c_n -> exp(8 kappa_n^3 dt) c_n.
SpectralData evolve(const SpectralData& data, double dt);

/// Same data at absolute time t.
inline SpectralData evolve_to(const SpectralData& data, double t) {
  return evolve(data, t - data.t);
}

double kappa_sq_sum(const SpectralData& data);

/// Positive half {lambda_n = 1/kappa_n} of the symmetric set sigma,
/// strictly increasing.
struct SigmaSet {
  std::vector<double> lambdas;

  static SigmaSet from_kappas(const std::vector<double>& kappas);

  std::size_t size() const { return lambdas.size(); }
  /// Sum over the positive half of 1/lambda.
  double reciprocal_sum() const;
};

/// W(z) = prod over sigma of (1 - z/lambda) = prod_n (1 - z^2 / lambda_n^2).
template <typename Scalar>
std::complex<Scalar> w_eval(const SigmaSet& sigma, std::complex<Scalar> z) {
  std::complex<Scalar> w(1);
  const std::complex<Scalar> z2 = z * z;
  for (double lambda : sigma.lambdas) {
    const Scalar l = static_cast<Scalar>(lambda);
    w *= Scalar(1) - z2 / (l * l);
  }
  return w;
}

/// Coupling constants eta(lambda_n) = c_n exp(-2 kappa_n x) at position x,
/// with c_n taken at the data's stored time. The entries are aligned with
/// SigmaSet::from_kappas(data.kappas); the negative half carries the
/// reciprocals. Saturates to 0 or ∞ rather than overflowing.
template <typename Scalar>
std::vector<ExtendedReal<Scalar>> eta_at(const SpectralData& data, Scalar x) {
  using std::abs;
  using std::log;
  std::vector<ExtendedReal<Scalar>> eta;
  eta.reserve(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    const Scalar c = static_cast<Scalar>(data.c[n]);
    const Scalar kappa = static_cast<Scalar>(data.kappas[n]);
    const int sign = c > 0 ? 1 : (c < 0 ? -1 : 0);
    eta.push_back(ExtendedReal<Scalar>::from_log(sign, log(abs(c)) - 2 * kappa * x));
  }
  return eta;
}

}  // namespace kdv

#endif  // KDV_SPECTRAL_HPP
