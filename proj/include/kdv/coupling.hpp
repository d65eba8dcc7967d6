#ifndef KDV_COUPLING_HPP
#define KDV_COUPLING_HPP

// Finite symmetric coupling problems.
//
// Given sigma = {±lambda_n} and coupling constants eta(lambda_n) in R ∪ {∞}
// (with eta(-lambda) = 1/eta(lambda)), find real polynomials (Phi_-, Phi_+)
// with Phi_-(lambda) = eta(lambda) Phi_+(lambda) on sigma, Phi_±(0) = 1, and
// z Phi_- Phi_+ / W Herglotz-Nevanlinna. For symmetric problems
// Phi_-(z) = Phi_+(-z), so only the coefficients of Phi_+ are stored.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kdv/errors.hpp"
#include "kdv/extended_real.hpp"
#include "kdv/polynomial.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

template <typename Scalar>
struct CouplingSpec {
  std::vector<Scalar> lambdas;  // positive half, strictly increasing
  std::vector<ExtendedReal<Scalar>> eta;

  std::size_t size() const { return lambdas.size(); }
};

/// Coupling problem of the potential at position x: lambda_n = 1/kappa_n,
/// eta(lambda_n) = c_n exp(-2 kappa_n x).
template <typename Scalar>
CouplingSpec<Scalar> coupling_spec(const SpectralData& data, Scalar x) {
  CouplingSpec<Scalar> spec;
  spec.lambdas.reserve(data.size());
  for (double k : data.kappas) spec.lambdas.push_back(Scalar(1) / static_cast<Scalar>(k));
  spec.eta = eta_at<Scalar>(data, x);
  return spec;
}

template <typename Scalar>
struct CouplingSolution {
  /// Ascending coefficients of Phi_+; p(0) == 1.
  VectorX<Scalar> p;
  /// Reciprocal condition estimate of the equilibrated system.
  Scalar rcond = Scalar(1);
  bool used_fallback = false;

  Eigen::Index degree() const { return p.size() - 1; }

  template <typename T>
  T phi_plus(const T& z) const {
    return horner(p, z);
  }
  template <typename T>
  T phi_minus(const T& z) const {
    return horner(p, T(-z));
  }
  VectorX<Scalar> phi_minus_coeffs() const { return reflect(p); }

  /// The mu_n in Phi_+(z) = prod (1 - z mu_n): roots of z^N Phi_+(1/z),
  /// which is monic.
  VectorX<std::complex<Scalar>> mus() const {
    const VectorX<Scalar> reversed = p.reverse();
    return roots<Scalar>(reversed);
  }
};

/// lambda_n W'(lambda_n) = -2 prod_{j != n} (1 - lambda_n^2 / lambda_j^2).
template <typename Scalar>
Scalar lambda_w_prime(const std::vector<Scalar>& lambdas, std::size_t n) {
  Scalar prod(-2);
  const Scalar ln2 = lambdas[n] * lambdas[n];
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (j != n) prod *= Scalar(1) - ln2 / (lambdas[j] * lambdas[j]);
  }
  return prod;
}

struct SolveOptions {
  /// Estimated condition number above which the system counts as singular.
  double condition_limit = 1e12;
  /// Relative perturbation of the finite coupling constants in the fallback.
  double fallback_eps = 1e-8;
  /// Maximal relative disagreement of the two perturbed solves.
  double fallback_agreement = 1e-4;
  /// Tolerance of the post-solve positivity gate (scale free).
  double herglotz_tol = 1e-6;
  bool check_herglotz = true;
};

namespace detail {

template <typename Scalar>
struct LinearSolve {
  VectorX<Scalar> p;
  Scalar rcond;
};

// Rows: Phi_+(-lambda) = eta Phi_+(lambda), divided through by eta when
// |eta| > 1 so that eta = ∞ becomes the root condition Phi_+(lambda) = 0.
// Columns are scaled by powers of s = sqrt(lambda_min lambda_max), rows by
// their max norm.
template <typename Scalar>
LinearSolve<Scalar> solve_coupling_system(const std::vector<Scalar>& lambdas,
                                          const std::vector<ExtendedReal<Scalar>>& eta) {
  using std::abs;
  using std::sqrt;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = static_cast<Eigen::Index>(lambdas.size());
  const Scalar s = sqrt(lambdas.front() * lambdas.back());

  Matrix system(n, n);
  VectorX<Scalar> rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar r = lambdas[i] / s;
    const bool flip = eta[i].is_infinite() || abs(eta[i].value()) > Scalar(1);
    const Scalar e = flip ? eta[i].reciprocal().value() : eta[i].value();
    Scalar power(1);
    for (Eigen::Index m = 1; m <= n; ++m) {
      power *= r;
      const Scalar reflected = (m % 2 == 1) ? -power : power;
      system(i, m - 1) = flip ? e * reflected - power : reflected - e * power;
    }
    rhs(i) = flip ? Scalar(1) - e : e - Scalar(1);
    const Scalar row_scale = system.row(i).cwiseAbs().maxCoeff();
    if (row_scale > Scalar(0)) {
      system.row(i) /= row_scale;
      rhs(i) /= row_scale;
    }
  }

  Eigen::FullPivLU<Matrix> lu(system);
  VectorX<Scalar> y = lu.solve(rhs);
  y += lu.solve(VectorX<Scalar>(rhs - system * y));

  LinearSolve<Scalar> out{VectorX<Scalar>(n + 1), lu.rcond()};
  out.p(0) = Scalar(1);
  Scalar sp(1);
  for (Eigen::Index m = 1; m <= n; ++m) {
    sp *= s;
    out.p(m) = y(m - 1) / sp;
  }
  return out;
}

template <typename Scalar>
struct HerglotzDefect {
  Scalar max_normalized_sign = Scalar(-1);  // in [-1, 1]; > 0 is a violation
  Scalar relative_root_imag = Scalar(0);
};

template <typename Scalar>
HerglotzDefect<Scalar> herglotz_defect(const std::vector<Scalar>& lambdas,
                                       const CouplingSolution<Scalar>& sol) {
  using std::abs;
  using std::sqrt;
  HerglotzDefect<Scalar> d;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    const Scalar a = sol.phi_plus(lambdas[n]);
    const Scalar b = sol.phi_minus(lambdas[n]);
    const Scalar denom = a * a + b * b;
    // both sides vanish: the pole cancels and carries no sign
    Scalar scale(0), power(1);
    for (Eigen::Index m = 0; m < sol.p.size(); ++m, power *= lambdas[n]) {
      scale += abs(sol.p(m)) * power;
    }
    if (!(sqrt(denom) > Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale)) continue;
    const Scalar lw = lambda_w_prime(lambdas, n);
    const Scalar normalized = Scalar(2) * a * b / denom * (lw > 0 ? Scalar(1) : Scalar(-1));
    d.max_normalized_sign = std::max(d.max_normalized_sign, normalized);
  }
  const auto mu = sol.mus();
  Scalar scale(1);
  Scalar imag(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    scale = std::max(scale, Scalar(abs(mu(i))));
    imag = std::max(imag, Scalar(abs(mu(i).imag())));
  }
  d.relative_root_imag = imag / scale;
  return d;
}

}  // namespace detail

/// Solves the symmetric coupling problem with Phi_+ of degree <= N.
///
/// Throws SingularSystem when the system is rank deficient and the
/// perturbation fallback does not settle, NotHerglotz when the result fails
/// the positivity gate.
template <typename Scalar>
CouplingSolution<Scalar> solve(const CouplingSpec<Scalar>& spec, const SolveOptions& opts = {}) {
  using std::isfinite;
  if (spec.lambdas.size() != spec.eta.size()) {
    throw InvalidData("coupling spec: lambdas and eta differ in length");
  }
  CouplingSolution<Scalar> sol;
  if (spec.size() == 0) {
    sol.p = VectorX<Scalar>::Ones(1);
    return sol;
  }

  const auto direct = detail::solve_coupling_system(spec.lambdas, spec.eta);
  const bool singular = !(direct.rcond * Scalar(opts.condition_limit) >= Scalar(1)) ||
                        !direct.p.allFinite();
  if (!singular) {
    sol.p = direct.p;
    sol.rcond = direct.rcond;
  } else {
    auto perturbed = [&](Scalar factor) {
      auto eta = spec.eta;
      for (auto& e : eta) {
        if (e.is_finite()) e = ExtendedReal<Scalar>(e.value() * factor);
      }
      return detail::solve_coupling_system(spec.lambdas, eta);
    };
    const Scalar eps(opts.fallback_eps);
    const auto up = perturbed(Scalar(1) + eps);
    const auto down = perturbed(Scalar(1) - eps);
    if (!up.p.allFinite() || !down.p.allFinite()) {
      throw SingularSystem("coupling system singular; perturbed solves diverged");
    }
    const Scalar scale = std::max(Scalar(1), Scalar(up.p.cwiseAbs().maxCoeff()));
    const Scalar gap = (up.p - down.p).cwiseAbs().maxCoeff();
    if (!(gap <= Scalar(opts.fallback_agreement) * scale)) {
      throw SingularSystem("coupling system singular; perturbed solves disagree by " +
                           std::to_string(static_cast<double>(gap / scale)));
    }
    sol.p = (up.p + down.p) / Scalar(2);
    sol.rcond = std::min(up.rcond, down.rcond);
    sol.used_fallback = true;
  }

  if (opts.check_herglotz) {
    const auto defect = detail::herglotz_defect(spec.lambdas, sol);
    if (defect.max_normalized_sign > Scalar(opts.herglotz_tol) ||
        defect.relative_root_imag > Scalar(opts.herglotz_tol)) {
      throw NotHerglotz("solution violates the positivity condition (sign defect " +
                        std::to_string(static_cast<double>(defect.max_normalized_sign)) +
                        ", root imag " +
                        std::to_string(static_cast<double>(defect.relative_root_imag)) + ")");
    }
  }
  return sol;
}

/// Closed form for sigma = {±lambda0}: Phi_+(z) = 1 + (z/lambda0)(1-eta)/(1+eta),
/// with the fraction equal to -1 at eta = ∞.
template <typename Scalar>
CouplingSolution<Scalar> solve_single_pair(Scalar lambda0, ExtendedReal<Scalar> eta0) {
  if (eta0.is_finite() && eta0.value() < Scalar(0)) {
    throw Unsolvable("single-pair coupling problem with negative coupling constant");
  }
  const Scalar ratio = eta0.is_infinite()
                           ? Scalar(-1)
                           : (Scalar(1) - eta0.value()) / (Scalar(1) + eta0.value());
  CouplingSolution<Scalar> sol;
  sol.p.resize(2);
  sol.p << Scalar(1), ratio / lambda0;
  return sol;
}

/// Closed form when every coupling constant is 0 or ∞: Phi_+ is the product
/// of (1 + z/lambda) over sigma_0 = {lambda : eta(lambda) = 0}.
template <typename Scalar>
CouplingSolution<Scalar> solve_zero_inf(const CouplingSpec<Scalar>& spec) {
  CouplingSolution<Scalar> sol;
  sol.p = VectorX<Scalar>::Ones(1);
  for (std::size_t n = 0; n < spec.size(); ++n) {
    const auto& e = spec.eta[n];
    if (e.is_zero()) {
      sol.p = mul_linear<Scalar>(sol.p, Scalar(1) / spec.lambdas[n]);
    } else if (e.is_infinite()) {
      // eta(-lambda) = 0, so -lambda belongs to sigma_0.
      sol.p = mul_linear<Scalar>(sol.p, Scalar(-1) / spec.lambdas[n]);
    } else {
      throw InvalidData("solve_zero_inf requires every coupling constant to be 0 or infinity");
    }
  }
  return sol;
}

struct VerifyReport {
  double coupling_residual = 0;
  bool coupling_ok = true;
  double normalization_error = 0;
  bool normalization_ok = true;
  double relative_root_imag = 0;
  bool roots_real = true;
  bool interlacing = true;
  /// max over surviving poles of the residue of z Phi_- Phi_+ / W.
  double max_residue = 0;
  /// max over lambda_n of eta Phi_+(lambda)^2 / (lambda W'(lambda)).
  double max_sign_test = 0;
  double max_normalized_sign = -1;
  bool residues_ok = true;
  /// max of |Phi_+(z)| / prod (1 + |z|/|lambda|) over the sampled z.
  double max_growth_ratio = 0;
  bool growth_ok = true;

  bool ok() const {
    return coupling_ok && normalization_ok && roots_real && interlacing && residues_ok &&
           growth_ok;
  }
};

/// Checks (C), (N) and (G) for a candidate solution. `root_tol` bounds the
/// imaginary parts of the mu_n relative to max(1, |mu|).
template <typename Scalar>
VerifyReport verify(const CouplingSpec<Scalar>& spec, const CouplingSolution<Scalar>& sol,
                    double tol, double root_tol = 1e-9) {
  using std::abs;
  using Complex = std::complex<Scalar>;
  VerifyReport r;
  const std::size_t n_pairs = spec.size();

  // (a) coupling condition
  double residual = 0;
  bool coupling_ok = true;
  for (std::size_t n = 0; n < n_pairs; ++n) {
    const Scalar lam = spec.lambdas[n];
    const Scalar plus = sol.phi_plus(lam);
    const Scalar minus = sol.phi_minus(lam);
    const auto& e = spec.eta[n];
    Scalar value;
    if (e.is_finite() && abs(e.value()) <= Scalar(1)) {
      value = abs(minus - e.value() * plus) / (Scalar(1) + abs(e.value()));
    } else {
      // Same quantity, divided through by |eta|.
      const Scalar rho = e.reciprocal().value();
      value = abs(rho * minus - plus) / (Scalar(1) + abs(rho));
    }
    residual = std::max(residual, static_cast<double>(value));
    const double scale = 1.0 + static_cast<double>(std::max(abs(plus), abs(minus)));
    if (!(static_cast<double>(value) <= tol * scale)) coupling_ok = false;
  }
  r.coupling_residual = residual;
  r.coupling_ok = coupling_ok;

  // (b) normalization
  r.normalization_error = static_cast<double>(abs(sol.p(0) - Scalar(1)));
  r.normalization_ok = r.normalization_error <= tol;

  // (c) real roots
  const auto mu = sol.mus();
  {
    Scalar scale(1);
    Scalar imag(0);
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      scale = std::max(scale, Scalar(abs(mu(i))));
      imag = std::max(imag, Scalar(abs(mu(i).imag())));
    }
    r.relative_root_imag = static_cast<double>(imag / scale);
    r.roots_real = r.relative_root_imag <= root_tol;
  }

  // (d) residues at the poles ±lambda_n (the two agree by symmetry)
  double max_res = -std::numeric_limits<double>::infinity();
  double max_sign = -std::numeric_limits<double>::infinity();
  double max_norm = -1;
  for (std::size_t n = 0; n < n_pairs; ++n) {
    const Scalar lam = spec.lambdas[n];
    const Scalar a = sol.phi_plus(lam);
    const Scalar b = sol.phi_minus(lam);
    const Scalar lw = lambda_w_prime(spec.lambdas, n);
    const Scalar sign_test = a * b / lw;
    max_sign = std::max(max_sign, static_cast<double>(sign_test));
    max_res = std::max(max_res, static_cast<double>(lam * lam * sign_test));
    const Scalar denom = a * a + b * b;
    if (denom > Scalar(0)) {
      const Scalar normalized = Scalar(2) * a * b / denom * (lw > 0 ? Scalar(1) : Scalar(-1));
      max_norm = std::max(max_norm, static_cast<double>(normalized));
    }
  }
  if (n_pairs == 0) {
    max_res = 0;
    max_sign = 0;
  }
  r.max_residue = max_res;
  r.max_sign_test = max_sign;
  r.max_normalized_sign = max_norm;
  r.residues_ok = max_res <= tol && max_sign <= tol;

  // interlacing of zeros of z Phi_- Phi_+ with the zeros ±lambda_n of W
  {
    std::vector<double> zeros{0.0};
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      const double m = static_cast<double>(mu(i).real());
      if (m != 0.0) {
        zeros.push_back(1.0 / m);
        zeros.push_back(-1.0 / m);
      }
    }
    std::vector<double> poles;
    for (Scalar lam : spec.lambdas) {
      poles.push_back(static_cast<double>(lam));
      poles.push_back(-static_cast<double>(lam));
    }
    constexpr double kCancel = 1e-6;
    std::vector<bool> zero_used(zeros.size(), false);
    std::vector<std::pair<double, int>> points;  // +1 zero, -1 pole
    for (double pole : poles) {
      std::size_t best = zeros.size();
      double best_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (zero_used[i]) continue;
        const double gap = std::abs(zeros[i] - pole);
        if (gap < best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      if (best < zeros.size() && best_gap <= kCancel * std::abs(pole)) {
        zero_used[best] = true;
      } else {
        points.emplace_back(pole, -1);
      }
    }
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (!zero_used[i]) points.emplace_back(zeros[i], +1);
    }
    std::sort(points.begin(), points.end());
    bool alternating = true;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].second == points[i - 1].second) alternating = false;
    }
    r.interlacing = alternating;
  }

  // (e) growth bound, sampled on three circles
  if (n_pairs > 0) {
    const Scalar l1 = spec.lambdas.front();
    const Scalar ln = spec.lambdas.back();
    const Scalar radii[] = {l1 / Scalar(2), (l1 + ln) / Scalar(2), Scalar(2) * ln};
    double worst = 0;
    for (Scalar radius : radii) {
      Scalar bound(1);
      for (Scalar lam : spec.lambdas) {
        const Scalar f = Scalar(1) + radius / lam;
        bound *= f * f;
      }
      for (int k = 0; k < 16; ++k) {
        const Scalar angle = Scalar(k) * Scalar(std::numbers::pi) / Scalar(8);
        const Complex z = std::polar(radius, angle);
        worst = std::max(worst, static_cast<double>(abs(sol.phi_plus(z)) / bound));
      }
    }
    r.max_growth_ratio = worst;
    r.growth_ok = worst <= 1.0 + tol;
  }
  return r;
}

/// F(z) = Phi_-(z) Phi_+(z) / W(z). At a zero of W the value is taken from
/// the derivative ratio when the numerator vanishes too; otherwise PoleAt.
template <typename Scalar>
std::complex<Scalar> eval_F(const CouplingSpec<Scalar>& spec, const CouplingSolution<Scalar>& sol,
                            std::complex<Scalar> z, Scalar pole_tol = Scalar(1e-12)) {
  using std::abs;
  using std::sqrt;
  using Complex = std::complex<Scalar>;
  const Complex plus = sol.phi_plus(z);
  const Complex minus = sol.phi_minus(z);
  const Complex num = plus * minus;
  Complex w(1);
  for (Scalar lam : spec.lambdas) w *= Scalar(1) - z * z / (lam * lam);
  if (abs(w) >= pole_tol) return num / w;

  std::size_t nearest = 0;
  for (std::size_t n = 1; n < spec.size(); ++n) {
    if (abs(abs(z) - spec.lambdas[n]) < abs(abs(z) - spec.lambdas[nearest])) nearest = n;
  }
  if (abs(num) >= sqrt(pole_tol)) {
    const double where = static_cast<double>(z.real() >= 0 ? spec.lambdas[nearest]
                                                           : -spec.lambdas[nearest]);
    throw PoleAt(where, "F has a pole at z = " + std::to_string(where));
  }
  const VectorX<Scalar> dp = derivative(sol.p);
  const Complex dnum = horner(dp, z) * minus - plus * horner(dp, Complex(-z));
  Complex dw(0);
  for (std::size_t n = 0; n < spec.size(); ++n) {
    Complex term = Scalar(-2) * z / (spec.lambdas[n] * spec.lambdas[n]);
    for (std::size_t j = 0; j < spec.size(); ++j) {
      if (j != n) term *= Scalar(1) - z * z / (spec.lambdas[j] * spec.lambdas[j]);
    }
    dw += term;
  }
  return dnum / dw;
}

}  // namespace kdv

#endif  // KDV_COUPLING_HPP
