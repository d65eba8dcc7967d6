// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kdv/asymptotics.hpp"
#include "kdv/coupling.hpp"
#include "kdv/determinant.hpp"
#include "kdv/reconstruct.hpp"
#include "kdv/scattering.hpp"

#ifndef KDVCP_PATH
#error "KDVCP_PATH must point at the kdvcp executable"
#endif

namespace {

using namespace kdv;
using C = std::complex<double>;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const SpectralData kTwo{{1, 0.5}, {1, -1}, 0, "two"};
const SpectralData kThree{{1, 0.6, 0.3}, {1, -1, 1}, 0, "three"};

double soliton(double kappa, double c, double x, double t) {
  const double s = 1.0 / std::cosh(kappa * x - 4 * kappa * kappa * kappa * t - 0.5 * std::log(c));
  return -2 * kappa * kappa * s * s;
}

Outcome single_soliton() {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> ux(-10, 10), ut(-2, 2);
  double worst = 0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0}) {
    for (double c : {std::exp(-2.0), 1.0, std::exp(2.0), 10.0}) {
      const SpectralData d{{kappa}, {c}};
      for (int i = 0; i < 100; ++i) {
        const double x = ux(rng), t = ut(rng);
        worst = std::max(worst, std::abs(q_at<double>(d, x, t) - soliton(kappa, c, x, t)));
      }
    }
  }
  return {worst <= 1e-10, fmt("max |q - closed form| = %.3g over 1600 points", worst)};
}

std::vector<SpectralData> random_fixtures() {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> uk(0.2, 2.0), uc(std::log(0.1), std::log(10.0));
  std::uniform_int_distribution<int> un(2, 6);
  std::vector<SpectralData> out;
  while (out.size() < 20) {
    const int n = un(rng);
    std::vector<double> k(n);
    for (double& v : k) v = uk(rng);
    std::sort(k.begin(), k.end(), std::greater<>());
    bool spaced = true;
    for (int i = 0; i + 1 < n; ++i) spaced = spaced && (k[i] - k[i + 1]) >= 0.1 * k[i];
    if (!spaced) continue;
    SpectralData d;
    d.kappas = k;
    for (int i = 0; i < n; ++i) d.c.push_back((i % 2 ? -1 : 1) * std::exp(uc(rng)));
    out.push_back(d);
  }
  return out;
}

const GridSpec kOracleGrid{-15, 15, 201, {0, 0.5}};

Outcome oracle_equivalence(const std::vector<SpectralData>& fixtures) {
  double worst = 0;
  for (const auto& d : fixtures) worst = std::max(worst, compare(d, kOracleGrid));
  return {worst <= 1e-7, fmt("max |q_point - q_det| = %.3g over 20 fixtures", worst)};
}

Outcome coupling_invariants(const std::vector<SpectralData>& fixtures) {
  long solves = 0, failures = 0;
  double worst_imag = 0, worst_sign = -INFINITY, worst_res = -INFINITY, worst_growth = 0;
  bool parity = true, interlacing = true;
  for (const auto& d : fixtures) {
    for (double t : kOracleGrid.t_values) {
      const SpectralData at_t = evolve_to(d, t);
      for (int i = 0; i < kOracleGrid.nx; ++i) {
        const auto spec = coupling_spec<double>(at_t, kOracleGrid.node(i));
        const auto sol = solve(spec);
        const auto rep = verify(spec, sol, 1e-10, 1e-8);
        const auto minus = sol.phi_minus_coeffs();
        for (Eigen::Index m = 0; m < sol.p.size(); ++m) {
          parity = parity && minus(m) == (m % 2 ? -sol.p(m) : sol.p(m));
        }
        interlacing = interlacing && rep.interlacing;
        worst_imag = std::max(worst_imag, rep.relative_root_imag);
        worst_sign = std::max(worst_sign, rep.max_sign_test);
        worst_res = std::max(worst_res, rep.max_residue);
        worst_growth = std::max(worst_growth, rep.max_growth_ratio);
        const bool ok = rep.roots_real && rep.interlacing && rep.max_sign_test <= 1e-10 &&
                        rep.max_residue <= 1e-10 && rep.growth_ok;
        failures += ok ? 0 : 1;
        ++solves;
      }
    }
  }
  return {failures == 0 && parity,
          fmt("%ld solves, %ld failing; parity %s, interlacing %s, max root imag %.2g, max "
              "sign test %.2g, max residue %.2g, max growth ratio %.3f",
              solves, failures, parity ? "exact" : "BROKEN", interlacing ? "ok" : "BROKEN",
              worst_imag, worst_sign, worst_res, worst_growth)};
}

Outcome kdv_residual() {
  std::mt19937_64 rng(1729);
  std::uniform_real_distribution<double> ux(-4, 4), ut(-0.5, 0.5);
  const SpectralData fixtures[] = {{{1}, {1}}, kTwo, kThree};
  double worst = 0, lo = INFINITY, hi = 0;
  int bad_res = 0, bad_ratio = 0;
  for (const auto& d : fixtures) {
    for (int i = 0; i < 10; ++i) {
      const double x = ux(rng), t = ut(rng);
      const double r1 = pde_residual(d, x, t, 1e-3);
      const double r2 = pde_residual(d, x, t, 5e-4);
      const double ratio = r1 / r2;
      worst = std::max(worst, r1);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      bad_res += r1 <= 1e-4 ? 0 : 1;
      bad_ratio += (ratio >= 3.5 && ratio <= 4.5) ? 0 : 1;
    }
  }
  return {bad_res == 0 && bad_ratio == 0,
          fmt("30 points: max residual %.3g (%d above 1e-4), ratio range [%.3f, %.3f] (%d "
              "outside [3.5, 4.5])",
              worst, bad_res, lo, hi, bad_ratio)};
}

Outcome long_time_ladder() {
  bool ok = true;
  std::string detail;
  for (const auto& d : {kTwo, kThree}) {
    std::vector<double> dev;
    for (double t : {2.0, 5.0, 10.0, 20.0}) dev.push_back(deviation(d, t, auto_window(d, t)));
    const bool dec = dev[0] > dev[1] && dev[1] > dev[2] && dev[2] > dev[3];
    ok = ok && dec && dev[3] < dev[0] / 10;
    detail += fmt("N=%zu D = %.3g, %.3g, %.3g, %.3g; ", d.size(), dev[0], dev[1], dev[2], dev[3]);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// Gaps at the roundoff floor are treated as converged: the sequence must
// strictly decrease until it reaches the floor and then stay there.
constexpr double kRoundoffFloor = 1e-13;

Outcome coupling_limit() {
  bool ok = true;
  double largest_last = 0;
  int rays = 0;
  std::string detail;
  for (const auto& d : {kTwo, kThree}) {
    for (std::size_t n = 0; n < d.size(); ++n) {
      for (C z : {C(0, 0.5), C(1, 0.5)}) {
        std::vector<double> g;
        for (double t : {5.0, 10.0, 20.0}) g.push_back(coupling_limit_gap(d, n, t, z));
        for (std::size_t i = 1; i < g.size(); ++i) {
          const bool floor = g[i - 1] <= kRoundoffFloor && g[i] <= kRoundoffFloor;
          if (!(g[i] < g[i - 1] || floor)) {
            ok = false;
            detail += fmt("N=%zu n=%zu z=(%g,%g): %.3g -> %.3g; ", d.size(), n + 1, z.real(),
                          z.imag(), g[i - 1], g[i]);
          }
        }
        largest_last = std::max(largest_last, g.back());
        ++rays;
      }
    }
  }
  detail += fmt("%d (soliton, z) cases, largest gap at t=20 %.3g", rays, largest_last);
  return {ok, detail};
}

Outcome scattering() {
  bool ok = true;
  std::string detail;
  for (const auto& d : {kTwo, kThree}) {
    const ScatteringReport r = scatter_report(d);
    ok = ok && r.max_unitarity_error <= 1e-3 && r.max_blaschke_error <= 1e-3 &&
         r.max_eigenvalue_error <= 1e-4 && r.max_coupling_error <= 1e-3 &&
         r.recovered_kappas.size() == d.size();
    detail += fmt("N=%zu unitarity %.2g, Blaschke %.2g, eigenvalue %.2g, coupling %.2g; ",
                  d.size(), r.max_unitarity_error, r.max_blaschke_error, r.max_eigenvalue_error,
                  r.max_coupling_error);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome truncation() {
  std::vector<double> kappas, c;
  for (int n = 1; n <= 10; ++n) {
    kappas.push_back(std::ldexp(1.0, -n));
    c.push_back(n % 2 ? 1.0 : -1.0);
  }
  const GridSpec grid{-40, 40, 1601, {0}};
  auto rows_for = [&](std::size_t keep) {
    SpectralData d;
    d.kappas.assign(kappas.begin(), kappas.begin() + keep);
    d.c.assign(c.begin(), c.begin() + keep);
    return q_grid(d, grid);
  };
  std::vector<std::vector<GridRow>> rows;
  for (std::size_t keep = 5; keep <= 10; ++keep) rows.push_back(rows_for(keep));
  auto sup = [&](const std::vector<GridRow>& a, const std::vector<GridRow>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i].q - b[i].q));
    return s;
  };
  const double d68 = sup(rows[1], rows[3]);
  const double bound = tail_bound(std::vector<double>(kappas.begin(), kappas.begin() + 8), 6);
  std::vector<double> steps;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) steps.push_back(sup(rows[i], rows[i + 1]));
  bool decreasing = true;
  for (std::size_t i = 1; i < steps.size(); ++i) decreasing = decreasing && steps[i] < steps[i - 1];
  std::string ladder;
  for (std::size_t i = 0; i < steps.size(); ++i) ladder += fmt("%s%.3g", i ? ", " : "", steps[i]);
  return {d68 <= bound + 1e-6 && decreasing,
          fmt("sup|q6 - q8| = %.4g <= %.4g + 1e-6; consecutive (N=5..10) differences %s", d68,
              bound, ladder.c_str())};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "kdv_acceptance";
  fs::create_directories(dir);
  std::ofstream(dir / "two.json") << R"({"kappas": [1, 0.5], "c": [1, -1]})";
  std::ofstream(dir / "flipped.json") << R"({"kappas": [1, 0.5], "c": [-1, 1]})";
  std::ofstream(dir / "broken.json") << R"({"kappas": [1, 0.5], "c": )";
  const std::string exe = KDVCP_PATH;
  auto cmd = [&](const std::string& args) {
    return shell("\"" + exe + "\" " + args + " >/dev/null 2>&1");
  };
  const std::string in = (dir / "two.json").string();
  const int e1 = cmd("verify --input " + in + " --out " + (dir / "a.json").string());
  const int e2 = cmd("verify --input " + in + " --out " + (dir / "b.json").string());
  const std::string a = slurp(dir / "a.json"), b = slurp(dir / "b.json");
  const bool identical = !a.empty() && a == b;
  const int flipped = cmd("verify --input " + (dir / "flipped.json").string());
  const int broken = cmd("reconstruct --input " + (dir / "broken.json").string());
  const int strict = cmd("verify --input " + in + " --tol-scatter 0");
  const int csv = cmd("reconstruct --input " + in + " --nx 11");
  fs::remove_all(dir);
  const bool codes = e1 == 0 && e2 == 0 && flipped == 1 && broken == 1 && strict == 3 && csv == 0;
  return {identical && codes,
          fmt("verify output %s (%zu bytes); exit codes ok=%d,%d flipped=%d malformed=%d "
              "zero-tolerance=%d reconstruct=%d",
              identical ? "byte-identical" : "DIFFERS", a.size(), e1, e2, flipped, broken, strict,
              csv)};
}

}  // namespace

int main() {
  const std::vector<SpectralData> fixtures = random_fixtures();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"single-soliton exactness", single_soliton},
      {"oracle equivalence", [&] { return oracle_equivalence(fixtures); }},
      {"coupling-problem invariants", [&] { return coupling_invariants(fixtures); }},
      {"KdV residual", kdv_residual},
      {"long-time ladder", long_time_ladder},
      {"coupling-level limit", coupling_limit},
      {"scattering ground truth", scattering},
      {"truncation consistency", truncation},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
