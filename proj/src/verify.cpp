#include "logopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "logopt/blocks.hpp"
#include "logopt/equilibrium.hpp"
#include "logopt/phaseplane.hpp"
#include "logopt/series.hpp"

namespace logopt {

using nlohmann::json;

double u01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<RandomCase> random_cases(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return u01(rng()); };
  std::vector<RandomCase> out;
  while (static_cast<int>(out.size()) < count) {
    const double L = 0.5 + 4.5 * u();
    const int r = 1 + static_cast<int>(4.0 * u());
    const double mu = std::pow(10.0, -1.0 + 2.0 * u());
    std::vector<double> pts;
    for (int i = 0; i < 2 * r; ++i) pts.push_back(L * u());
    std::sort(pts.begin(), pts.end());
    bool ok = pts.back() - pts.front() < L;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i + 1] - pts[i] < 0.01 * L) ok = false;
    if (!ok) continue;
    std::vector<Interval> iv;
    for (int i = 0; i < r; ++i) iv.push_back({pts[2 * i], pts[2 * i + 1]});
    out.push_back({BangBangResource(Domain(0.0, L), std::move(iv)), mu});
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bounds",    "solver",         "strict",
                                                 "energy",    "surgery",        "advantage",
                                                 "superlinearity", "optimal", "series"};
  return names;
}

namespace {

class Suite {
 public:
  Suite(std::string name, double scale) : name_(std::move(name)), scale_(scale) {}

  /// measured <= threshold * tolerance_scale
  void tolerance(const std::string& name, double measured, double threshold) {
    record(name, measured <= threshold * scale_, measured, threshold * scale_);
  }
  /// measured <= threshold, not affected by the tolerance scale
  void at_most(const std::string& name, double measured, double threshold) {
    record(name, measured <= threshold, measured, threshold);
  }
  void at_least(const std::string& name, double measured, double threshold) {
    record(name, measured >= threshold, measured, threshold);
  }
  void greater(const std::string& name, double measured, double threshold) {
    record(name, measured > threshold, measured, threshold);
  }
  void holds(const std::string& name, bool ok, double measured) {
    record(name, ok, measured, nullptr);
  }

  json& details() { return details_; }

  json finish() const {
    return {{"name", name_}, {"passed", passed_}, {"invariants", invariants_}, {"details", details_}};
  }

 private:
  void record(const std::string& name, bool ok, double measured, json threshold) {
    passed_ = passed_ && ok;
    invariants_.push_back(
        {{"name", name}, {"passed", ok}, {"measured", measured}, {"threshold", threshold}});
  }

  std::string name_;
  double scale_;
  bool passed_ = true;
  json invariants_ = json::array();
  json details_ = json::object();
};

std::uint64_t sub_seed(std::uint64_t seed, int suite) {
  return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(suite + 1);
}

Params grid_params(double mu, int n) {
  Params p;
  p.mu = mu;
  p.grid_n = n;
  return p;
}

constexpr int kRandomCount = 1000;

struct Solved {
  EquilibriumSolution sol;
  double mass;
  double length;
};

std::vector<Solved> solve_random(std::uint64_t seed) {
  std::vector<Solved> out;
  for (const auto& c : random_cases(seed, kRandomCount)) {
    EquilibriumSolution sol = solve(c.resource, grid_params(c.mu, 512));
    out.push_back({std::move(sol), c.resource.mass(), c.resource.domain().length()});
  }
  return out;
}

// ---- suites ----

json suite_bounds(std::uint64_t seed, double scale) {
  Suite s("bounds", scale);
  const auto solved = solve_random(sub_seed(seed, 0));
  int converged = 0;
  double worst_low = -std::numeric_limits<double>::infinity();
  double worst_high = -std::numeric_limits<double>::infinity();
  for (const auto& c : solved) {
    if (c.sol.converged) ++converged;
    const double F = total_population(c.sol);
    worst_low = std::max(worst_low, c.mass - F);
    worst_high = std::max(worst_high, F - 3.0 * c.mass);
  }
  s.at_least("converged_solves", converged, kRandomCount);
  s.tolerance("lower_bound_violation", worst_low, 1e-8);
  s.tolerance("upper_bound_violation", worst_high, 1e-8);
  s.details()["resources"] = kRandomCount;
  return s.finish();
}

json suite_strict(std::uint64_t seed, double scale) {
  Suite s("strict", scale);
  const auto solved = solve_random(sub_seed(seed, 0));
  double lo = 1.0, hi = 0.0;
  int checked = 0;
  for (const auto& c : solved) {
    if (!c.sol.converged) continue;
    ++checked;
    for (double v : c.sol.theta.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  s.greater("theta_min", lo, 1e-12);
  s.greater("one_minus_theta_max", 1.0 - hi, 1e-12);
  s.details()["solves"] = checked;
  return s.finish();
}

json suite_energy(std::uint64_t seed, double scale) {
  Suite s("energy", scale);
  const auto solved = solve_random(sub_seed(seed, 0));
  double worst = 0.0;
  int cells = 0;
  for (const auto& c : solved) {
    if (!c.sol.converged) continue;
    const EnergySpread e = energy_spread(c.sol);
    const double h = c.sol.theta.h;
    worst = std::max(worst, e.max_spread / std::max(1e-8, 20.0 * h * h));
    cells += e.cells_checked;
  }
  s.tolerance("spread_over_allowance", worst, 1.0);
  s.details()["cells"] = cells;
  return s.finish();
}

json suite_solver(std::uint64_t seed, double scale) {
  Suite s("solver", scale);
  const auto cases = random_cases(sub_seed(seed, 1), 60);
  double worst = 0.0;
  int agreed = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& c = cases[i];
    const Params p = grid_params(c.mu, 512);
    const EquilibriumSolution a = require_converged(solve(c.resource, p));
    const double m0 = c.resource.m0();
    const EquilibriumSolution b =
        require_converged(march(c.resource, p, constant_grid(c.resource.domain(), 512, m0)));
    double d = 0.0;
    for (std::size_t j = 0; j < a.theta.values.size(); ++j)
      d = std::max(d, std::fabs(a.theta.values[j] - b.theta.values[j]));
    worst = std::max(worst, d);
    ++agreed;
  }
  s.tolerance("solve_vs_march_sup", worst, 1e-6);

  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  json ratios = json::array();
  for (int i = 50; i < 60; ++i) {
    const auto& c = cases[i];
    double F[3];
    for (int k = 0; k < 3; ++k)
      F[k] = total_population(require_converged(solve(c.resource, grid_params(c.mu, 256 << k))));
    const double r = (F[0] - F[1]) / (F[1] - F[2]);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    ratios.push_back(r);
  }
  s.at_least("min_convergence_ratio", rmin, 3.5);
  s.at_most("max_convergence_ratio", rmax, 4.5);
  s.details()["march_cases"] = agreed;
  s.details()["convergence_ratios"] = ratios;
  return s.finish();
}

struct SurgeryCase {
  double length;
  std::vector<Interval> intervals;
};

const std::vector<SurgeryCase>& surgery_cases() {
  static const std::vector<SurgeryCase> cases = {
      {4.0, {{1.0, 1.3}, {1.6, 4.0}}},
      {4.0, {{0.5, 0.8}, {1.5, 4.0}}},
      {6.0, {{2.0, 2.2}, {2.5, 2.9}, {3.5, 6.0}}},
      {4.0, {{0.0, 2.4}, {2.7, 3.0}}},
      {8.0, {{1.0, 1.2}, {1.5, 3.0}, {5.0, 5.3}, {6.0, 8.0}}},
  };
  return cases;
}

double five_point(const std::function<double(double)>& f, double t, double d) {
  return (-f(t + 2 * d) + 8 * f(t + d) - 8 * f(t - d) + f(t - 2 * d)) / (12 * d);
}

json suite_surgery(double scale) {
  Suite s("surgery", scale);
  int instances = 0;
  double zero_at_origin = 0.0;
  double max_zeta_prime = -std::numeric_limits<double>::infinity();
  double max_eta_minus_xi = -std::numeric_limits<double>::infinity();
  double fd_rel = 0.0, eta_routes = 0.0, direct_rel = 0.0;
  double pop_diff = 0.0, mass_diff = -std::numeric_limits<double>::infinity();
  json per = json::array();
  for (const auto& sc : surgery_cases()) {
    const BangBangResource m(Domain(0.0, sc.length), sc.intervals);
    const Params p = grid_params(1.0, 4096);
    const EquilibriumSolution sol = require_converged(solve(m, p));
    const auto inst = find_surgery(PiecewiseConstantResource::from(m), sol);
    if (!inst) continue;
    ++instances;
    const SurgeryInstance& si = *inst;
    zero_at_origin = std::max({zero_at_origin, std::fabs(zeta(si, 0.0)), std::fabs(xi(si, 0.0)),
                               std::fabs(eta_fn(si, 0.0))});
    const double T = si.T, d = 1e-3 * T;
    auto rel = [](double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), 1e-300); };
    for (int i = 1; i <= 32; ++i) {
      const double t = T * i / 33.0;
      const double zp = zeta_prime(si, t), xp = xi_prime(si, t), ep = eta_prime(si, t);
      max_zeta_prime = std::max(max_zeta_prime, zp);
      max_eta_minus_xi = std::max(max_eta_minus_xi, ep - xp);
      fd_rel = std::max(fd_rel, rel(zp, five_point([&](double x) { return zeta(si, x); }, t, d)));
      fd_rel = std::max(fd_rel, rel(xp, five_point([&](double x) { return xi(si, x); }, t, d)));
      fd_rel = std::max(fd_rel, rel(ep, five_point([&](double x) { return eta_fn(si, x); }, t, d)));
      eta_routes = std::max(eta_routes, rel(ep, eta_prime_quadrature(si, t)));
    }
    direct_rel = std::max({direct_rel, rel(zeta(si, T), zeta_T_direct(si)),
                           rel(xi(si, T), xi_T_direct(si))});

    const Improvement imp = improve_resource(m, p);
    pop_diff = std::max(pop_diff, std::fabs(imp.report.pop_after - imp.report.pop_before));
    mass_diff = std::max(mass_diff, imp.report.mass_after - imp.report.mass_before);
    per.push_back({{"length", sc.length},
                   {"T", T},
                   {"mirrored", si.mirrored},
                   {"report", to_json(imp.report)}});
  }
  s.at_least("instances", instances, 5);
  s.at_most("functionals_at_zero", zero_at_origin, 0.0);
  s.holds("zeta_prime_negative", max_zeta_prime < 0.0, max_zeta_prime);
  s.holds("eta_prime_minus_xi_prime_negative", max_eta_minus_xi < 0.0, max_eta_minus_xi);
  s.tolerance("quadrature_vs_fd_relative", fd_rel, 1e-6);
  s.tolerance("eta_prime_routes_relative", eta_routes, 1e-8);
  s.tolerance("functionals_at_T_routes_relative", direct_rel, 1e-8);
  s.tolerance("population_change", pop_diff, 1e-6);
  s.at_most("mass_change", mass_diff, -1e-8);
  s.details()["instances"] = per;
  return s.finish();
}

json suite_advantage(double scale) {
  Suite s("advantage", scale);
  const Params p = grid_params(1.0, 512);
  double edge = 0.0;
  for (double l : {0.1, 1.0, 3.7, 10.0})
    edge = std::max({edge, std::fabs(advantage(l, 0.0, p)), std::fabs(advantage(l, l, p))});
  s.at_most("edge_values", edge, 0.0);

  const auto surf = advantage_surface(0.1, 8.0, 50, 0.0, 1.0, 50, p);
  double below = 0.0, above = 0.0, hmax = 0.0;
  for (const auto& pt : surf) {
    const double b = pt.b_over_l * pt.l;
    below = std::max(below, -pt.H);
    above = std::max(above, pt.H - 2.0 * b);
    hmax = std::max(hmax, pt.H);
  }
  s.tolerance("surface_negative_part", below, 1e-12);
  s.tolerance("surface_excess_over_2b", above, 1e-12);

  double law = 0.0, dl = 0.0, db = 0.0;
  json ratios = json::array();
  for (double l : {1.0, 2.0, 4.0}) {
    const double b = 0.01 * l;
    const double ratio = advantage(l, b, grid_params(1.0, 4096)) / (l * b * b);
    law = std::max(law, std::fabs(3.0 * ratio - 1.0));
    ratios.push_back(ratio);
    const Partials d = advantage_partials(l, b, grid_params(1.0, 4096));
    dl = std::max(dl, std::fabs(d.dH_dl / (b * b / 3.0) - 1.0));
    db = std::max(db, std::fabs(d.dH_db / (2.0 * l * b / 3.0) - 1.0));
  }
  s.at_most("small_b_law_relative", law, 0.05);
  s.at_most("dH_dl_small_b_relative", dl, 0.05);
  s.at_most("dH_db_small_b_relative", db, 0.05);

  // Sign pattern of the Hessian away from the surface edges; reported only.
  int nsd = 0, sampled = 0;
  for (int i = 1; i < 50; i += 7) {
    for (int j = 5; j < 45; j += 5) {
      const double l = surf[i * 50].l, r = surf[i * 50 + j].b_over_l;
      const double hl = 0.02 * l, hb = 0.02 * l;
      auto H = [&](double ll, double bb) { return advantage(ll, bb, p); };
      const double b = r * l;
      const double f = H(l, b);
      const double fll = (H(l + hl, b) - 2 * f + H(l - hl, b)) / (hl * hl);
      const double fbb = (H(l, b + hb) - 2 * f + H(l, b - hb)) / (hb * hb);
      const double flb = (H(l + hl, b + hb) - H(l + hl, b - hb) - H(l - hl, b + hb) +
                          H(l - hl, b - hb)) / (4 * hl * hb);
      ++sampled;
      if (fll <= 0.0 && fbb <= 0.0 && fll * fbb - flb * flb >= 0.0) ++nsd;
    }
  }
  s.details()["small_b_ratios"] = ratios;
  s.details()["surface_points"] = static_cast<int>(surf.size());
  s.details()["surface_max_H"] = hmax;
  s.details()["hessian_negative_semidefinite"] = {{"count", nsd}, {"sampled", sampled}};
  return s.finish();
}

json suite_superlinearity(double scale) {
  Suite s("superlinearity", scale);
  const Params p = grid_params(1.0, 512);
  std::vector<double> ls, rs;
  for (int i = 0; i < 10; ++i) {
    ls.push_back(1.0 + 3.0 * i / 9.0);
    rs.push_back(0.01 + 0.04 * i / 9.0);
  }
  std::map<std::pair<int, int>, double> single;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) single[{i, j}] = advantage(ls[i], rs[j] * ls[i], p);
  double worst = std::numeric_limits<double>::infinity();
  json at;
  int positive = 0, total = 0;
  double r_lo = 1.0, r_hi = 0.0, l_lo = 1e300, l_hi = 0.0;
  for (int i1 = 0; i1 < 10; ++i1)
    for (int j1 = 0; j1 < 10; ++j1)
      for (int i2 = 0; i2 < 10; ++i2)
        for (int j2 = 0; j2 < 10; ++j2) {
          const double l1 = ls[i1], b1 = rs[j1] * l1, l2 = ls[i2], b2 = rs[j2] * l2;
          const double margin =
              advantage(l1 + l2, b1 + b2, p) - single[{i1, j1}] - single[{i2, j2}];
          ++total;
          if (margin > 0.0) {
            ++positive;
            r_lo = std::min({r_lo, rs[j1], rs[j2]});
            r_hi = std::max({r_hi, rs[j1], rs[j2]});
            l_lo = std::min({l_lo, l1, l2});
            l_hi = std::max({l_hi, l1, l2});
          }
          if (margin < worst) {
            worst = margin;
            at = {{"l1", l1}, {"b1", b1}, {"l2", l2}, {"b2", b2}};
          }
        }
  s.greater("min_margin", worst, 0.0);
  s.details()["pairs"] = total;
  s.details()["positive"] = positive;
  s.details()["min_margin_at"] = at;
  s.details()["positive_region"] = {
      {"b_over_l", {r_lo, r_hi}}, {"l", {l_lo, l_hi}}};
  return s.finish();
}

json suite_optimal(double scale) {
  Suite s("optimal", scale);
  const OptimizeResult r = optimize_small_resource(1.0, 0.05, 1.0, 2, 20, grid_params(1.0, 512));
  double best_gap = 0.0;
  for (const auto& c : r.best) best_gap = std::max(best_gap, std::fabs(c.gap));
  double runner_up = std::numeric_limits<double>::infinity();
  for (const auto& c : r.configs)
    if (c.blocks.size() > 1 || c.gap > 1e-12) runner_up = std::min(runner_up, c.gap);
  s.holds("single_block_wins", r.single_block_wins, static_cast<double>(r.best.size()));
  s.greater("smallest_gap_to_other_configs", runner_up, 0.0);
  s.greater("gap_correlation", r.correlation, 0.0);
  s.holds("small_resource_regime", !r.regime_violation, 0.05);
  s.details()["fitted_C3"] = r.fitted_C3;
  s.details()["configurations"] = static_cast<int>(r.configs.size());
  s.details()["solver_calls"] = r.evaluations;
  return s.finish();
}

json suite_series(double scale) {
  Suite s("series", scale);
  const double mu = 10.0;
  const SeriesState st = eta_k_compute(0.05, kSeriesDefaultOrder);
  const BangBangResource m(Domain(0.0, 1.0), {{0.0, 0.05}});
  const double F_direct = total_population(require_converged(solve(m, grid_params(mu, 4096))));
  const double F = F_series(st, mu).value;
  s.tolerance("F_series_vs_direct", std::fabs(F - F_direct), 1e-6);

  double dm0 = 0.0, dmu = 0.0, fd = 0.0;
  json partials = json::array();
  for (double m0 : {0.05, 0.02}) {
    const SeriesState sm = eta_k_compute(m0, kSeriesDefaultOrder);
    const SeriesPartials d = F_partials_series(sm, mu);
    const double lead_m0 = 1.0 + 2.0 * m0 / (3.0 * mu);
    const double lead_mu = -m0 * m0 / (3.0 * mu * mu);
    const double rm0 = std::fabs(d.dF_dm0 - lead_m0) / std::fabs(lead_m0) / m0;
    const double rmu = std::fabs(d.dF_dmu - lead_mu) / std::fabs(lead_mu) / m0;
    dm0 = std::max(dm0, rm0);
    dmu = std::max(dmu, rmu);
    const double h = 1e-4, k = 1e-3;
    const double fd_m0 = (F_series(m0 + h, mu, kSeriesDefaultOrder).value -
                          F_series(m0 - h, mu, kSeriesDefaultOrder).value) / (2 * h);
    const double fd_mu = (F_series(sm, mu + k).value - F_series(sm, mu - k).value) / (2 * k);
    fd = std::max({fd, std::fabs(d.dF_dm0 - fd_m0), std::fabs(d.dF_dmu - fd_mu)});
    partials.push_back({{"m0", m0},
                        {"dF_dm0", d.dF_dm0},
                        {"dF_dmu", d.dF_dmu},
                        {"dF_dm0_relative_deviation", rm0 * m0},
                        {"dF_dmu_relative_deviation", rmu * m0}});
  }
  // relative deviation divided by m0 must not exceed 1
  s.at_most("dF_dm0_deviation_over_m0", dm0, 1.0);
  s.at_most("dF_dmu_deviation_over_m0", dmu, 1.0);
  s.tolerance("partials_vs_finite_differences", fd, 1e-8);

  // Remainder of dF/dmu scaled by m0^3 / mu^2 stays bounded as m0 -> 0.
  double cmin = 1e300, cmax = 0.0;
  for (double m0 : {0.04, 0.02, 0.01, 0.005}) {
    const SeriesPartials d = F_partials_series(m0, mu);
    const double c = std::fabs(d.dF_dmu + m0 * m0 / (3.0 * mu * mu)) * mu * mu / (m0 * m0 * m0);
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  s.at_most("dF_dmu_remainder_constant_spread", cmax / cmin, 1.5);

  const SeriesInvariants inv = series_invariants(st, mu);
  s.tolerance("zeta_neumann", inv.max_neumann, 1e-12);
  s.tolerance("zeta_mean", inv.max_mean, 1e-12);
  s.tolerance("zeta_continuity_relative", inv.max_continuity, 1e-12);
  s.tolerance("solvability_coefficients", inv.max_solvability, 1e-10);
  s.tolerance("integral_low_order_coefficients", inv.max_low_order, 1e-9);
  double decay = 0.0;
  for (std::size_t k = 1; k < inv.residuals.size(); ++k)
    if (inv.residuals[k - 1] > 1e-13) decay = std::max(decay, inv.residuals[k] / inv.residuals[k - 1]);
  s.at_most("residual_decay_factor", decay, 2.0 / mu);

  const CoefficientDiagnostics diag = coefficient_diagnostics(st);
  s.at_least("radius_estimate", diag.radius_estimate, 1.0 / (200.0 * 0.05));
  s.at_most("gamma_bound_flags", static_cast<double>(diag.flagged.size()), 0.0);
  double growth = 0.0;
  for (int k = 1; k < st.K; ++k)
    growth = std::max(growth, (diag.nu_values[k] / std::pow(0.05, k + 2)) /
                                  (diag.nu_values[k - 1] / std::pow(0.05, k + 1)));
  s.at_most("nu_growth_ratio", growth, 10.0);

  double eta1_lo = 1e300, eta1_hi = 0.0;
  for (double m0 : {0.1, 0.05, 0.01}) {
    const SeriesState s1 = eta_k_compute(m0, 1);
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i)
      sup = std::max(sup, std::fabs(evaluate(s1.eta[0], i / 2000.0)));
    sup = std::max({sup, std::fabs(evaluate_left(s1.eta[0], m0))});
    eta1_lo = std::min(eta1_lo, sup / (m0 * m0));
    eta1_hi = std::max(eta1_hi, sup / (m0 * m0));
  }
  s.at_most("eta1_sup_over_m0sq_spread", eta1_hi / eta1_lo, 2.0);

  s.details()["F_series"] = F;
  s.details()["F_direct"] = F_direct;
  s.details()["partials"] = partials;
  s.details()["residuals"] = inv.residuals;
  s.details()["radius_estimate"] = diag.radius_estimate;
  s.details()["dF_dmu_remainder_constant"] = {cmin, cmax};
  s.details()["integral_eta"] = st.integrals;
  return s.finish();
}

}  // namespace

json run_verify(const VerifyConfig& config) {
  std::vector<std::string> chosen = config.suites.empty() ? suite_names() : config.suites;
  for (const auto& name : chosen)
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw Error(ErrorCode::Config, "unknown suite '" + name + "'");
  if (!(config.tolerance_scale > 0.0))
    throw Error(ErrorCode::Config, "tolerance_scale must be positive");

  const double sc = config.tolerance_scale;
  json suites = json::array();
  bool passed = true;
  for (const auto& name : suite_names()) {
    if (std::find(chosen.begin(), chosen.end(), name) == chosen.end()) continue;
    json r;
    if (name == "bounds") r = suite_bounds(config.seed, sc);
    else if (name == "solver") r = suite_solver(config.seed, sc);
    else if (name == "strict") r = suite_strict(config.seed, sc);
    else if (name == "energy") r = suite_energy(config.seed, sc);
    else if (name == "surgery") r = suite_surgery(sc);
    else if (name == "advantage") r = suite_advantage(sc);
    else if (name == "superlinearity") r = suite_superlinearity(sc);
    else if (name == "optimal") r = suite_optimal(sc);
    else r = suite_series(sc);
    passed = passed && r["passed"].get<bool>();
    suites.push_back(std::move(r));
  }
  return {{"seed", config.seed},
          {"tolerance_scale", sc},
          {"passed", passed},
          {"suites", suites}};
}

}  // namespace logopt
