#include <cmath>

#include "doctest.h"
#include "logopt/equilibrium.hpp"
#include "logopt/series.hpp"

using namespace logopt;

namespace {
double direct(double m0, double mu, int n) {
  Params p;
  p.mu = mu;
  p.grid_n = n;
  return total_population(require_converged(solve(BangBangResource(Domain(0.0, 1.0), {{0.0, m0}}), p)));
}
}  // namespace

TEST_CASE("polynomial operations") {
  const PiecewisePoly x{0.3, {0.0, 1.0}, {1.0, 1.0}};  // right piece: 1 + u = x
  const PiecewisePoly x2 = multiply(x, x);
  CHECK(x2.left == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(evaluate(x2, 0.7) == doctest::Approx(0.49));
  CHECK(integral(constant_piecewise(0.3, 1.0, 0.0)) == doctest::Approx(0.3));
  const PiecewisePoly p{0.3, {1.0, -2.0, 0.5, 4.0}, {3.0, 0.25, -1.0}};
  const PiecewisePoly back = derivative(antiderivative(p));
  CHECK(back.left == p.left);
  CHECK(back.right == p.right);
  CHECK(evaluate_right(antiderivative(p), 1.0) == 0.0);
  CHECK(evaluate_left(antiderivative(p), 0.0) == 0.0);
  CHECK(right_in_x(x) == std::vector<double>{0.0, 1.0});
  CHECK(nu(PiecewisePoly{0.5, {}, {}}) == 0.0);
  CHECK(nu(x2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(add(x, PiecewisePoly{0.4, {1.0}, {1.0}}), Error);
  CHECK_THROWS_AS(multiply(x, PiecewisePoly{0.4, {1.0}, {1.0}}), Error);
}

TEST_CASE("polynomials in m0") {
  const MPoly m = MPoly::m0();
  const MPoly p = (m - 1.0) * (m - 1.0);
  CHECK(p.coefficients() == std::vector<double>{1.0, -2.0, 1.0});
  CHECK(p(0.5) == doctest::Approx(0.25));
  CHECK(p.derivative().coefficients() == std::vector<double>{-2.0, 2.0});
  CHECK((m * p).divide_by_m0().coefficients() == p.coefficients());
  CHECK(p.nu() == 4.0);
}

TEST_CASE("first order term") {
  const double m0 = 0.2;
  const SeriesState s = eta_k_compute(m0, 1);
  const PiecewisePoly& z = s.zeta[0];
  // zeta_1'' = -m0 (1 - m0) on (0, m0) and m0^2 on (m0, 1)
  const PiecewisePoly d2 = derivative(derivative(z));
  CHECK(d2.left[0] == doctest::Approx(-m0 * (1.0 - m0)));
  CHECK(d2.right[0] == doctest::Approx(m0 * m0));
  CHECK(derivative(z).left[0] == 0.0);
  CHECK(derivative(z).right[0] == 0.0);
  CHECK(std::fabs(integral(z)) <= 1e-15);
  CHECK(evaluate_left(z, m0) == doctest::Approx(evaluate_right(z, m0)).epsilon(1e-14));
  CHECK(s.beta[0] == doctest::Approx(m0 * m0 * (1.0 - m0) * (1.0 - m0) / 3.0).epsilon(1e-14));
  const auto& a = s.integral_poly[0].coefficients();
  CHECK(a.size() >= 5);
  CHECK(a[2] == doctest::Approx(1.0 / 3.0));
  CHECK(a[3] == doctest::Approx(-2.0 / 3.0));
  CHECK(a[4] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("every zeta_k satisfies the normalisation") {
  const SeriesState s = eta_k_compute(0.05, 12);
  const SeriesInvariants inv = series_invariants(s, 10.0);
  CHECK(inv.max_neumann == 0.0);
  CHECK(inv.max_mean <= 1e-12);
  CHECK(inv.max_continuity <= 1e-12);
  CHECK(inv.max_derivative_jump <= 1e-10);
  CHECK(inv.max_solvability <= 1e-10);
  CHECK(inv.max_low_order <= 1e-9);
  for (int k = 0; k < s.K; ++k) {
    const double lead = s.integral_poly[k](0.05);
    CHECK(lead == doctest::Approx(s.integrals[k]).epsilon(1e-6).scale(1e-18));
  }
}

TEST_CASE("integral of eta_k starts at m0^(k+1)") {
  const SeriesState s = eta_k_compute(0.1, 6);
  for (int k = 1; k <= 6; ++k) {
    const MPoly& a = s.integral_poly[k - 1];
    for (int n = 0; n <= k; ++n) CHECK(a.coefficient(n) == 0.0);
    CHECK(a.coefficient(k + 1) != 0.0);
  }
}

TEST_CASE("eta_1 is of order m0^2") {
  double lo = 1e300, hi = 0.0;
  for (double m0 : {0.1, 0.05, 0.01}) {
    const SeriesState s = eta_k_compute(m0, 1);
    double sup = 0.0;
    for (int i = 0; i <= 1000; ++i) sup = std::max(sup, std::fabs(evaluate(s.eta[0], i / 1000.0)));
    lo = std::min(lo, sup / (m0 * m0));
    hi = std::max(hi, sup / (m0 * m0));
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("series against the direct solver") {
  CHECK(F_series(0.05, 10.0, 0).value == 0.05);
  const double ref = direct(0.05, 10.0, 4096);
  const SeriesValue v = F_series(0.05, 10.0, 8);
  CHECK(std::fabs(v.value - ref) <= 1e-6);
  CHECK(v.guaranteed == false);
  CHECK(v.tail_estimate < 1e-12);
  // The gap shrinks while truncation dominates; from K = 4 on it is the
  // solver's own O(h^2) error and stays flat.
  const double floor = std::fabs(v.value - ref);
  double prev = std::fabs(F_series(0.05, 10.0, 1).value - ref);
  for (int K = 2; K <= 8; ++K) {
    const double gap = std::fabs(F_series(0.05, 10.0, K).value - ref);
    if (K <= 3) CHECK(gap < prev);
    else CHECK(std::fabs(gap - floor) <= 1e-15);
    prev = gap;
  }
  CHECK(F_series(0.01, 10.0, 2).guaranteed);
}

TEST_CASE("residual of the partial sums falls by at least mu per order") {
  const SeriesState s = eta_k_compute(0.05, 8);
  const SeriesInvariants inv = series_invariants(s, 10.0);
  REQUIRE(inv.residuals.size() == 9);
  for (std::size_t k = 1; k < inv.residuals.size(); ++k)
    if (inv.residuals[k - 1] > 1e-13) CHECK(inv.residuals[k] <= inv.residuals[k - 1] / 5.0);
}

TEST_CASE("partials against finite differences") {
  const double m0 = 0.02, mu = 10.0;
  const SeriesPartials d = F_partials_series(m0, mu);
  const double h = 1e-4, k = 1e-3;
  const double fm0 = (F_series(m0 + h, mu, 8).value - F_series(m0 - h, mu, 8).value) / (2 * h);
  const double fmu = (F_series(m0, mu + k, 8).value - F_series(m0, mu - k, 8).value) / (2 * k);
  CHECK(std::fabs(d.dF_dm0 - fm0) <= 1e-8);
  CHECK(std::fabs(d.dF_dmu - fmu) <= 1e-8);
  const double lead = 1.0 + 2.0 * m0 / (3.0 * mu);
  CHECK(std::fabs(d.dF_dm0 - lead) / lead <= m0);
}

TEST_CASE("dF/dmu remainder is of order m0^3 / mu^2") {
  const double mu = 10.0;
  for (double m0 : {0.02, 0.01, 0.005}) {
    const SeriesPartials d = F_partials_series(m0, mu);
    const double rem = (d.dF_dmu + m0 * m0 / (3.0 * mu * mu)) * mu * mu / (m0 * m0 * m0);
    // leading remainder coefficient of m0^3 / mu^2 is 2/3
    CHECK(rem == doctest::Approx(2.0 / 3.0).epsilon(0.05));
  }
}

TEST_CASE("coefficient diagnostics") {
  const SeriesState s = eta_k_compute(0.05, 8);
  const CoefficientDiagnostics d = coefficient_diagnostics(s);
  CHECK(d.flagged.empty());
  CHECK(d.radius_estimate >= 0.1);
  CHECK(d.gamma_bound[0] == s.nu_bivariate[0]);
  CHECK(d.gamma_bound[1] == doctest::Approx(144.0 * d.gamma_bound[0]));
  CHECK(d.alpha_bound[0] == doctest::Approx(0.05 * 0.05));
  CHECK(d.alpha_bound[1] == doctest::Approx(d.alpha_bound[0] * d.alpha_bound[0] / 0.05));
  for (int k = 1; k < 8; ++k)
    CHECK((d.nu_values[k] / std::pow(0.05, k + 2)) / (d.nu_values[k - 1] / std::pow(0.05, k + 1)) <
          10.0);
}

TEST_CASE("series argument checks") {
  CHECK_THROWS_AS(eta_k_compute(0.0, 3), Error);
  CHECK_THROWS_AS(eta_k_compute(0.5, 13), Error);
  CHECK_THROWS_AS(F_series(0.05, -1.0, 3), Error);
}

TEST_CASE("series json layout") {
  const SeriesState s = eta_k_compute(0.05, 3);
  const auto j = to_json(s, 10.0, 0.05);
  CHECK(j["K"] == 3);
  CHECK(j["per_order"].size() == 3);
  CHECK(j["per_order"][0]["k"] == 1);
  CHECK(j.contains("F_series"));
  CHECK(j.contains("F_direct"));
}
