#include <cmath>

#include "doctest.h"
#include "logopt/blocks.hpp"
#include "logopt/equilibrium.hpp"

using namespace logopt;

namespace {
Params grid(int n) {
  Params p;
  p.grid_n = n;
  return p;
}
}  // namespace

TEST_CASE("advantage vanishes on the edges of its domain") {
  for (double l : {0.5, 2.0, 7.0}) {
    CHECK(advantage(l, 0.0, grid(512)) == 0.0);
    CHECK(advantage(l, l, grid(512)) == 0.0);
  }
  CHECK_THROWS_AS(advantage(1.0, 1.5, grid(512)), Error);
  CHECK_THROWS_AS(advantage(0.0, 0.0, grid(512)), Error);
}

TEST_CASE("advantage stays between 0 and 2b") {
  for (const auto& pt : advantage_surface(0.2, 6.0, 6, 0.0, 1.0, 6, grid(256))) {
    const double b = pt.b_over_l * pt.l;
    CHECK(pt.H >= 0.0);
    CHECK(pt.H <= 2.0 * b);
  }
}

TEST_CASE("small-b law H ~ l b^2 / 3") {
  for (double l : {1.0, 2.0, 4.0}) {
    const double b = 0.01 * l;
    CHECK(advantage(l, b, grid(4096)) / (l * b * b) == doctest::Approx(1.0 / 3.0).epsilon(0.05));
  }
}

TEST_CASE("partials for small b") {
  const double l = 2.0, b = 0.02;
  const Partials d = advantage_partials(l, b, grid(4096));
  CHECK(d.dH_dl == doctest::Approx(b * b / 3.0).epsilon(0.05));
  CHECK(d.dH_db == doctest::Approx(2.0 * l * b / 3.0).epsilon(0.05));
  CHECK_THROWS_AS(advantage_partials(1.0, 0.0, grid(512)), Error);
}

TEST_CASE("superlinearity for small resource fractions") {
  CHECK(superlinearity_check(1.0, 0.02, 2.0, 0.06, grid(512)) > 0.0);
  CHECK(superlinearity_check(4.0, 0.04, 4.0, 0.2, grid(512)) > 0.0);
}

TEST_CASE("surface csv is row-major with a fixed header") {
  const auto s = advantage_surface(1.0, 2.0, 2, 0.0, 1.0, 3, grid(128));
  REQUIRE(s.size() == 6);
  CHECK(s[1].l == 1.0);
  CHECK(s[1].b_over_l == 0.5);
  CHECK(s[3].l == 2.0);
  const std::string csv = surface_csv(s);
  CHECK(csv.rfind("l,b_over_l,H\n1,0,0\n", 0) == 0);
  CHECK(csv == surface_csv(advantage_surface(1.0, 2.0, 2, 0.0, 1.0, 3, grid(128))));
}

TEST_CASE("block decomposition reproduces the population") {
  const BangBangResource m(Domain(0.0, 3.0), {{0.0, 0.2}, {1.4, 1.6}, {2.9, 3.0}});
  for (double mu : {0.5, 1.0}) {
    Params p = grid(2048);
    p.mu = mu;
    const Decomposition d = block_decompose(m, p);
    REQUIRE(d.decomposable);
    CHECK(d.config.blocks.size() == 4);
    double l = 0.0;
    for (const auto& b : d.config.blocks) l += b.l;
    CHECK(std::sqrt(mu) * l == doctest::Approx(3.0));
    const double direct = total_population(require_converged(solve(m, p)));
    CHECK(population_from_blocks(d.config, p) == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("fragmented resources are not decomposable") {
  const BangBangResource m(Domain(0.0, 4.0), {{1.0, 1.3}, {1.6, 4.0}});
  const Decomposition d = block_decompose(m, grid(1024));
  CHECK_FALSE(d.decomposable);
  CHECK(d.span_lo < d.span_hi);
}

TEST_CASE("small resource optimum is one boundary block") {
  const OptimizeResult r = optimize_small_resource(1.0, 0.05, 1.0, 2, 10, grid(256));
  CHECK(r.single_block_wins);
  CHECK(r.best.size() == 2);
  CHECK(r.best[0].blocks.size() == 1);
  CHECK(r.best[0].blocks[0].orientation != r.best[1].blocks[0].orientation);
  CHECK_FALSE(r.regime_violation);
  CHECK(r.fitted_C3 > 0.0);
  CHECK(optimize_small_resource(1.0, 0.3, 1.0, 1, 4, grid(256)).regime_violation);
  CHECK_THROWS_AS(optimize_small_resource(1.0, 0.05, 1.0, 4, 10, grid(256)), Error);
}

TEST_CASE("orientation names") {
  CHECK(to_string(Orientation::ResourceLeft) == "resource-left");
  CHECK(to_string(Orientation::ResourceRight) == "resource-right");
  const auto j = to_json(Block{2.0, 0.5, Orientation::ResourceRight});
  CHECK(j["orientation"] == "resource-right");
}
