#include "doctest.h"
#include "logopt/model.hpp"

using namespace logopt;

TEST_CASE("domain rejects reversed endpoints") {
  CHECK_THROWS_AS(Domain(1.0, 1.0), Error);
  try {
    Domain(2.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDomain);
  }
}

TEST_CASE("validate sorts and merges touching intervals") {
  const BangBangResource m(Domain(0.0, 2.0), {{1.0, 1.5}, {0.2, 0.5}, {0.5, 0.7}});
  const ValidResource v = validate(m);
  REQUIRE(v.resource.intervals().size() == 2);
  CHECK(v.resource.intervals()[0] == Interval{0.2, 0.7});
  CHECK(v.mass == doctest::Approx(1.0));
  CHECK(v.m0 == doctest::Approx(0.5));
}

TEST_CASE("validate errors") {
  auto code = [](const BangBangResource& m) {
    try {
      validate(m);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Config;
  };
  const Domain d(0.0, 1.0);
  CHECK(code(BangBangResource(d, {{0.1, 0.5}, {0.4, 0.6}})) == ErrorCode::OverlappingIntervals);
  CHECK(code(BangBangResource(d, {{0.5, 1.5}})) == ErrorCode::IntervalOutOfDomain);
  CHECK(code(BangBangResource(d, {})) == ErrorCode::EmptyResource);
  CHECK(code(BangBangResource(d, {{0.0, 1.0}})) == ErrorCode::FullResource);
  CHECK(validate(BangBangResource(d, {{0.0, 1.0}}), true).full);
}

TEST_CASE("evaluate and mirror") {
  const BangBangResource m(Domain(0.0, 1.0), {{0.2, 0.4}});
  CHECK(m.evaluate(0.2) == 1);
  CHECK(m.evaluate(0.3) == 1);
  CHECK(m.evaluate(0.5) == 0);
  CHECK_THROWS_AS(m.evaluate(1.5), Error);
  const BangBangResource r = m.mirrored();
  CHECK(r.intervals()[0].left == doctest::Approx(0.6));
  CHECK(r.intervals()[0].right == doctest::Approx(0.8));
  CHECK(m.mass_in(0.3, 1.0) == doctest::Approx(0.1));
}

TEST_CASE("rescale and unscale are inverse") {
  const BangBangResource m(Domain(0.0, 2.0), {{0.5, 1.0}});
  const BangBangResource r = rescale(m, 4.0);
  CHECK(r.domain().b() == doctest::Approx(1.0));
  CHECK(r.intervals()[0].left == doctest::Approx(0.25));
  const BangBangResource u = unscale(r, 4.0);
  CHECK(u.intervals()[0].right == doctest::Approx(1.0));
  CHECK_THROWS_AS(rescale(m, 0.0), Error);
  CHECK(rescale(m, 1.0) == m);
}

TEST_CASE("piecewise constant resource tiles the domain") {
  const BangBangResource m(Domain(0.0, 1.0), {{0.25, 0.5}});
  const auto p = PiecewiseConstantResource::from(m);
  REQUIRE(p.segments().size() == 3);
  CHECK(p.mass() == doctest::Approx(0.25));
  CHECK(p.is_bang_bang());
  CHECK(p.integral(0.0, 0.3) == doctest::Approx(0.05));
  CHECK(p.level_set_measure(0.0) == doctest::Approx(0.75));
  const auto q = p.mirrored();
  CHECK(q.segments()[1].left == doctest::Approx(0.5));
  CHECK(q.segments()[1].right == doctest::Approx(0.75));
  const auto s = p.scaled(2.0);
  CHECK(s.domain().b() == 2.0);
  CHECK(s.mass() == doctest::Approx(0.5));
  CHECK_THROWS_AS(PiecewiseConstantResource(Domain(0.0, 1.0), {{0.0, 0.4, 1.0}, {0.5, 1.0, 0.0}}),
                  Error);
  CHECK_FALSE(PiecewiseConstantResource::constant(Domain(0.0, 1.0), 0.3).is_bang_bang());
}

TEST_CASE("params validation") {
  Params p;
  CHECK_NOTHROW(validate(p));
  p.grid_n = 100;
  CHECK_THROWS_AS(validate(p), Error);
  p.grid_n = 512;
  p.mu = -1.0;
  CHECK_THROWS_AS(validate(p), Error);
}

TEST_CASE("resource json round trip") {
  const BangBangResource m(Domain(0.0, 3.0), {{0.5, 1.0}, {2.0, 2.5}});
  CHECK(resource_from_json(to_json(m)) == m);
  const auto bad = nlohmann::json::parse(R"({"domain": [0, 1], "intervals": [[0, "a"]]})");
  try {
    resource_from_json(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    CHECK(std::string(e.what()).find("intervals[0]") != std::string::npos);
  }
}

TEST_CASE("grid function interpolation") {
  const GridFunction g(Domain(0.0, 1.0), {0.0, 1.0, 4.0});
  CHECK(g.h == 0.5);
  CHECK(g.at(0.25) == doctest::Approx(0.5));
  CHECK(g.at(0.75) == doctest::Approx(2.5));
  CHECK(g.at(-1.0) == 0.0);
  CHECK(g.at(2.0) == 4.0);
}
