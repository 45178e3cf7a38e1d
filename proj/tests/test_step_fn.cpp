#include <cmath>
#include <vector>

#include "doctest.h"
#include "varlp/errors.hpp"
#include "varlp/step_fn.hpp"

using varlp::IntervalUnion;
using varlp::SampledFn;
using varlp::StepFn;

TEST_CASE("constructor validates the grid") {
  CHECK_THROWS_AS(StepFn({0.0, 0.5}, {1.0}), varlp::validation_error);         // must end at 1
  CHECK_THROWS_AS(StepFn({0.1, 1.0}, {1.0}), varlp::validation_error);         // must start at 0
  CHECK_THROWS_AS(StepFn({0.0, 0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}), varlp::validation_error);
  CHECK_THROWS_AS(StepFn({0.0, 1.0}, {1.0, 2.0}), varlp::validation_error);    // length mismatch
}

TEST_CASE("half-open cells with a closed final cell") {
  StepFn f({0.0, 0.5, 1.0}, {1.0, 2.0});
  CHECK(f.value_at(0.0) == 1.0);
  CHECK(f.value_at(0.4999) == 1.0);
  CHECK(f.value_at(0.5) == 2.0);
  CHECK(f.value_at(1.0) == 2.0);
  CHECK(f.cells() == 2);
  CHECK(f.cell_length(0) == 0.5);
}

TEST_CASE("extrema and jump points skip no-op breakpoints") {
  StepFn f({0.0, 0.25, 0.5, 1.0}, {3.0, 3.0, -4.0});
  CHECK(f.max_abs() == 4.0);
  CHECK(f.min_value() == -4.0);
  CHECK(f.max_value() == 3.0);
  std::vector<double> jumps = f.jump_points();
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0] == 0.5);
}

TEST_CASE("refined keeps values and adds cuts") {
  StepFn f({0.0, 0.5, 1.0}, {1.0, 2.0});
  StepFn g = f.refined({0.25, 0.75, -1.0, 2.0});
  CHECK(g.cells() == 4);
  for (double t : {0.1, 0.3, 0.6, 0.9}) CHECK(g.value_at(t) == f.value_at(t));
}

TEST_CASE("combine works on the common refinement") {
  StepFn a({0.0, 0.5, 1.0}, {1.0, 2.0});
  StepFn b({0.0, 0.25, 1.0}, {10.0, 20.0});
  StepFn sum = StepFn::combine(a, b, [](double x, double y) { return x + y; });
  CHECK(sum.value_at(0.1) == 11.0);
  CHECK(sum.value_at(0.3) == 21.0);
  CHECK(sum.value_at(0.7) == 22.0);
}

TEST_CASE("map applies pointwise") {
  StepFn f({0.0, 0.5, 1.0}, {-1.0, 2.0});
  StepFn g = f.map([](double v) { return v * v; });
  CHECK(g.value_at(0.1) == 1.0);
  CHECK(g.value_at(0.9) == 4.0);
}

TEST_CASE("restrict_to zeroes outside the set") {
  StepFn f = StepFn::constant(3.0);
  IntervalUnion c({{0.25, 0.5}});
  StepFn g = f.restrict_to(c);
  CHECK(g.value_at(0.1) == 0.0);
  CHECK(g.value_at(0.3) == 3.0);
  CHECK(g.value_at(0.9) == 0.0);
}

TEST_CASE("constant_on reports the witness value") {
  StepFn f({0.0, 0.5, 1.0}, {1.0, 2.0});
  double v = 0.0;
  CHECK(f.constant_on(IntervalUnion({{0.1, 0.4}}), &v));
  CHECK(v == 1.0);
  CHECK(!f.constant_on(IntervalUnion({{0.4, 0.6}})));
  // Measure-zero overlap cannot witness a change.
  CHECK(f.constant_on(IntervalUnion({{0.0, 0.5}}), &v));
}

TEST_CASE("integrate and power_integral are exact finite sums") {
  StepFn f({0.0, 0.25, 1.0}, {2.0, -3.0});
  IntervalUnion unit = IntervalUnion::unit();
  CHECK(varlp::integrate(f, unit) == doctest::Approx(2.0 * 0.25 - 3.0 * 0.75).epsilon(1e-15));
  CHECK(varlp::power_integral(f, 2.0, unit) ==
        doctest::Approx(4.0 * 0.25 + 9.0 * 0.75).epsilon(1e-15));
  IntervalUnion half({{0.0, 0.25}});
  CHECK(varlp::integrate(f, half) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sampling staircase is exact on aligned grids") {
  StepFn f({0.0, 0.25, 1.0}, {1.0, 5.0});
  SampledFn s = SampledFn::from_step(f, 8);
  StepFn back = s.to_step();
  for (int i = 0; i < 16; ++i) {
    double t = (i + 0.5) / 16.0;
    CHECK(back.value_at(t) == f.value_at(t));
  }
}

TEST_CASE("sampling a smooth function takes midpoint values") {
  SampledFn s = SampledFn::from_function([](double t) { return t; }, 4);
  REQUIRE(s.midpoint_values.size() == 4);
  CHECK(s.midpoint_values[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(s.midpoint_values[3] == doctest::Approx(0.875).epsilon(1e-15));
}
