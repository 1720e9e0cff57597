#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "modrate/gallery.hpp"
#include "modrate/step.hpp"

using namespace modrate;

TEST_CASE("cell minimum: mean for p=2, median for p=1") {
  const Complex v[] = {1.0, 2.0, 9.0};
  const auto two = detail::minimize_cell(v, 3, 2.0);
  CHECK(std::abs(two.c - Complex(4.0)) < 1e-9);
  const double var = (9.0 + 4.0 + 25.0) / 3.0;
  CHECK(two.upper == doctest::Approx(var).epsilon(1e-9));
  CHECK(two.lower <= two.upper);
  const auto one = detail::minimize_cell(v, 3, 1.0);
  CHECK(one.upper == doctest::Approx((1.0 + 0.0 + 7.0) / 3.0).epsilon(1e-6));
}

TEST_CASE("two-value cell against the closed form t(1-t)/(t^q+(1-t)^q)^(p-1)") {
  for (double p : {1.5, 3.0}) {
    for (int ones = 1; ones <= 3; ++ones) {
      std::vector<Complex> v(4, 0.0);
      for (int i = 0; i < ones; ++i) v[static_cast<std::size_t>(i)] = 1.0;
      const double t = ones / 4.0;
      const double q = 1.0 / (p - 1.0);
      const double want = t * (1 - t) / std::pow(std::pow(t, q) + std::pow(1 - t, q), p - 1.0);
      const auto r = detail::minimize_cell(v.data(), 4, p);
      CHECK(r.lower <= want * (1 + 1e-9));
      CHECK(r.upper >= want * (1 - 1e-9));
      CHECK(r.upper == doctest::Approx(want).epsilon(1e-7));
    }
  }
}

TEST_CASE("step projection of a step function on a coarser grid") {
  const auto f = PeriodicFunction::step({1.0, 3.0, 0.0, 0.0});
  const StepApproxResult r = step_project(f, 2, 2.0);
  REQUIRE(r.approximant.cell_values() != nullptr);
  CHECK(std::abs((*r.approximant.cell_values())[0] - Complex(2.0)) < 1e-14);
  CHECK(r.error.value == doctest::Approx(std::sqrt(2.0 / 4.0)));
}

TEST_CASE("indicator step rate at p=2") {
  SearchConfig cfg;
  cfg.n_max = 5;
  const RateProfile s = step_rate(make_example("indicator", {{"a", "1/8"}, {"b", "3/8"}}).function, 2.0, cfg);
  // Best L2 error on 2^m cells: sqrt(mean of t(1-t)) with t the covered fraction of each cell.
  const auto err = [](unsigned m) {
    const double K = std::ldexp(1.0, static_cast<int>(m));
    double sum = 0.0;
    for (int j = 0; j < static_cast<int>(K); ++j) {
      const double t = std::max(0.0, std::min(0.375, (j + 1) / K) - std::max(0.125, j / K)) * K;
      sum += t * (1.0 - t);
    }
    return std::sqrt(sum / K);
  };
  for (unsigned n = 0; n <= 5; ++n) {
    unsigned want = 0;
    while (err(want) > std::ldexp(1.0, -static_cast<int>(n))) ++want;
    CHECK(s.at(n)->m == want);
  }
}
