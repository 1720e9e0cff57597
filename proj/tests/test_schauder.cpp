#include <doctest.h>

#include <cmath>

#include "modrate/schauder.hpp"

using namespace modrate;

TEST_CASE("trig basis ordering") {
  const std::int64_t want[] = {0, 1, -1, 2, -2, 3, -3};
  for (std::size_t k = 0; k < 7; ++k) CHECK(trig_basis_frequency(k) == want[k]);
}

TEST_CASE("chebyshev coefficients of x^2 on [0;1]") {
  // x = (y + 1)/2, x^2 = 3/8 T0 + 1/2 T1 + 1/8 T2.
  const auto a = chebyshev_coefficients([](double x) { return x * x; }, 6);
  REQUIRE(a.size() >= 3);
  CHECK(a[0] == doctest::Approx(0.375));
  CHECK(a[1] == doctest::Approx(0.5));
  CHECK(a[2] == doctest::Approx(0.125));
  for (std::size_t j = 3; j < a.size(); ++j) CHECK(std::fabs(a[j]) < 1e-13);
}

TEST_CASE("degree rate of a quadratic is at most 1") {
  SearchConfig cfg;
  cfg.n_max = 6;
  const RateProfile r = weierstrass_degree_rate([](double x) { return x * x; }, cfg);
  for (const RateEntry& e : r.entries) CHECK(e.m <= 1);
}

TEST_CASE("haar basis reproduces a dyadic step function") {
  SearchConfig cfg;
  cfg.n_max = 4;
  // Constant plus one wavelet spans steps on two half cells.
  const auto f = PeriodicFunction::step({1.0, 0.0});
  const NormEstimate d = basis_distance(f, haar_basis(2.0), 2, cfg);
  CHECK(d.upper() < 1e-12);
  const NormEstimate d1 = basis_distance(f, haar_basis(2.0), 1, cfg);
  CHECK(d1.value == doctest::Approx(0.5));
}

TEST_CASE("designated first element") {
  const auto f0 = PeriodicFunction::trig(3, {{3, 1.0}});
  const Basis b = designated_first(f0, trig_basis(2.0));
  const NormEstimate d = basis_distance(f0, b, 1);
  CHECK(d.upper() < 1e-12);
}
