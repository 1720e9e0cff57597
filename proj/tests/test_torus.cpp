#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modrate/error.hpp"
#include "modrate/torus.hpp"

using namespace modrate;

TEST_CASE("dyadic shifts reduce to an odd numerator in (-1/2, 1/2]") {
  const DyadicShift a(6, 4);
  CHECK(a.numerator() == 3);
  CHECK(a.scale() == 3);
  CHECK(a.value() == doctest::Approx(0.375));
  const DyadicShift b(3, 2);  // 3/4 == -1/4
  CHECK(b.value() == doctest::Approx(-0.25));
  CHECK(DyadicShift(1, 1).value() == doctest::Approx(0.5));
  CHECK(DyadicShift(4, 2).is_zero());
  CHECK(a.numerator_over(6) == 24);
}

TEST_CASE("torus points wrap") {
  CHECK(TorusPoint(1.25).value() == doctest::Approx(0.25));
  CHECK(TorusPoint(-0.25).value() == doctest::Approx(0.75));
  CHECK((TorusPoint(0.75) + TorusPoint(0.5)).value() == doctest::Approx(0.25));
}

TEST_CASE("step norms match hand sums") {
  const auto f = PeriodicFunction::step({1.0, -2.0, Complex(0, 3), 0.0});
  const double l3 = std::cbrt((1.0 + 8.0 + 27.0) / 4.0);
  const NormEstimate n = p_norm(f, 3.0);
  CHECK(n.value == doctest::Approx(l3).epsilon(1e-13));
  CHECK(n.error_radius <= 1e-9);
  CHECK(p_norm(f, 2.0).value == doctest::Approx(std::sqrt(14.0 / 4.0)));
}

TEST_CASE("refine keeps values and rejects bad cell counts") {
  const StepFunction s{{1.0, 2.0}};
  const StepFunction r = refine(s, 6);
  REQUIRE(r.values.size() == 6);
  CHECK(r.values[2] == Complex(1.0));
  CHECK(r.values[3] == Complex(2.0));
  CHECK_THROWS_AS(refine(s, 3), Error);
}

TEST_CASE("harmonic diff norm is 2|sin(pi d)| for every p") {
  const auto e = PeriodicFunction::trig(1, {{1, 1.0}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (unsigned s = 1; s <= 6; ++s) {
      const DyadicShift d(1, s);
      const double want = 2.0 * std::fabs(std::sin(std::numbers::pi * d.value()));
      const NormEstimate got = diff_norm(e, d, p);
      CHECK(std::fabs(got.value - want) <= got.error_radius + 1e-9);
    }
  }
}

TEST_CASE("step diff norm against direct cell counting") {
  // Values on 8 cells; a shift by 3/8 permutes cells exactly.
  std::vector<Complex> v{0.5, -1.0, 2.0, 0.0, 1.0, 1.0, -0.5, 3.0};
  const auto f = PeriodicFunction::step(v);
  const DyadicShift d(3, 3);
  double sum = 0.0;
  for (std::size_t j = 0; j < 8; ++j) sum += std::pow(std::abs(v[j] - v[(j + 3) % 8]), 1.5);
  CHECK(diff_norm(f, d, 1.5).value == doctest::Approx(std::pow(sum / 8.0, 1.0 / 1.5)).epsilon(1e-12));
}

TEST_CASE("trig and step distance") {
  // ||cos(2 pi t) - 0||_2 = 1/sqrt(2).
  const auto c = PeriodicFunction::trig(1, {{-1, 0.5}, {1, 0.5}});
  const auto z = PeriodicFunction::step({0.0});
  const NormEstimate d = distance(c, z, 2.0);
  CHECK(std::fabs(d.value - std::sqrt(0.5)) <= d.error_radius + 1e-12);
  // ||cos||_1 = 2/pi.
  const NormEstimate l1 = p_norm(c, 1.0);
  CHECK(std::fabs(l1.value - 2.0 / std::numbers::pi) <= l1.error_radius + 1e-12);
}

TEST_CASE("evaluate and shift agree") {
  const auto f = PeriodicFunction::trig(2, {{-2, Complex(0.25, 0.5)}, {1, 1.0}});
  const DyadicShift d(1, 3);
  const auto g = shift(f, d);
  for (double t : {0.0, 0.1, 0.6, 0.9}) {
    const Complex a = evaluate(g, TorusPoint(t));
    const Complex b = evaluate(f, TorusPoint(t + d.value()));
    CHECK(std::abs(a - b) < 1e-12);
  }
  CHECK(derivative_bound(*f.as_trig(), 1) == doctest::Approx(2.0 * std::numbers::pi * (2.0 * std::abs(Complex(0.25, 0.5)) + 1.0)));
}
