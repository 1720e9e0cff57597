#include <doctest.h>

#include <cmath>

#include "modrate/fourier.hpp"
#include "modrate/multidim.hpp"

using namespace modrate;

TEST_CASE("tensor of steps refines to a common grid") {
  const auto f = PeriodicFunction2D::tensor(PeriodicFunction::step({1.0, 0.0}), PeriodicFunction::step({1.0, 2.0, 3.0, 4.0}));
  const Step2D* s = f.as_step();
  REQUIRE(s != nullptr);
  REQUIRE(s->K == 4);
  CHECK(s->values[0 * 4 + 3] == Complex(4.0));
  CHECK(s->values[3 * 4 + 1] == Complex(0.0));
}

TEST_CASE("2-D coefficients of a tensor are products") {
  const auto g = PeriodicFunction::step({1.0, 0.0});
  const auto h = PeriodicFunction::step({2.0, -1.0, 0.5, 0.0});
  const Trig2D c = fourier_coeffs_2d(PeriodicFunction2D::tensor(g, h), 5);
  const CoeffVector cg = fourier_coeffs(g, 5);
  const CoeffVector ch = fourier_coeffs(h, 5);
  for (std::int64_t k1 = -5; k1 <= 5; ++k1)
    for (std::int64_t k2 = -5; k2 <= 5; ++k2) CHECK(std::abs(c.at(k1, k2) - cg.at(k1) * ch.at(k2)) < 1e-12);
}

TEST_CASE("shift sup of a tensor with a constant factor") {
  // f(x, y) = chi(x): the sup is attained by shifting x alone, sqrt(2 d).
  const auto f = PeriodicFunction2D::tensor(PeriodicFunction::step({1.0, 0.0}), PeriodicFunction::step({1.0}));
  for (unsigned m = 1; m <= 5; ++m) {
    const NormEstimate s = shift_sup_2d(f, 2.0, m);
    CHECK(std::fabs(s.value - std::sqrt(2.0 * std::ldexp(1.0, -static_cast<int>(m)))) <= s.error_radius + 1e-12);
  }
}

TEST_CASE("2-D step error on a product of independent cells") {
  // Values a_i b_j on 2x2 cells, approximated by one constant: error is the L2 deviation.
  const auto f = PeriodicFunction2D::step(2, {1.0, 2.0, 3.0, 4.0});
  const NormEstimate e = best_step_error_2d(f, 2.0, 0);
  const double mean = 2.5;
  double var = 0.0;
  for (double v : {1.0, 2.0, 3.0, 4.0}) var += (v - mean) * (v - mean);
  CHECK(e.value == doctest::Approx(std::sqrt(var / 4.0)));
  CHECK(best_step_error_2d(f, 2.0, 1).value < 1e-14);
}

TEST_CASE("trig 2-D step rate is rejected") {
  const auto f = PeriodicFunction2D::trig(0, {1.0});
  CHECK_THROWS(step_rate_2d(f, 2.0));
}
