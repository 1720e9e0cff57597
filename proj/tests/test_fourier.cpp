#include <doctest.h>

#include <cmath>
#include <numbers>

#include "modrate/fourier.hpp"
#include "modrate/gallery.hpp"

using namespace modrate;
constexpr double kPi = std::numbers::pi;

TEST_CASE("indicator coefficients match the closed form") {
  const auto f = PeriodicFunction::step({1.0, 0.0});
  const CoeffVector c = fourier_coeffs(f, 9);
  CHECK(std::abs(c.at(0) - Complex(0.5)) < 1e-14);
  for (std::int64_t k = 1; k <= 9; ++k) {
    // integral_0^{1/2} e^{-2 pi i k t} dt
    const Complex want = (1.0 - std::exp(Complex(0, -kPi * static_cast<double>(k)))) / Complex(0, 2 * kPi * static_cast<double>(k));
    CHECK(std::abs(c.at(k) - want) <= c.error + 1e-13);
    CHECK(std::abs(c.at(-k) - std::conj(want)) <= c.error + 1e-13);
  }
}

TEST_CASE("kernels at zero") {
  CHECK(kernel_eval({KernelSpec::Kind::Dirichlet, 5}, TorusPoint(0.0)) == doctest::Approx(11.0));
  CHECK(kernel_eval({KernelSpec::Kind::Fejer, 5}, TorusPoint(0.0)) == doctest::Approx(6.0));
  // Dirichlet kernel D_K(t) = sin((2K+1) pi t) / sin(pi t).
  const double t = 0.13;
  CHECK(kernel_eval({KernelSpec::Kind::Dirichlet, 4}, TorusPoint(t)) ==
        doctest::Approx(std::sin(9 * kPi * t) / std::sin(kPi * t)));
}

TEST_CASE("partial sums and Fejer means of a trig polynomial") {
  const auto f = PeriodicFunction::trig(3, {{-3, 1.0}, {1, 2.0}, {3, 1.0}});
  const auto s = partial_sum(f, 1);
  REQUIRE(s.as_trig() != nullptr);
  CHECK(s.as_trig()->coefficient(1) == Complex(2.0));
  CHECK(s.as_trig()->coefficient(3) == Complex(0.0));
  const auto m = fejer_mean(f, 3);
  CHECK(std::abs(m.as_trig()->coefficient(1) - Complex(2.0 * 3.0 / 4.0)) < 1e-14);
}

TEST_CASE("sawtooth L2 Fourier residual equals the Parseval tail") {
  const GalleryEntry e = make_example("sawtooth");
  for (unsigned m = 0; m <= 5; ++m) {
    const double K = std::ldexp(1.0, static_cast<int>(m));
    // sum_{|k| > K} 1/(2 pi k)^2 = (1/(2 pi^2)) (pi^2/6 - H2(K)).
    double partial = 0.0;
    for (int k = 1; k <= static_cast<int>(K); ++k) partial += 1.0 / (static_cast<double>(k) * k);
    const double want = std::sqrt((kPi * kPi / 6.0 - partial) / (2.0 * kPi * kPi));
    const NormEstimate r = fourier_residual(e.function, 2.0, m);
    CHECK(std::fabs(r.value - want) <= r.error_radius + 1e-7);
  }
}

TEST_CASE("lacunary rate grows linearly") {
  SearchConfig cfg;
  cfg.n_max = 6;
  const RateProfile phi = fourier_rate(make_example("lacunary", {{"J", "24"}}).function, 2.0, cfg);
  for (unsigned n = 1; n <= 6; ++n) CHECK(phi.at(n)->m == n);
}
