#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modrate/gallery.hpp"
#include "modrate/modulus.hpp"

using namespace modrate;

namespace {

// |A delta (A + d)| for the arc A = [a, b), by direct interval overlap.
double symmetric_difference(double a, double b, double d) {
  const auto overlap = [](double x0, double x1, double y0, double y1) {
    return std::max(0.0, std::min(x1, y1) - std::max(x0, y0));
  };
  double inter = 0.0;
  for (int w = -1; w <= 1; ++w) inter += overlap(a, b, a + d + w, b + d + w);
  return 2.0 * ((b - a) - inter);
}

unsigned least_m_modulus(double a, double b, double p, unsigned n) {
  for (unsigned m = 0; m < 60; ++m) {
    // Sup over shifts up to 2^-m; the measure is increasing up to min(len, 1 - len, 1/2).
    double worst = 0.0;
    for (int i = 0; i <= 512; ++i) {
      const double d = std::ldexp(1.0, -static_cast<int>(m)) * i / 512.0;
      worst = std::max(worst, symmetric_difference(a, b, std::min(d, 1.0)));
    }
    if (std::pow(worst, 1.0 / p) <= std::ldexp(1.0, -static_cast<int>(n)) * (1 + 1e-12)) return m;
  }
  return 99;
}

}  // namespace

TEST_CASE("indicator modulus matches direct overlap computation") {
  SearchConfig cfg;
  cfg.n_max = 6;
  const GalleryEntry e = make_example("indicator", {{"a", "1/8"}, {"b", "3/8"}});
  for (double p : {1.5, 3.0}) {
    const RateProfile mu = lp_modulus(e.function, p, cfg);
    for (unsigned n = 1; n <= 6; ++n) {
      const RateEntry* r = mu.at(n);
      REQUIRE(r != nullptr);
      if (r->kind == EntryKind::Exact) CHECK(r->m == least_m_modulus(0.125, 0.375, p, n));
    }
  }
}

TEST_CASE("harmonic shift sup is 2 sin(pi 2^-m)") {
  const auto h = PeriodicFunction::trig(1, {{1, 1.0}});
  for (unsigned m = 1; m <= 8; ++m) {
    const NormEstimate s = certified_shift_sup(h, 2.0, m);
    const double want = 2.0 * std::sin(std::numbers::pi * std::ldexp(1.0, -static_cast<int>(m)));
    CHECK(std::fabs(s.value - want) <= s.error_radius + 1e-9);
  }
}

TEST_CASE("constant has zero modulus") {
  const RateProfile mu = lp_modulus(PeriodicFunction::step({2.0}), 2.0);
  for (const RateEntry& e : mu.entries) CHECK(e.m == 0);
}

TEST_CASE("ceil_log2 and modulus conversions") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(std::uint64_t{1} << 40) == 40);
  const NatMap unary = [](std::uint64_t N) { return N * N; };  // M(N) = N^2
  const NatMap binary = unary_to_binary(unary);
  for (std::uint64_t n = 0; n < 10; ++n) CHECK(binary(n) == 2 * n);
  const NatMap back = binary_to_unary(binary);
  CHECK(back(8) == 64);
  const NatMap twice = compose_moduli(binary, binary);
  CHECK(twice(3) == 12);
}

TEST_CASE("grid sup modulus of a Lipschitz function") {
  // |t - s| <= 2^-n needs m = n for the identity on [0;1].
  const RateProfile mu = sup_modulus_on_grid([](double t) { return t; }, 16, 8);
  for (unsigned n = 0; n <= 8; ++n) CHECK(mu.at(n)->m == n);
}

TEST_CASE("grid sup modulus looks at every gap up to the width") {
  // min(t, 1 - t) has omega(d) = min(d, 1/2); the endpoints alone would give omega(1) = 0.
  const RateProfile mu = sup_modulus_on_grid([](double t) { return std::min(t, 1.0 - t); }, 14, 8);
  for (unsigned n = 0; n <= 8; ++n) {
    unsigned want = 0;
    while (std::min(std::ldexp(1.0, -static_cast<int>(want)), 0.5) > std::ldexp(1.0, -static_cast<int>(n))) ++want;
    CHECK(mu.at(n)->m == want);
  }
}
