#include <doctest.h>

#include <cmath>

#include "modrate/error.hpp"
#include "modrate/gallery.hpp"
#include "modrate/torus.hpp"

using namespace modrate;

TEST_CASE("listing is stable and complete") {
  const auto a = list_examples();
  const auto b = list_examples();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].name == b[i].name);
  const auto has = [&](const std::string& n) {
    for (const auto& e : a)
      if (e.name == n) return true;
    return false;
  };
  CHECK(has("lacunary"));
  CHECK(has("log_h"));
  CHECK(has("chebyshev_poly"));
  CHECK(a.size() == 11);
}

TEST_CASE("errors") {
  const auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code([] { make_example("nosuch"); }) == ErrorCode::UnknownExample);
  CHECK(code([] { make_example("indicator", {{"a", "1/3"}}); }) == ErrorCode::NonDyadicBreakpoint);
  CHECK(code([] { make_example("holder", {{"alpha", "2"}}); }) == ErrorCode::InvalidArgument);
  CHECK(code([] { make_example("harmonic", {{"q", "1"}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("rationals") {
  CHECK(Rational::parse("3/2") == Rational{3, 2});
  CHECK(Rational::parse("6/4") == Rational{3, 2});
  CHECK(Rational::parse("0.125") == Rational{1, 8});
  CHECK(Rational::parse("-2") == Rational{-2, 1});
  CHECK(Rational::parse("3/8").dyadic_scale() == 3u);
  CHECK_FALSE(Rational::parse("1/3").dyadic_scale().has_value());
  CHECK_THROWS_AS(Rational::parse("x"), Error);
}

TEST_CASE("log_h endpoints and monotonicity") {
  CHECK(log_h(0.0) == 0.0);
  CHECK(log_h(1.0) == doctest::Approx(1.0));
  CHECK(log_h(std::exp(-1.0)) == doctest::Approx(0.5));
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = log_h(i / 100.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("lacunary norm stays below 2") {
  const GalleryEntry e = make_example("lacunary", {{"J", "24"}});
  double s = 0.0;
  for (int k = 0; k <= 24; ++k) s += std::ldexp(1.0, -2 * k);
  const NormEstimate n = p_norm(e.function, 2.0);
  CHECK(n.value == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
  CHECK(n.upper() < 2.0);
  CHECK(e.has_flag("fourier_rate_linear_not_exponential"));
}

TEST_CASE("indicator cells") {
  const GalleryEntry e = make_example("indicator", {{"a", "1/8"}, {"b", "3/8"}});
  const auto* v = e.function.cell_values();
  REQUIRE(v != nullptr);
  REQUIRE(v->size() == 8);
  CHECK((*v)[0] == Complex(0.0));
  CHECK((*v)[1] == Complex(1.0));
  CHECK((*v)[2] == Complex(1.0));
  CHECK((*v)[3] == Complex(0.0));
  CHECK(e.interval(0.2) == 1.0);
  CHECK(e.interval(0.4) == 0.0);
}
