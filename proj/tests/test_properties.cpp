#include <doctest.h>

#include <cmath>
#include <random>

#include "modrate/entropy.hpp"
#include "modrate/fourier.hpp"
#include "modrate/gallery.hpp"
#include "modrate/harness.hpp"
#include "modrate/modulus.hpp"
#include "modrate/schauder.hpp"
#include "modrate/step.hpp"

using namespace modrate;

TEST_CASE("trig b-rate is the Fourier rate shifted by one index") {
  SearchConfig cfg;
  cfg.n_max = 6;
  for (const auto& [name, params] : std::vector<std::pair<std::string, ParamMap>>{{"harmonic", {{"k", "3"}}},
                                                                                   {"lacunary", {{"J", "12"}}}}) {
    const PeriodicFunction f = make_example(name, params).function;
    const RateProfile phi = fourier_rate(f, 2.0, cfg);
    const RateProfile beta = b_rate(f, trig_basis(2.0), cfg);
    for (unsigned n = 0; n <= 6; ++n) {
      // 2^m basis elements reach frequency 2^(m-1), so beta = phi + 1 unless phi = 0 and f is constant.
      const unsigned p = phi.at(n)->m;
      const unsigned b = beta.at(n)->m;
      CHECK(b <= p + 1);
      CHECK(b + 1 >= p + 1);
    }
  }
}

TEST_CASE("cell means are within 2^(1/p) of the shift sup") {
  for (const char* name : {"indicator", "sawtooth"}) {
    const PeriodicFunction f = make_example(name).function;
    for (double p : {1.5, 2.0, 3.0}) {
      for (unsigned m = 1; m <= 5; ++m) {
        const auto proj = step_project(f, std::size_t{1} << m, p);
        const NormEstimate sup = certified_shift_sup(f, p, m);
        CHECK(proj.error.lower() <= std::pow(2.0, 1.0 / p) * sup.upper() * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("modulus of a K-step function is at most 2^p K delta ||g||^p") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 5);
    std::vector<Complex> v(std::size_t{1} << k);
    for (auto& c : v) c = Complex(u(rng), u(rng)) * 0.7;
    const auto g = PeriodicFunction::step(v);
    const double p = 1.25 + 2.0 * (u(rng) + 1.0) / 2.0;
    const double norm_p = std::pow(p_norm(g, p).value, p);
    for (unsigned s = k; s <= k + 3; ++s) {
      const DyadicShift d(1, s);
      const double lhs = std::pow(diff_norm(g, d, p).value, p);
      const double rhs = std::pow(2.0, p) * static_cast<double>(v.size()) * d.value() * norm_p;
      CHECK(lhs <= rhs * (1 + 1e-9));
    }
  }
}

TEST_CASE("covering numbers: sandwich and monotone in n") {
  for (unsigned mu = 0; mu <= 2; ++mu) {
    std::uint64_t prev = 0;
    for (unsigned n = 0; n <= 3; ++n) {
      ClassSpec s;
      s.kind = GridPathClass{mu, 0};
      if (mu == 2 && n == 3) break;
      const CoverResult c = covering_number(s, n);
      CHECK(c.eta <= ceil_log2(path_count_bound(mu, 0, n)));
      CHECK(c.count >= prev);
      prev = c.count;
    }
  }
}

TEST_CASE("Dirichlet constant is 1 at p=2") {
  const DirichletEstimate d = dirichlet_constant(equivalence_corpus(), 2.0, 4);
  CHECK(d.estimate <= 1.0 + 1e-6);
  CHECK(d.estimate >= 1.0 - 1e-6);
}

TEST_CASE("rate operations reject p = 1") {
  CHECK_THROWS(lp_modulus(make_example("indicator").function, 1.0));
  CHECK_NOTHROW(p_norm(make_example("indicator").function, 1.0));
}
