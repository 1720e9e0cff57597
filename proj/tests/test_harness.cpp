#include <doctest.h>

#include "modrate/error.hpp"
#include "modrate/harness.hpp"

using namespace modrate;

namespace {

RateProfile profile(const std::string& kind, std::vector<unsigned> ms, EntryKind k = EntryKind::Exact) {
  RateProfile p;
  p.kind = kind;
  for (unsigned n = 0; n < ms.size(); ++n) p.entries.push_back({n, ms[n], k});
  return p;
}

}  // namespace

TEST_CASE("fits are the least constants, found by brute force") {
  ProfileSet s{profile("modulus", {0, 3, 5, 7, 9}), profile("step", {0, 1, 2, 3, 4}), profile("fourier", {0, 2, 4, 6, 8})};
  const EquivalenceReport r = fit_equivalence("toy", 2.0, s);
  // a) phi(n) <= mu(n+a) + n + b: brute force over a, b.
  for (const char* id : {"a", "b", "c", "d"}) {
    const FittedConstant* f = r.fit(id);
    REQUIRE(f != nullptr);
    CHECK(f->status == "fit");
  }
  const auto& mu = s.mu.entries;
  const auto& phi = s.phi.entries;
  unsigned best_b = 99;
  for (unsigned b = 0; b < 20 && best_b == 99; ++b) {
    bool ok = true;
    for (unsigned n = 0; n < 5; ++n) ok = ok && phi[n].m <= mu[n].m + n + b;
    if (ok) best_b = b;
  }
  CHECK(r.fit("a")->a == 0);
  CHECK(r.fit("a")->b == best_b);
  CHECK(r.pass());
}

TEST_CASE("caps turn an unfittable inequality into a violation") {
  // Long enough that every shift a <= 8 still leaves pairs with a large phi.
  std::vector<unsigned> zero(12, 0), steep;
  for (unsigned n = 0; n < 12; ++n) steep.push_back(30 * n);
  ProfileSet s{profile("modulus", zero), profile("step", zero), profile("fourier", steep)};
  const EquivalenceReport r = fit_equivalence("bad", 2.0, s);
  CHECK(r.fit("a")->status == "violation");
  CHECK_FALSE(r.pass());
}

TEST_CASE("upper bounds on the left give no pairs") {
  ProfileSet s{profile("modulus", {1, 2}, EntryKind::UpperBound), profile("step", {1, 2}, EntryKind::UpperBound),
               profile("fourier", {1, 2}, EntryKind::UpperBound)};
  CHECK_THROWS_AS(fit_equivalence("none", 2.0, s), Error);
}

TEST_CASE("pooled fit covers every report") {
  ProfileSet s1{profile("modulus", {0, 1, 2}), profile("step", {0, 1, 2}), profile("fourier", {0, 1, 2})};
  ProfileSet s2{profile("modulus", {0, 1, 2}), profile("step", {0, 3, 5}), profile("fourier", {0, 1, 2})};
  const auto r1 = fit_equivalence("one", 2.0, s1);
  const auto r2 = fit_equivalence("two", 2.0, s2);
  const auto pooled = fit_pooled({r1, r2});
  for (const auto& f : pooled) {
    if (f.inequality != "c") continue;
    CHECK(f.b >= r2.fit("c")->b);
    CHECK(f.b >= r1.fit("c")->b);
  }
}

TEST_CASE("seed splitting is deterministic and spreads") {
  CHECK(split_seed(1, 2, 3) == split_seed(1, 2, 3));
  CHECK(split_seed(1, 2, 3) != split_seed(1, 2, 4));
  CHECK(split_seed(1, 2, 3) != split_seed(1, 3, 3));
}

TEST_CASE("suites are reproducible and clean at small size") {
  const auto a = inequality_suite(9, 200, 1);
  const auto b = inequality_suite(9, 200, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pass);
    CHECK(a[i].max_relative_violation == b[i].max_relative_violation);
  }
  for (const auto& r : jackson_markov_suite(9, 50)) CHECK(r.pass);
}

TEST_CASE("scaling on an indicator") {
  SearchConfig cfg;
  cfg.n_max = 5;
  const ScalingReport r = verify_scaling(make_example("indicator"), 2, 2.0, cfg);
  CHECK(r.compared > 0);
  CHECK(r.pass());
}
