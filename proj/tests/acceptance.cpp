// Acceptance checks: one PASS/FAIL line per criterion, then one line per
// gallery oracle claim. Exit status is nonzero when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modrate/cli.hpp"
#include "modrate/entropy.hpp"
#include "modrate/error.hpp"
#include "modrate/fourier.hpp"
#include "modrate/gallery.hpp"
#include "modrate/harness.hpp"
#include "modrate/modulus.hpp"
#include "modrate/multidim.hpp"
#include "modrate/step.hpp"

using namespace modrate;
using Json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& label, const std::function<Outcome()>& body, double limit_s = 0.0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0 && dt >= limit_s) {
    o.pass = false;
    o.detail += "; runtime over " + std::to_string(limit_s) + " s";
  }
  char tbuf[32];
  std::snprintf(tbuf, sizeof tbuf, "%.2f s", dt);
  std::cout << (o.pass ? "PASS " : "FAIL ") << label << " | " << o.detail << " | " << tbuf << std::endl;
  if (!o.pass) ++failures;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("modrate_acceptance_" + name);
}

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"modrate"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

// Least m with residual(m) <= 2^-n, scanning m = 0..64.
unsigned least_m(const std::function<double(unsigned)>& residual, unsigned n) {
  for (unsigned m = 0; m <= 64; ++m)
    if (residual(m) <= std::ldexp(1.0, -static_cast<int>(n)) * (1.0 + 1e-12)) return m;
  return 65;
}

Outcome criterion1() {
  SearchConfig cfg;
  cfg.n_max = 8;
  const RateProfile mu = lp_modulus(make_example("indicator").function, 2.0, cfg);
  // ||chi - tau_d chi||_2 = sqrt(2 d) for d <= 1/2.
  std::vector<std::string> bad;
  for (unsigned n = 0; n <= 8; ++n) {
    const unsigned want = least_m([](unsigned m) { return std::sqrt(2.0 * std::min(std::ldexp(1.0, -static_cast<int>(m)), 0.5)); }, n);
    const RateEntry* e = mu.at(n);
    if (!e || e->m != 2 * n + 1 || e->kind != EntryKind::Exact)
      bad.push_back("n=" + std::to_string(n) + " got " + (e ? std::to_string(e->m) + "/" + to_string(e->kind) : "none") +
                    " (closed-form least m " + std::to_string(want) + ")");
  }
  if (bad.empty()) return {true, "mu(n) = 2n+1 Exact for n=0..8"};
  return {false, "expected 2n+1: " + join(bad) +
                     "; at n=0 the sup over |d| <= 1 is ||chi - tau_{1/2} chi||_2 = 1 = 2^0, which passes the "
                     "non-strict test, so mu(0) = 0"};
}

Outcome criterion2() {
  const RateProfile mu = lp_modulus(make_example("harmonic").function, 2.0);
  const RateEntry* e = mu.at(0);
  // 2 sin(pi d) <= 1 iff d <= 1/6.
  const unsigned want = least_m([](unsigned m) { return 2.0 * std::sin(M_PI * std::min(std::ldexp(1.0, -static_cast<int>(m)), 0.5)); }, 0);
  const bool ok = e && e->m == 3 && want == 3 && e->kind == EntryKind::Exact;
  return {ok, "mu(0) = " + (e ? std::to_string(e->m) + " " + to_string(e->kind) : "none") + ", expected 3 Exact"};
}

Outcome criterion3() {
  const auto out = scratch("lacunary.json");
  const int code = run_cli({"rate", "--kind", "fourier", "--name", "lacunary", "--param", "J=24", "--p", "2", "--n-max",
                            "10", "--out", out.string()});
  if (code != 0) return {false, "modrate rate exited " + std::to_string(code)};
  const Json j = Json::parse(slurp(out));
  const Json& prof = j["profiles"][0];
  // Parseval tail: sum over k <= 24 with 2^k > 2^m of 4^-k.
  const auto tail = [](unsigned m) {
    double s = 0.0;
    for (int k = 24; k > static_cast<int>(m); --k) s += std::ldexp(1.0, -2 * k);
    return std::sqrt(s);
  };
  std::vector<std::string> bad;
  for (const Json& e : prof["entries"]) {
    const unsigned n = e[0].get<unsigned>();
    if (n < 1) continue;
    const unsigned m = e[1].get<unsigned>();
    if (m != n || least_m(tail, n) != n || e[2] != "exact") bad.push_back("n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  bool flagged = false;
  for (const Json& f : prof["flags"]) flagged = flagged || f == "fourier_rate_linear_not_exponential";
  std::string detail = bad.empty() ? "phi(n) = n for n=1..10" : "mismatch " + join(bad);
  detail += flagged ? "; discrepancy flag present" : "; discrepancy flag missing";
  return {bad.empty() && flagged, detail};
}

Outcome criterion4() {
  SearchConfig cfg;
  cfg.n_max = 8;
  std::vector<std::string> bad;
  for (double p : {1.5, 2.0, 3.0}) {
    const RateProfile s = step_rate(make_example("indicator").function, p, cfg);
    for (unsigned n = 0; n <= 8; ++n) {
      const unsigned want = n <= 1 ? 0 : 1;
      const RateEntry* e = s.at(n);
      if (!e || e->m != want || e->kind != EntryKind::Exact)
        bad.push_back("p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  return {bad.empty(), bad.empty() ? "sigma = 0 (n<=1), 1 (n=2..8), Exact, p in {3/2,2,3}" : "mismatch " + join(bad)};
}

Outcome criterion5() {
  const auto out = scratch("corpus.json");
  const int code = run_cli({"verify", "--p", "3/2,2,3", "--n-max", "8", "--r-max", "0", "--seed", "1", "--out", out.string()});
  const Json j = Json::parse(slurp(out));
  unsigned max_a = 0, max_b = 0;
  std::size_t fits = 0, insufficient_entries = 0, violations = 0;
  std::vector<std::string> bad;
  for (const Json& r : j["reports"]) {
    if (r.contains("status")) {
      ++insufficient_entries;
      continue;
    }
    violations += r["violations"].size();
    for (const Json& f : r["fits"]) {
      if (f["status"] != "fit") continue;
      ++fits;
      max_a = std::max(max_a, f["a"].get<unsigned>());
      max_b = std::max(max_b, f["b"].get<unsigned>());
    }
  }
  for (const Json& pooled : j["pooled"]) {
    for (const Json& f : pooled["fits"]) {
      if (f["status"] != "fit" || f["a"].get<unsigned>() > 4 || f["b"].get<unsigned>() > 8)
        bad.push_back("pooled p=" + pooled["p"].dump() + " " + f["inequality"].get<std::string>() + " " +
                      f["status"].get<std::string>());
      max_a = std::max(max_a, f["a"].get<unsigned>());
      max_b = std::max(max_b, f["b"].get<unsigned>());
    }
  }
  const bool ok = code == 0 && violations == 0 && bad.empty() && max_a <= 4 && max_b <= 8;
  std::string detail = std::to_string(j["reports"].size()) + " reports, " + std::to_string(fits) +
                       " per-function fits, max a=" + std::to_string(max_a) + " b=" + std::to_string(max_b) + ", " +
                       std::to_string(violations) + " violations";
  if (insufficient_entries)
    detail += ", " + std::to_string(insufficient_entries) + " reports without certified pairs (uncertified inputs)";
  if (!bad.empty()) detail += "; " + join(bad);
  return {ok, detail};
}

Outcome criterion6() {
  SearchConfig cfg;
  cfg.n_max = 8;
  std::size_t compared = 0;
  std::vector<std::string> bad;
  for (const char* name : {"indicator", "harmonic"}) {
    const GalleryEntry e = make_example(name);
    for (double p : {1.5, 2.0, 3.0}) {
      for (unsigned r = 1; r <= 4; ++r) {
        const ScalingReport s = verify_scaling(e, r, p, cfg);
        compared += s.compared;
        if (!s.pass() || s.compared == 0)
          bad.push_back(std::string(name) + " p=" + std::to_string(p) + " r=" + std::to_string(r) +
                        (s.mismatches.empty() ? " nothing compared" : " " + s.mismatches.front()));
      }
    }
  }
  return {bad.empty(), std::to_string(compared) + " exact entries compared over p in {3/2,2,3}" +
                           (bad.empty() ? "" : "; " + join(bad))};
}

Outcome criterion7() {
  const auto reports = inequality_suite(20240601, 10000, 1);
  bool ok = true;
  std::string detail;
  for (const char* id : {"Hoelder0", "Hoelder1", "Embeddings3", "Hoelder2", "Minkowski"}) {
    bool seen = false;
    for (const auto& r : reports) seen = seen || (r.id == id && r.trials == 10000);
    ok = ok && seen;
  }
  for (const auto& r : reports) {
    ok = ok && r.pass;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %zu trials max rel %.2g (tol %.0e)", detail.empty() ? "" : "; ", r.id.c_str(),
                  r.trials, r.max_relative_violation, r.tolerance);
    detail += buf;
  }
  return {ok, detail};
}

Outcome criterion8() {
  const auto reports = jackson_markov_suite(20240601, 1000);
  bool markov = false, equality = false;
  std::string detail;
  for (const auto& r : reports) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %zu trials max rel %.2g (tol %.0e)", detail.empty() ? "" : "; ", r.id.c_str(),
                  r.trials, r.max_relative_violation, r.tolerance);
    detail += buf;
    if (r.id == "Markov") markov = r.pass && r.trials == 1000 && r.tolerance <= 1e-9;
    if (r.id == "Markov_equality") equality = r.pass && r.trials == 7 && r.tolerance <= 1e-6;
  }
  return {markov && equality, detail};
}

Outcome criterion9() {
  const GalleryEntry e = make_example("log_h");
  const RateProfile mu = sup_modulus_on_grid(e.interval, 24, 4);
  const unsigned expect[] = {0, 2, 5, 11, 22};
  std::vector<std::string> got;
  bool ok = true;
  for (unsigned n = 1; n <= 4; ++n) {
    const double want = std::ceil((std::ldexp(1.0, static_cast<int>(n)) - 1.0) / std::log(2.0));
    const RateEntry* r = mu.at(n);
    const long m = r ? static_cast<long>(r->m) : -100;
    ok = ok && want == expect[n] && std::labs(m - static_cast<long>(want)) <= 1;
    got.push_back(std::to_string(m));
  }
  return {ok, "grid 2^-24: mu(1..4) = " + join(got) + " vs 2 5 11 22"};
}

Outcome criterion10() {
  bool ok = true;
  std::vector<std::string> etas;
  for (unsigned n = 0; n <= 6; ++n) {
    ClassSpec spec;
    spec.kind = IntervalClass{1.0};
    const CoverResult c = covering_number(spec, n);
    // Balls of diameter 2^(1-n) cover [0;1] with ceil(2^(n-1)) of them.
    const std::uint64_t want = n == 0 ? 0 : n - 1;
    ok = ok && c.eta == want && c.method == CoverMethod::Exact;
    etas.push_back(std::to_string(c.eta));
  }
  std::vector<std::string> ratios;
  for (unsigned mu = 0; mu <= 2; ++mu) {
    const mpz_class bound = path_count_bound(mu, 0, 0);
    // (2^(r+n+1) + 1) 3^(2^mu - 1) computed directly.
    mpz_class direct = 3;
    for (unsigned i = 1; i < (1u << mu); ++i) direct *= 3;
    ok = ok && bound == direct;
    const double ratio = static_cast<double>(ceil_log2(bound)) / static_cast<double>(1u << mu);
    ok = ok && ratio >= 1.0 && ratio <= 4.0;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", ratio);
    ratios.push_back(buf);
  }
  return {ok, "eta(0..6) = " + join(etas) + "; Log(bound)/2^mu for mu=0,1,2: " + join(ratios) + " (trend check only)"};
}

Outcome criterion11() {
  SearchConfig cfg;
  cfg.n_max = 5;
  const PeriodicFunction chi = make_example("indicator").function;
  const PeriodicFunction2D f = PeriodicFunction2D::tensor(chi, PeriodicFunction::step({1.0}));
  const std::pair<const char*, std::pair<RateProfile, RateProfile>> pairs[] = {
      {"modulus", {lp_modulus(chi, 2.0, cfg), lp_modulus_2d(f, 2.0, cfg)}},
      {"fourier", {fourier_rate(chi, 2.0, cfg), fourier_rate_2d(f, 2.0, cfg)}},
      {"step", {step_rate(chi, 2.0, cfg), step_rate_2d(f, 2.0, cfg)}},
  };
  std::vector<std::string> bad;
  std::size_t checked = 0;
  for (const auto& [label, pr] : pairs) {
    for (unsigned n = 0; n <= 5; ++n) {
      const RateEntry* a = pr.first.at(n);
      const RateEntry* b = pr.second.at(n);
      ++checked;
      if (!a || !b || a->m != b->m || a->kind != b->kind)
        bad.push_back(std::string(label) + " n=" + std::to_string(n) + " 1d=" + (a ? std::to_string(a->m) : "-") +
                      " 2d=" + (b ? std::to_string(b->m) : "-"));
    }
  }
  return {bad.empty(), std::to_string(checked) + " entries compared" + (bad.empty() ? "" : "; " + join(bad))};
}

Outcome criterion12() {
  const auto a = scratch("verify_a.json");
  const auto b = scratch("verify_b.json");
  const std::vector<std::string> args{"verify", "--p", "2", "--n-max", "6", "--r-max", "1", "--seed", "12345"};
  auto with = [&](const std::filesystem::path& out) {
    auto v = args;
    v.push_back("--out");
    v.push_back(out.string());
    return v;
  };
  const int ca = run_cli(with(a));
  const int cb = run_cli(with(b));
  const std::string sa = slurp(a);
  const std::string sb = slurp(b);
  const bool ok = ca == cb && !sa.empty() && sa == sb;
  return {ok, std::to_string(sa.size()) + " bytes, " + (sa == sb ? "identical" : "different")};
}

// Gallery oracle claims against engine output.
void check_oracles() {
  SearchConfig cfg;
  cfg.n_max = 8;
  const std::vector<std::pair<std::string, ParamMap>> entries = {
      {"constant", {}},
      {"harmonic", {{"k", "3"}}},
      {"indicator", {}},
      {"indicator", {{"a", "1/8"}, {"b", "3/8"}}},
      {"sawtooth", {}},
      {"holder", {{"alpha", "1/2"}}},
      {"holder", {{"alpha", "1"}}},
      {"log_h", {}},
      {"log_h_iter", {}},
      {"log_h_derivative", {}},
      {"lacunary", {{"J", "24"}}},
      {"doubly_lacunary", {}},
      {"chebyshev_poly", {{"D", "5"}}},
  };
  for (const auto& [name, params] : entries) {
    const GalleryEntry e = make_example(name, params);
    std::string tag = name;
    for (const auto& [k, v] : params) tag += " " + k + "=" + v;
    for (const OracleClaim& c : e.oracles) {
      if (!c.value) continue;
      const double p = c.p.value_or(2.0);
      char pbuf[16];
      std::snprintf(pbuf, sizeof pbuf, "%g", p);
      const std::string label = "oracle " + tag + " " + c.quantity + (c.p ? std::string(" p=") + pbuf : "");
      if (c.quantity == "modulus" || c.quantity == "step" || c.quantity == "fourier") {
        report(label, [&]() -> Outcome {
          const RateProfile prof = c.quantity == "modulus" ? lp_modulus(e.function, p, cfg)
                                   : c.quantity == "step"  ? step_rate(e.function, p, cfg)
                                                           : fourier_rate(e.function, p, cfg);
          std::size_t exact = 0;
          std::vector<std::string> bad;
          for (unsigned n = c.n_lo; n <= std::min(c.n_hi, cfg.n_max); ++n) {
            const RateEntry* r = prof.at(n);
            const auto want = static_cast<unsigned>(c.value(n));
            if (!r) continue;
            const bool fine = r->kind == EntryKind::Exact        ? r->m == want
                              : r->kind == EntryKind::UpperBound ? r->m >= want
                              : r->kind == EntryKind::LowerBound ? r->m <= want
                                                                 : true;
            exact += r->kind == EntryKind::Exact;
            if (!fine) bad.push_back("n=" + std::to_string(n) + " m=" + std::to_string(r->m) + " oracle " + std::to_string(want));
          }
          return {bad.empty(), std::to_string(exact) + " exact entries" + (bad.empty() ? "" : "; " + join(bad))};
        });
      } else if (c.quantity == "diff_norm") {
        report(label, [&]() -> Outcome {
          double worst = 0.0;
          for (unsigned n = 0; n <= 12; ++n) {
            const NormEstimate d = diff_norm(e.function, DyadicShift(1, n), p);
            const double gap = std::max(0.0, std::fabs(d.value - c.value(n)) - d.error_radius);
            worst = std::max(worst, gap);
          }
          return {worst <= 1e-9, "max gap beyond certified radius " + std::to_string(worst)};
        });
      } else if (c.quantity == "sup_modulus") {
        report(label, [&]() -> Outcome {
          const unsigned grid = 24;
          std::vector<std::string> got;
          bool ok = true;
          unsigned top = c.n_lo;
          for (unsigned n = c.n_lo; n <= c.n_hi && c.value(n) + 2 <= grid; ++n) top = n;
          const RateProfile mu = sup_modulus_on_grid(e.interval, grid, top);
          for (unsigned n = c.n_lo; n <= top; ++n) {
            const RateEntry* r = mu.at(n);
            const long m = r ? static_cast<long>(r->m) : -100;
            ok = ok && std::labs(m - static_cast<long>(c.value(n))) <= 1;
            got.push_back(std::to_string(m) + "/" + std::to_string(static_cast<long>(c.value(n))));
          }
          return {ok, "grid 2^-24, n=" + std::to_string(c.n_lo) + ".." + std::to_string(top) + " got/oracle " + join(got)};
        });
      } else if (c.quantity == "norm") {
        report(label, [&]() -> Outcome {
          const NormEstimate nm = p_norm(e.function, p);
          const double gap = std::fabs(nm.value - c.value(0));
          return {gap <= nm.error_radius + 1e-6, "value " + std::to_string(nm.value) + " oracle " + std::to_string(c.value(0))};
        });
      } else if (c.quantity == "markov") {
        report(label, [&]() -> Outcome {
          // d/dx T_D at x = 1, with x = 2t - 1.
          const double h = 1e-6;
          const double slope = (e.interval(1.0) - e.interval(1.0 - h)) / (2.0 * h);
          return {std::fabs(slope - c.value(0)) <= 1e-3 * c.value(0),
                  "endpoint slope " + std::to_string(slope) + " oracle " + std::to_string(c.value(0))};
        });
      }
    }
  }
}

}  // namespace

int main() {
  std::cout << "modrate acceptance" << std::endl;
  report("1 indicator modulus mu^(2)(n) = 2n+1, n=0..8", criterion1, 1.0);
  report("2 harmonic modulus mu(0) = 3", criterion2);
  report("3 lacunary(J=24) Fourier rate phi^(2)(n) = n, n=1..10", criterion3, 10.0);
  report("4 indicator step rate", criterion4);
  report("5 equivalence fits on the corpus, p in {3/2,2,3}", criterion5, 180.0);
  report("6 scaling law r=1..4", criterion6);
  report("7 inequality suite", criterion7, 60.0);
  report("8 Markov inequality", criterion8);
  report("9 log_h sup-norm modulus", criterion9);
  report("10 entropy micro-checks", criterion10);
  report("11 2-D tensor consistency, n=0..5", criterion11, 120.0);
  report("12 verify determinism", criterion12);
  const int criterion_failures = failures;
  std::cout << "gallery oracle claims" << std::endl;
  check_oracles();
  std::cout << "criteria failed: " << criterion_failures << ", oracle claims failed: " << failures - criterion_failures
            << std::endl;
  return failures == 0 ? 0 : 1;
}
