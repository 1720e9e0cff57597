#include "modrate/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "modrate/error.hpp"
#include "modrate/fourier.hpp"
#include "modrate/modulus.hpp"
#include "modrate/schauder.hpp"
#include "modrate/step.hpp"

namespace modrate {
namespace {

constexpr double kPi = std::numbers::pi;

struct InequalitySpec {
  const char* id;
  RateProfile ProfileSet::*left;
  RateProfile ProfileSet::*right;
  double coef;
  // Offset g(n) added to the right side before b.
  double n_weight;
  bool times_p;
};

const InequalitySpec kInequalities[] = {
    {"a", &ProfileSet::phi, &ProfileSet::mu, 1.0, 1.0, false},
    {"b", &ProfileSet::mu, &ProfileSet::phi, 2.0, 1.0, false},
    {"c", &ProfileSet::sigma, &ProfileSet::mu, 1.0, 0.0, false},
    {"d", &ProfileSet::mu, &ProfileSet::sigma, 1.0, 1.0, true},
};

struct Pair {
  unsigned n;
  double excess;  // left - coef * right - g(n)
};

std::vector<Pair> pairs_for(const ProfileSet& s, double p, const InequalitySpec& q, unsigned a) {
  std::vector<Pair> out;
  const RateProfile& L = s.*q.left;
  const RateProfile& R = s.*q.right;
  for (const RateEntry& l : L.entries) {
    if (!bounds_from_below(l.kind)) continue;
    const RateEntry* r = R.at(l.n + a);
    if (!r || !bounds_from_above(r->kind)) continue;
    const double g = q.n_weight * static_cast<double>(l.n) * (q.times_p ? p : 1.0);
    out.push_back({l.n, static_cast<double>(l.m) - q.coef * static_cast<double>(r->m) - g});
  }
  return out;
}

unsigned required_b(const std::vector<Pair>& pairs) {
  double worst = 0.0;
  for (const Pair& pr : pairs) worst = std::max(worst, pr.excess);
  return static_cast<unsigned>(std::ceil(worst - 1e-9));
}

// Lexicographic (a, b) search over the pooled pairs of several profile sets.
FittedConstant fit_one(const std::vector<const ProfileSet*>& sets, double p, const InequalitySpec& q,
                       const FitCaps& caps, std::vector<Violation>* violations) {
  FittedConstant fc;
  fc.inequality = q.id;
  fc.status = "insufficient";
  std::optional<std::pair<unsigned, unsigned>> closest;
  for (unsigned a = 0; a <= caps.a_cap; ++a) {
    std::vector<Pair> pairs;
    for (const ProfileSet* s : sets) {
      auto more = pairs_for(*s, p, q, a);
      pairs.insert(pairs.end(), more.begin(), more.end());
    }
    if (pairs.empty()) continue;
    const unsigned b = required_b(pairs);
    if (b <= caps.b_cap) {
      fc.status = "fit";
      fc.a = a;
      fc.b = b;
      fc.pairs = pairs.size();
      return fc;
    }
    if (!closest || b < closest->second) closest = std::make_pair(a, b);
  }
  if (!closest) return fc;
  fc.status = "violation";
  fc.a = closest->first;
  fc.b = closest->second;
  if (violations) {
    for (const ProfileSet* s : sets) {
      for (const Pair& pr : pairs_for(*s, p, q, fc.a)) {
        if (pr.excess > static_cast<double>(caps.b_cap) + 1e-9)
          violations->push_back({q.id, pr.n, "excess " + std::to_string(pr.excess) + " above b_cap at a=" +
                                                 std::to_string(fc.a)});
      }
    }
  }
  return fc;
}

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  Complex disc() {
    const double r = std::sqrt(unit());
    return std::polar(r, 2.0 * kPi * unit());
  }
  double exponent() { return 1.05 + 6.95 * unit(); }
  std::vector<Complex> step_values() {
    std::vector<Complex> v(std::size_t{1} << below(7));
    for (Complex& c : v) c = disc();
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

double relative_excess(double lhs, double rhs) {
  const double diff = lhs - rhs;
  if (diff <= 0.0) return 0.0;
  return diff / std::max(std::fabs(rhs), std::numeric_limits<double>::min());
}

double mean_pow(const std::vector<double>& a, double p) {
  double s = 0.0;
  for (double x : a) s += std::pow(x, p);
  return s / static_cast<double>(a.size());
}

double sum_norm(const std::vector<Complex>& v, double p) {
  double s = 0.0;
  for (Complex c : v) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

std::vector<double> abs_on(const std::vector<Complex>& v, std::size_t cells) {
  std::vector<double> out(cells);
  const std::size_t per = cells / v.size();
  for (std::size_t i = 0; i < cells; ++i) out[i] = std::abs(v[i / per]);
  return out;
}

double trial_hoelder0(Draw& d) {
  const double p = d.exponent();
  const double x = std::abs(d.disc());
  const double y = std::abs(d.disc());
  return relative_excess(std::pow(x + y, p), std::pow(2.0, p - 1.0) * (std::pow(x, p) + std::pow(y, p)));
}

double trial_hoelder1(Draw& d) {
  const double p = d.exponent();
  const double q = p / (p - 1.0);
  const std::size_t n = 1 + d.below(64);
  std::vector<Complex> x(n), y(n);
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = d.disc();
    y[i] = d.disc();
    lhs += std::abs(x[i] * y[i]);
  }
  return relative_excess(lhs, sum_norm(x, p) * sum_norm(y, q));
}

double trial_embeddings3(Draw& d) {
  const double p = d.exponent();
  const double q = 1.0 + (p - 1.0) * d.unit();
  const std::size_t K = 1 + d.below(64);
  std::vector<Complex> x(K);
  for (Complex& c : x) c = d.disc();
  const double np = sum_norm(x, p);
  const double nq = sum_norm(x, q);
  const double factor = std::pow(static_cast<double>(K), 1.0 / q - 1.0 / p);
  return std::max(relative_excess(np, nq), relative_excess(nq, factor * np));
}

double trial_hoelder2(Draw& d) {
  const double p = d.exponent();
  const double q = p / (p - 1.0);
  const std::vector<Complex> f = d.step_values();
  const std::vector<Complex> g = d.step_values();
  const std::size_t cells = std::max(f.size(), g.size());
  const std::vector<double> af = abs_on(f, cells);
  const std::vector<double> ag = abs_on(g, cells);
  double lhs = 0.0;
  for (std::size_t i = 0; i < cells; ++i) lhs += af[i] * ag[i];
  lhs /= static_cast<double>(cells);
  return relative_excess(lhs, std::pow(mean_pow(af, p), 1.0 / p) * std::pow(mean_pow(ag, q), 1.0 / q));
}

PeriodicFunction random_trig(Draw& d) {
  // Real valued, so the norms use the second order sampling bound.
  const std::int64_t degree = 1 + static_cast<std::int64_t>(d.below(4));
  std::vector<TrigTerm> terms{{0, Complex{2.0 * d.unit() - 1.0, 0.0}}};
  for (std::int64_t k = 1; k <= degree; ++k) {
    const Complex c = 0.5 * d.disc();
    terms.push_back({k, c});
    terms.push_back({-k, std::conj(c)});
  }
  return PeriodicFunction::trig(degree, std::move(terms));
}

double trial_hoelder2_quadrature(Draw& d) {
  const double p = 1.5 + 2.5 * d.unit();
  const double q = p / (p - 1.0);
  const PeriodicFunction f = random_trig(d);
  const PeriodicFunction g = random_trig(d);
  std::vector<Complex> prod(2 * 8 + 1, 0.0);
  const std::int64_t df = f.as_trig()->degree;
  const std::int64_t dg = g.as_trig()->degree;
  for (const TrigTerm& a : f.as_trig()->terms)
    for (const TrigTerm& b : g.as_trig()->terms) prod[static_cast<std::size_t>(a.k + b.k + 8)] += a.c * b.c;
  // fg is real; mirror the nonnegative half so rounding keeps the symmetry exact.
  std::vector<TrigTerm> terms{{0, Complex{prod[8].real(), 0.0}}};
  for (std::int64_t k = 1; k <= 8; ++k) {
    const Complex c = prod[static_cast<std::size_t>(k + 8)];
    if (c == Complex{}) continue;
    terms.push_back({k, c});
    terms.push_back({-k, std::conj(c)});
  }
  const PeriodicFunction fg = PeriodicFunction::trig(df + dg, std::move(terms));
  QuadratureOptions opt;
  opt.target_radius = 1e-7;
  const NormEstimate lhs = p_norm(fg, 1.0, opt);
  const NormEstimate nf = p_norm(f, p, opt);
  const NormEstimate ng = p_norm(g, q, opt);
  return relative_excess(lhs.lower(), nf.upper() * ng.upper());
}

double trial_minkowski(Draw& d) {
  const double p = d.exponent();
  const std::size_t kx = std::size_t{1} << d.below(7);
  const std::size_t ky = std::size_t{1} << d.below(7);
  std::vector<Complex> F(kx * ky);
  for (Complex& c : F) c = d.disc();
  // Left: L^p_y norm of the x-average; right: x-average of the L^p_y norms.
  std::vector<double> inner(ky);
  for (std::size_t j = 0; j < ky; ++j) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < kx; ++i) s += F[i * ky + j];
    inner[j] = std::abs(s / static_cast<double>(kx));
  }
  const double lhs = std::pow(mean_pow(inner, p), 1.0 / p);
  double rhs = 0.0;
  for (std::size_t i = 0; i < kx; ++i) {
    std::vector<double> row(ky);
    for (std::size_t j = 0; j < ky; ++j) row[j] = std::abs(F[i * ky + j]);
    rhs += std::pow(mean_pow(row, p), 1.0 / p);
  }
  return relative_excess(lhs, rhs / static_cast<double>(kx));
}

InequalityReport run_trials(const std::string& id, std::uint64_t stream, std::uint64_t seed, std::size_t trials,
                            double tolerance, bool quadrature, unsigned threads,
                            const std::function<double(Draw&)>& trial) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::vector<double> worst(threads, 0.0);
  const auto work = [&](unsigned t) {
    for (std::size_t i = t; i < trials; i += threads) {
      Draw d(split_seed(seed, stream, i));
      worst[t] = std::max(worst[t], trial(d));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  InequalityReport r;
  r.id = id;
  r.trials = trials;
  r.max_relative_violation = *std::max_element(worst.begin(), worst.end());
  r.tolerance = tolerance;
  r.pass = r.max_relative_violation <= tolerance;
  (quadrature ? r.quadrature_trials : r.exact_trials) = trials;
  return r;
}

// Chebyshev series: value and derivative at x in [-1, 1].
struct ChebPoly {
  std::vector<double> a;

  double value(double x) const {
    double t0 = 1.0, t1 = x, s = a[0];
    if (a.size() > 1) s += a[1] * x;
    for (std::size_t k = 2; k < a.size(); ++k) {
      const double t2 = 2.0 * x * t1 - t0;
      s += a[k] * t2;
      t0 = t1;
      t1 = t2;
    }
    return s;
  }
  // T_k' = k U_{k-1}.
  double derivative(double x) const {
    double u0 = 1.0, u1 = 2.0 * x, s = 0.0;
    if (a.size() > 1) s += a[1];
    for (std::size_t k = 2; k < a.size(); ++k) {
      s += a[k] * static_cast<double>(k) * u1;
      const double u2 = 2.0 * x * u1 - u0;
      u0 = u1;
      u1 = u2;
    }
    return s;
  }
  // sup |P^(order)| <= sum |a_k| prod_{j<order} (k^2 - j^2)/(2j + 1).
  double derivative_bound(int order) const {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      double f = 1.0;
      const double kk = static_cast<double>(k * k);
      for (int j = 0; j < order; ++j) f *= std::max(0.0, kk - static_cast<double>(j * j)) / (2.0 * j + 1.0);
      s += std::fabs(a[k]) * f;
    }
    return s;
  }
};

struct SupBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Branch and bound for sup |g| on [-1, 1] given |g''| <= curvature.
SupBracket sup_abs(const std::function<double(double)>& g, double curvature) {
  struct Piece {
    double a, b, ga, gb;
  };
  std::vector<Piece> work;
  const int initial = 256;
  double best = 0.0;
  std::vector<double> vals(initial + 1);
  for (int i = 0; i <= initial; ++i) {
    vals[static_cast<std::size_t>(i)] = g(-1.0 + 2.0 * i / initial);
    best = std::max(best, std::fabs(vals[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < initial; ++i)
    work.push_back({-1.0 + 2.0 * i / initial, -1.0 + 2.0 * (i + 1) / initial, vals[static_cast<std::size_t>(i)],
                    vals[static_cast<std::size_t>(i) + 1]});
  const double rel = 1e-13;
  std::size_t evaluations = 0;
  double leftover = 0.0;
  while (!work.empty()) {
    const Piece pc = work.back();
    work.pop_back();
    const double w = pc.b - pc.a;
    const double bound = std::max(std::fabs(pc.ga), std::fabs(pc.gb)) + curvature * w * w / 8.0;
    if (bound <= best * (1.0 + rel)) continue;
    if (evaluations > 2'000'000 || w < 1e-15) {
      leftover = std::max(leftover, bound);
      continue;
    }
    const double m = 0.5 * (pc.a + pc.b);
    const double gm = g(m);
    ++evaluations;
    best = std::max(best, std::fabs(gm));
    work.push_back({pc.a, m, pc.ga, gm});
    work.push_back({m, pc.b, gm, pc.gb});
  }
  return {best, std::max(best * (1.0 + rel), leftover)};
}

// Sup-norm modulus of continuity on [0;1] at width delta from N + 1 samples.
double omega(const std::vector<double>& v, double delta) {
  const std::size_t N = v.size() - 1;
  const auto reach = static_cast<std::size_t>(std::floor(delta * static_cast<double>(N)));
  double w = 0.0;
  for (std::size_t s = 1; s <= std::min(reach, N); ++s)
    for (std::size_t i = 0; i + s <= N; ++i) w = std::max(w, std::fabs(v[i + s] - v[i]));
  return w;
}

}  // namespace

const FittedConstant* EquivalenceReport::fit(const std::string& inequality) const {
  for (const FittedConstant& f : fits)
    if (f.inequality == inequality) return &f;
  return nullptr;
}

ProfileSet compute_profiles(const PeriodicFunction& f, double p, const SearchConfig& cfg) {
  return {lp_modulus(f, p, cfg), step_rate(f, p, cfg), fourier_rate(f, p, cfg)};
}

EquivalenceReport fit_equivalence(const std::string& name, double p, ProfileSet profiles, const FitCaps& caps) {
  EquivalenceReport r;
  r.function = name;
  r.p = p;
  r.profiles = std::move(profiles);
  bool any = false;
  for (const InequalitySpec& q : kInequalities) {
    r.fits.push_back(fit_one({&r.profiles}, p, q, caps, &r.violations));
    any = any || r.fits.back().status != "insufficient";
  }
  if (!any) throw Error(ErrorCode::InsufficientCertification, "no comparable entry pairs for '" + name + "'");
  return r;
}

EquivalenceReport verify_equivalence(const GalleryEntry& entry, double p, const SearchConfig& cfg,
                                     const FitCaps& caps) {
  require_rate_p(p);
  ProfileSet profiles = compute_profiles(entry.function, p, cfg);
  for (RateProfile* pr : {&profiles.mu, &profiles.sigma, &profiles.phi})
    for (const std::string& f : entry.flags)
      if (!pr->has_flag(f)) pr->flags.push_back(f);
  return fit_equivalence(entry.name, p, std::move(profiles), caps);
}

std::vector<FittedConstant> fit_pooled(const std::vector<EquivalenceReport>& reports, const FitCaps& caps) {
  std::vector<FittedConstant> out;
  if (reports.empty()) return out;
  const double p = reports.front().p;
  std::vector<const ProfileSet*> sets;
  for (const EquivalenceReport& r : reports) {
    if (r.p != p) throw Error(ErrorCode::InvalidArgument, "pooled reports must share p");
    sets.push_back(&r.profiles);
  }
  for (const InequalitySpec& q : kInequalities) out.push_back(fit_one(sets, p, q, caps, nullptr));
  return out;
}

ScalingReport verify_scaling(const GalleryEntry& entry, unsigned r, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  ScalingReport out;
  out.function = entry.name;
  out.r = r;
  out.p = p;
  SearchConfig wide = cfg;
  wide.n_max = cfg.n_max + r;
  wide.m_cap = std::max(cfg.m_cap, wide.n_max);
  const ProfileSet base = compute_profiles(entry.function, p, wide);
  const ProfileSet scaled = compute_profiles(scale_values(entry.function, std::ldexp(1.0, static_cast<int>(r))), p, cfg);
  const std::pair<const char*, RateProfile ProfileSet::*> kinds[] = {
      {"mu", &ProfileSet::mu}, {"sigma", &ProfileSet::sigma}, {"phi", &ProfileSet::phi}};
  for (const auto& [label, member] : kinds) {
    for (const RateEntry& e : (scaled.*member).entries) {
      const RateEntry* b = (base.*member).at(e.n + r);
      if (!b || e.kind != EntryKind::Exact || b->kind != EntryKind::Exact) continue;
      ++out.compared;
      if (e.m != b->m)
        out.mismatches.push_back(std::string(label) + " n=" + std::to_string(e.n) + ": " + std::to_string(e.m) +
                                 " vs " + std::to_string(b->m));
    }
  }
  return out;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return mix(mix(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1))) + index);
}

std::vector<InequalityReport> inequality_suite(std::uint64_t seed, std::size_t trials, unsigned threads) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  std::vector<InequalityReport> out;
  out.push_back(run_trials("Hoelder0", 0, seed, trials, 1e-9, false, threads, trial_hoelder0));
  out.push_back(run_trials("Hoelder1", 1, seed, trials, 1e-9, false, threads, trial_hoelder1));
  out.push_back(run_trials("Embeddings3", 2, seed, trials, 1e-9, false, threads, trial_embeddings3));
  out.push_back(run_trials("Hoelder2", 3, seed, trials, 1e-9, false, threads, trial_hoelder2));
  out.push_back(run_trials("Hoelder2_quadrature", 4, seed, std::max<std::size_t>(1, trials / 10), 1e-6, true, threads,
                           trial_hoelder2_quadrature));
  out.push_back(run_trials("Minkowski", 5, seed, trials, 1e-9, false, threads, trial_minkowski));
  return out;
}

std::vector<InequalityReport> jackson_markov_suite(std::uint64_t seed, std::size_t trials) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  std::vector<InequalityReport> out;

  InequalityReport markov;
  markov.id = "Markov";
  markov.tolerance = 1e-9;
  const auto check = [](const ChebPoly& P, double D2) {
    const SupBracket sp = sup_abs([&](double x) { return P.value(x); }, P.derivative_bound(2));
    const SupBracket sd = sup_abs([&](double x) { return P.derivative(x); }, P.derivative_bound(3));
    return relative_excess(sd.upper, D2 * sp.lower);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Draw d(split_seed(seed, 16, t));
    const std::size_t D = d.below(17);
    ChebPoly P{std::vector<double>(D + 1)};
    for (double& c : P.a) c = 2.0 * d.unit() - 1.0;
    markov.max_relative_violation =
        std::max(markov.max_relative_violation, check(P, static_cast<double>(D * D)));
  }
  markov.trials = trials;
  markov.exact_trials = trials;
  markov.pass = markov.max_relative_violation <= markov.tolerance;
  out.push_back(markov);

  InequalityReport witness;
  witness.id = "Markov_equality";
  witness.tolerance = 1e-6;
  for (std::size_t D = 2; D <= 8; ++D) {
    ChebPoly T{std::vector<double>(D + 1, 0.0)};
    T.a[D] = 1.0;
    const SupBracket sd = sup_abs([&](double x) { return T.derivative(x); }, T.derivative_bound(3));
    const SupBracket sp = sup_abs([&](double x) { return T.value(x); }, T.derivative_bound(2));
    const double target = static_cast<double>(D * D) * sp.lower;
    witness.max_relative_violation = std::max(witness.max_relative_violation, std::fabs(sd.lower - target) / target);
    ++witness.trials;
  }
  witness.exact_trials = witness.trials;
  witness.pass = witness.max_relative_violation <= witness.tolerance;
  witness.note = "sup |T_D'| against D^2 sup |T_D| for D = 2..8";
  out.push_back(witness);

  InequalityReport jackson;
  jackson.id = "Jackson";
  jackson.tolerance = std::numeric_limits<double>::infinity();
  double fitted = 0.0;
  const std::vector<GalleryEntry> lipschitz = {make_example("holder", {{"alpha", "1"}}), make_example("sawtooth"),
                                               make_example("chebyshev_poly", {{"D", "5"}})};
  const std::size_t N = std::size_t{1} << 12;
  for (const GalleryEntry& e : lipschitz) {
    const auto f = e.interval ? e.interval : [&e](double x) { return evaluate(e.function, TorusPoint(x)).real(); };
    const std::vector<double> a = chebyshev_coefficients(f, 12);
    std::vector<double> samples(N + 1);
    for (std::size_t i = 0; i <= N; ++i) samples[i] = f(static_cast<double>(i) / static_cast<double>(N));
    for (std::size_t D = 1; D <= 32; ++D) {
      double tail = 0.0;
      for (std::size_t j = D + 1; j < a.size(); ++j) tail += std::fabs(a[j]);
      // x = (u + 1)/2 halves distances.
      const double w = omega(samples, kPi / (2.0 * static_cast<double>(D + 1)));
      if (w > 0.0) fitted = std::max(fitted, tail / w);
      ++jackson.trials;
    }
  }
  jackson.fitted_constant = fitted;
  jackson.quadrature_trials = jackson.trials;
  jackson.pass = std::isfinite(fitted);
  jackson.note = "Chebyshev truncation error / omega(pi/(D+1)), D = 1..32; reported, not asserted";
  out.push_back(jackson);
  return out;
}

DirichletEstimate dirichlet_constant(const std::vector<GalleryEntry>& corpus, double p, unsigned k_log2,
                                     const SearchConfig& cfg) {
  DirichletEstimate out;
  out.p = p;
  const QuadratureOptions q = cfg.quadrature();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const NormEstimate base = p_norm(corpus[i].function, p, q);
    if (base.value <= 0.0) continue;
    double ratio = 0.0;
    for (unsigned k = 0; k <= k_log2; ++k) {
      const PeriodicFunction s = partial_sum(corpus[i].function, std::int64_t{1} << k);
      ratio = std::max(ratio, p_norm(s, p, q).value / base.value);
    }
    out.estimate = std::max(out.estimate, ratio);
    double& half = i % 2 == 0 ? out.first_half : out.second_half;
    half = std::max(half, ratio);
  }
  return out;
}

std::vector<GalleryEntry> equivalence_corpus() {
  std::vector<GalleryEntry> out;
  const auto add = [&](const std::string& name, const ParamMap& params, double scale, const std::string& label) {
    GalleryEntry e = make_example(name, params);
    if (scale != 1.0) e.function = scale_values(e.function, scale);
    e.name = label;
    out.push_back(std::move(e));
  };
  add("constant", {}, 1.0, "constant");
  add("harmonic", {{"k", "1"}}, 1.0, "harmonic(k=1)");
  add("harmonic", {{"k", "3"}}, 1.0, "harmonic(k=3)");
  add("indicator", {{"a", "0"}, {"b", "1/2"}}, 1.0, "indicator(0,1/2)");
  add("indicator", {{"a", "1/8"}, {"b", "3/8"}}, 1.0, "indicator(1/8,3/8)");
  add("sawtooth", {}, 1.0, "sawtooth");
  add("holder", {{"alpha", "1"}}, 1.0, "holder(alpha=1)");
  add("holder", {{"alpha", "1/2"}}, 1.0, "holder(alpha=1/2)");
  add("log_h", {}, 1.0, "log_h");
  add("lacunary", {{"J", "12"}}, 0.5, "lacunary(J=12)/2");
  add("chebyshev_poly", {{"D", "3"}}, 1.0, "chebyshev_poly(D=3)");
  return out;
}

}  // namespace modrate
