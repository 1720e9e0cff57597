#include "modrate/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "modrate/detail/sampled.hpp"
#include "modrate/error.hpp"

namespace modrate {
namespace {

constexpr std::size_t kMaxRefinedCells = std::size_t{1} << 26;

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "p must be finite and >= 1");
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// k * a mod 2^s without overflow.
std::int64_t product_mod_pow2(std::int64_t k, std::int64_t a, unsigned s) {
  if (s == 0) return 0;
  const std::int64_t m = std::int64_t{1} << s;
  const __int128 prod = static_cast<__int128>(mod_floor(k, m)) * mod_floor(a, m);
  return static_cast<std::int64_t>(prod % m);
}

std::vector<Complex> rotate(const std::vector<Complex>& v, std::int64_t by) {
  const auto n = static_cast<std::int64_t>(v.size());
  std::vector<Complex> out(v.size());
  const std::int64_t r = mod_floor(by, n);
  for (std::int64_t j = 0; j < n; ++j) out[j] = v[(j + r) % n];
  return out;
}

// 1 - exp(2 pi i r / 2^s), computed without cancellation.
Complex one_minus_root(std::int64_t r, unsigned s) {
  if (r == 0) return {0.0, 0.0};
  const std::int64_t den = std::int64_t{1} << (s + 1);
  const Complex half = detail::unit_root(r, den);
  const double sine = std::sin(std::numbers::pi * static_cast<double>(r) / std::ldexp(1.0, static_cast<int>(s)));
  return Complex(0.0, -2.0 * sine) * half;
}

TrigPolynomial shift_difference(const TrigPolynomial& t, const DyadicShift& delta) {
  TrigPolynomial out{t.degree, {}};
  out.terms.reserve(t.terms.size());
  for (const auto& term : t.terms) {
    const std::int64_t r = product_mod_pow2(term.k, delta.numerator(), delta.scale());
    const Complex c = term.c * one_minus_root(r, delta.scale());
    if (c != Complex{}) out.terms.push_back({term.k, c});
  }
  return out;
}

AnalyticFunction as_analytic(const PeriodicFunction& f) {
  if (const auto* a = f.as_analytic()) return *a;
  AnalyticFunction out;
  out.real_valued = f.is_real();
  out.evaluator = [f](double t) { return evaluate(f, TorusPoint(t)); };
  if (const auto* values = f.cell_values()) {
    out.lipschitz = 0.0;
    const std::size_t k = values->size();
    out.singularities.reserve(k);
    for (std::size_t j = 0; j < k; ++j) out.singularities.push_back(static_cast<double>(j) / static_cast<double>(k));
  } else if (const auto* t = f.as_trig()) {
    out.lipschitz = derivative_bound(*t, 1);
  }
  return out;
}

}  // namespace

TorusPoint::TorusPoint(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  t_ = r;
}

DyadicShift::DyadicShift(std::int64_t numerator, unsigned scale) {
  if (scale > kMaxScale) throw Error(ErrorCode::InvalidArgument, "shift scale exceeds 62");
  if (scale == 0) return;
  const std::int64_t m = std::int64_t{1} << scale;
  std::int64_t r = mod_floor(numerator, m);
  if (r > m / 2) r -= m;
  while (scale > 0 && r % 2 == 0) {
    r /= 2;
    --scale;
  }
  if (r == 0) scale = 0;
  numerator_ = r;
  scale_ = scale;
}

double DyadicShift::value() const noexcept {
  return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(scale_));
}

std::int64_t DyadicShift::numerator_over(unsigned target) const {
  if (target < scale_) throw Error(ErrorCode::InvalidArgument, "target scale below shift scale");
  return numerator_ * (std::int64_t{1} << (target - scale_));
}

Complex TrigPolynomial::coefficient(std::int64_t k) const {
  const auto it = std::lower_bound(terms.begin(), terms.end(), k,
                                   [](const TrigTerm& t, std::int64_t key) { return t.k < key; });
  return (it != terms.end() && it->k == k) ? it->c : Complex{};
}

PeriodicFunction PeriodicFunction::step(std::vector<Complex> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "step function needs at least one cell");
  return PeriodicFunction(StepFunction{std::move(values)});
}

PeriodicFunction PeriodicFunction::trig(std::int64_t degree, std::vector<TrigTerm> terms) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative degree");
  std::sort(terms.begin(), terms.end(), [](const TrigTerm& a, const TrigTerm& b) { return a.k < b.k; });
  std::vector<TrigTerm> merged;
  for (const auto& t : terms) {
    if (t.k > degree || t.k < -degree) throw Error(ErrorCode::InvalidArgument, "frequency exceeds degree");
    if (!merged.empty() && merged.back().k == t.k) {
      merged.back().c += t.c;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const TrigTerm& t) { return t.c == Complex{}; });
  return PeriodicFunction(TrigPolynomial{degree, std::move(merged)});
}

PeriodicFunction PeriodicFunction::trig_dense(const std::vector<Complex>& coeffs) {
  if (coeffs.size() % 2 == 0) throw Error(ErrorCode::InvalidArgument, "dense coefficient vector must have odd length");
  const auto degree = static_cast<std::int64_t>(coeffs.size() / 2);
  std::vector<TrigTerm> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != Complex{}) terms.push_back({static_cast<std::int64_t>(i) - degree, coeffs[i]});
  }
  return trig(degree, std::move(terms));
}

PeriodicFunction PeriodicFunction::grid(std::vector<Complex> samples) {
  const std::size_t n = samples.size();
  if (n == 0 || (n & (n - 1)) != 0) throw Error(ErrorCode::InvalidArgument, "grid length must be a power of two");
  return PeriodicFunction(GridFunction{std::move(samples)});
}

PeriodicFunction PeriodicFunction::analytic(AnalyticFunction f) {
  if (!f.evaluator) throw Error(ErrorCode::InvalidArgument, "analytic function needs an evaluator");
  for (double& s : f.singularities) s = TorusPoint(s).value();
  std::sort(f.singularities.begin(), f.singularities.end());
  f.singularities.erase(std::unique(f.singularities.begin(), f.singularities.end()), f.singularities.end());
  return PeriodicFunction(std::move(f));
}

Representation PeriodicFunction::representation() const noexcept {
  return static_cast<Representation>(rep_.index());
}

const std::vector<Complex>* PeriodicFunction::cell_values() const noexcept {
  if (const auto* s = as_step()) return &s->values;
  if (const auto* g = as_grid()) return &g->samples;
  return nullptr;
}

bool PeriodicFunction::is_real() const {
  if (const auto* values = cell_values()) {
    return std::all_of(values->begin(), values->end(), [](Complex c) { return c.imag() == 0.0; });
  }
  if (const auto* t = as_trig()) {
    for (const auto& term : t->terms) {
      if (std::conj(t->coefficient(-term.k)) != term.c) return false;
    }
    return true;
  }
  return as_analytic()->real_valued;
}

bool operator==(const PeriodicFunction& a, const PeriodicFunction& b) {
  if (a.rep_.index() != b.rep_.index() || a.as_analytic()) return false;
  if (const auto* s = a.as_step()) return *s == *b.as_step();
  if (const auto* t = a.as_trig()) return *t == *b.as_trig();
  return *a.as_grid() == *b.as_grid();
}

StepFunction refine(const StepFunction& f, std::size_t cells) {
  const std::size_t k = f.cells();
  if (cells == 0 || cells % k != 0) throw Error(ErrorCode::InvalidArgument, "refinement must be a multiple of the cell count");
  if (cells == k) return f;
  const std::size_t factor = cells / k;
  StepFunction out;
  out.values.reserve(cells);
  for (const Complex& v : f.values) out.values.insert(out.values.end(), factor, v);
  return out;
}

double derivative_bound(const TrigPolynomial& t, int order) {
  return detail::derivative_bound(detail::stream_of(t), order);
}

PeriodicFunction shift(const PeriodicFunction& f, const DyadicShift& delta) {
  if (delta.is_zero()) return f;
  if (const auto* s = f.as_step()) {
    const std::size_t denom = std::size_t{1} << delta.scale();
    const std::size_t cells = std::lcm(s->cells(), denom);
    if (cells > kMaxRefinedCells) throw Error(ErrorCode::BudgetExceeded, "shifted step function needs too many cells");
    const StepFunction fine = refine(*s, cells);
    const std::int64_t by = delta.numerator() * static_cast<std::int64_t>(cells / denom);
    return PeriodicFunction::step(rotate(fine.values, by));
  }
  if (const auto* g = f.as_grid()) {
    const std::size_t n = g->samples.size();
    const auto log2n = static_cast<unsigned>(std::countr_zero(n));
    if (delta.scale() > log2n) throw Error(ErrorCode::GridShiftMismatch, "shift is not a multiple of the grid spacing");
    return PeriodicFunction::grid(rotate(g->samples, delta.numerator_over(log2n)));
  }
  if (const auto* t = f.as_trig()) {
    std::vector<TrigTerm> terms = t->terms;
    const std::int64_t den = std::int64_t{1} << delta.scale();
    for (auto& term : terms) term.c *= detail::unit_root(product_mod_pow2(term.k, delta.numerator(), delta.scale()), den);
    return PeriodicFunction::trig(t->degree, std::move(terms));
  }
  const auto& a = *f.as_analytic();
  AnalyticFunction out = a;
  const double d = delta.value();
  out.evaluator = [inner = a.evaluator, d](double t) { return inner(TorusPoint(t + d).value()); };
  for (double& s : out.singularities) s = TorusPoint(s - d).value();
  return PeriodicFunction::analytic(std::move(out));
}

PeriodicFunction scale_values(const PeriodicFunction& f, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  if (const auto* s = f.as_step()) {
    StepFunction out = *s;
    for (auto& v : out.values) v *= factor;
    return PeriodicFunction::step(std::move(out.values));
  }
  if (const auto* g = f.as_grid()) {
    GridFunction out = *g;
    for (auto& v : out.samples) v *= factor;
    return PeriodicFunction::grid(std::move(out.samples));
  }
  if (const auto* t = f.as_trig()) {
    TrigPolynomial out = *t;
    for (auto& term : out.terms) term.c *= factor;
    return PeriodicFunction::trig(out.degree, std::move(out.terms));
  }
  AnalyticFunction out = *f.as_analytic();
  out.evaluator = [inner = out.evaluator, factor](double t) { return inner(t) * factor; };
  if (out.lipschitz) *out.lipschitz *= factor;
  return PeriodicFunction::analytic(std::move(out));
}

Complex evaluate(const PeriodicFunction& f, TorusPoint t) {
  if (const auto* values = f.cell_values()) {
    const std::size_t k = values->size();
    auto idx = static_cast<std::size_t>(std::floor(t.value() * static_cast<double>(k)));
    return (*values)[std::min(idx, k - 1)];
  }
  if (const auto* tp = f.as_trig()) {
    Complex sum{};
    for (const auto& term : tp->terms) {
      const double x = static_cast<double>(term.k) * t.value();
      sum += term.c * std::polar(1.0, 2.0 * std::numbers::pi * (x - std::floor(x)));
    }
    return sum;
  }
  return f.as_analytic()->evaluator(t.value());
}

NormEstimate p_norm(const PeriodicFunction& f, double p, const QuadratureOptions& opt) {
  require_p(p);
  if (const auto* values = f.cell_values()) return {detail::step_norm(*values, p), 0.0, true};
  if (const auto* t = f.as_trig()) {
    if (t->terms.empty()) return {0.0, 0.0, true};
    if (t->terms.size() == 1) return {std::abs(t->terms.front().c), 0.0, true};
    if (p == 2.0) {
      double sum = 0.0;
      for (const auto& term : t->terms) sum += std::norm(term.c);
      return {std::sqrt(sum), 0.0, true};
    }
    return detail::sampled_distance(nullptr, detail::stream_of(*t), p, opt);
  }
  return detail::analytic_norm(*f.as_analytic(), p, opt);
}

NormEstimate distance(const PeriodicFunction& f, const PeriodicFunction& g, double p,
                      const QuadratureOptions& opt) {
  require_p(p);
  const auto* fv = f.cell_values();
  const auto* gv = g.cell_values();
  if (fv && gv) {
    const std::size_t cells = std::lcm(fv->size(), gv->size());
    if (cells > kMaxRefinedCells) throw Error(ErrorCode::BudgetExceeded, "common refinement too large");
    StepFunction a = refine(StepFunction{*fv}, cells);
    const StepFunction b = refine(StepFunction{*gv}, cells);
    for (std::size_t j = 0; j < cells; ++j) a.values[j] -= b.values[j];
    return {detail::step_norm(a.values, p), 0.0, true};
  }
  const auto* ft = f.as_trig();
  const auto* gt = g.as_trig();
  if (ft && gt) {
    std::vector<TrigTerm> terms = ft->terms;
    for (const auto& term : gt->terms) terms.push_back({term.k, -term.c});
    return p_norm(PeriodicFunction::trig(std::max(ft->degree, gt->degree), std::move(terms)), p, opt);
  }
  if (fv && gt) return detail::sampled_distance(fv, detail::stream_of(*gt), p, opt);
  if (gv && ft) return detail::sampled_distance(gv, detail::stream_of(*ft), p, opt);

  AnalyticFunction a = as_analytic(f);
  const AnalyticFunction b = as_analytic(g);
  AnalyticFunction diff;
  diff.real_valued = a.real_valued && b.real_valued;
  diff.evaluator = [ea = a.evaluator, eb = b.evaluator](double t) { return ea(t) - eb(t); };
  if (a.lipschitz && b.lipschitz) diff.lipschitz = *a.lipschitz + *b.lipschitz;
  diff.singularities = a.singularities;
  diff.singularities.insert(diff.singularities.end(), b.singularities.begin(), b.singularities.end());
  const PeriodicFunction d = PeriodicFunction::analytic(std::move(diff));
  return detail::analytic_norm(*d.as_analytic(), p, opt);
}

NormEstimate diff_norm(const PeriodicFunction& f, const DyadicShift& delta, double p,
                       const QuadratureOptions& opt) {
  require_p(p);
  if (delta.is_zero()) return {0.0, 0.0, true};
  if (const auto* t = f.as_trig()) {
    const TrigPolynomial d = shift_difference(*t, delta);
    return p_norm(PeriodicFunction::trig(d.degree, d.terms), p, opt);
  }
  return distance(f, shift(f, delta), p, opt);
}

}  // namespace modrate
