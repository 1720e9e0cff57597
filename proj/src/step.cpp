#include "modrate/step.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "modrate/detail/sampled.hpp"
#include "modrate/error.hpp"

namespace modrate {
namespace detail {
namespace {

struct Eval {
  double f = 0.0;
  double gx = 0.0;
  double gy = 0.0;
};

Eval objective(const Complex* v, std::size_t count, double p, Complex c, bool gradient) {
  Eval e;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex d = c - v[i];
    const double r = std::abs(d);
    if (r == 0.0) continue;
    const double rp1 = p == 2.0 ? r : std::pow(r, p - 1.0);
    e.f += rp1 * r;
    if (gradient) {
      e.gx += p * rp1 * d.real() / r;
      e.gy += p * rp1 * d.imag() / r;
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  e.f *= inv;
  e.gx *= inv;
  e.gy *= inv;
  return e;
}

double reach(const Complex* v, std::size_t count, Complex c) {
  double r = 0.0;
  for (std::size_t i = 0; i < count; ++i) r = std::max(r, std::abs(c - v[i]));
  return r;
}

CellMinimum finish(const Complex* v, std::size_t count, double p, Complex c, double width) {
  const Eval e = objective(v, count, p, c, true);
  const double g = std::hypot(e.gx, e.gy);
  CellMinimum out;
  out.c = c;
  out.upper = e.f;
  out.lower = std::max(0.0, e.f - g * width);
  out.converged = out.lower >= out.upper * (1.0 - 1e-9);
  return out;
}

CellMinimum minimize_real(const Complex* v, std::size_t count, double p) {
  double a = v[0].real();
  double b = a;
  for (std::size_t i = 1; i < count; ++i) {
    a = std::min(a, v[i].real());
    b = std::max(b, v[i].real());
  }
  if (a == b) return {Complex(a, 0.0), 0.0, 0.0, true};
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    const Eval e = objective(v, count, p, Complex(mid, 0.0), true);
    if (e.gx == 0.0) return finish(v, count, p, Complex(mid, 0.0), 0.0);
    if (e.gx > 0.0) {
      b = mid;
    } else {
      a = mid;
    }
    if (std::fabs(e.gx) * (b - a) <= 1e-14 * e.f) break;
  }
  return finish(v, count, p, Complex(0.5 * (a + b), 0.0), b - a);
}

CellMinimum minimize_complex(const Complex* v, std::size_t count, double p) {
  Complex c = std::accumulate(v, v + count, Complex{}) / static_cast<double>(count);
  for (int it = 0; it < 100; ++it) {
    Eval e = objective(v, count, p, c, true);
    const double g = std::hypot(e.gx, e.gy);
    if (g == 0.0 || g * reach(v, count, c) <= 1e-13 * e.f) break;
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Complex d = c - v[i];
      const double r = std::max(std::abs(d), 1e-12);
      const double w = p * std::pow(r, p - 2.0);
      const double ux = d.real() / r;
      const double uy = d.imag() / r;
      hxx += w * (1.0 + (p - 2.0) * ux * ux);
      hxy += w * (p - 2.0) * ux * uy;
      hyy += w * (1.0 + (p - 2.0) * uy * uy);
    }
    const double inv = 1.0 / static_cast<double>(count);
    hxx *= inv;
    hxy *= inv;
    hyy *= inv;
    const double det = hxx * hyy - hxy * hxy;
    Complex step = det > 0.0 ? Complex(-(hyy * e.gx - hxy * e.gy) / det, -(hxx * e.gy - hxy * e.gx) / det)
                             : Complex(-e.gx, -e.gy);
    double t = 1.0;
    bool moved = false;
    while (t > 1e-12) {
      const Complex trial = c + t * step;
      if (objective(v, count, p, trial, false).f < e.f) {
        c = trial;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return finish(v, count, p, c, reach(v, count, c));
}

}  // namespace

CellMinimum minimize_cell(const Complex* v, std::size_t count, double p) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "empty cell");
  const bool real = std::all_of(v, v + count, [](Complex c) { return c.imag() == 0.0; });
  return real ? minimize_real(v, count, p) : minimize_complex(v, count, p);
}

}  // namespace detail

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 26;

double one_minus_sinc_sq(double x) {
  if (x == 0.0) return 0.0;
  if (std::fabs(x) < 0.1) {
    const double x2 = x * x;
    const double one_minus = x2 / 6.0 - x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0 - x2 * x2 * x2 * x2 / 362880.0;
    return one_minus * (2.0 - one_minus);
  }
  const double s = std::sin(x) / x;
  return 1.0 - s * s;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::vector<Complex> group_means(const std::vector<Complex>& fine, std::size_t K) {
  const std::size_t per = fine.size() / K;
  std::vector<Complex> out(K);
  for (std::size_t j = 0; j < K; ++j) {
    Complex s{};
    for (std::size_t i = 0; i < per; ++i) s += fine[j * per + i];
    out[j] = s / static_cast<double>(per);
  }
  return out;
}

std::vector<Complex> refined_cells(const std::vector<Complex>& values, std::size_t K) {
  const std::size_t cells = std::lcm(values.size(), K);
  if (cells > kMaxCells) throw Error(ErrorCode::BudgetExceeded, "common refinement too large");
  return refine(StepFunction{values}, cells).values;
}

// Number of cells for discretizing smooth or analytic inputs against K target cells.
std::size_t discretization_cells(const PeriodicFunction& f, std::size_t K, const SearchConfig& cfg,
                                 std::optional<double> threshold) {
  int g = 0;
  double lip = 0.0;
  bool certified = true;
  if (const auto* t = f.as_trig()) {
    lip = derivative_bound(*t, 1);
  } else {
    const auto& a = *f.as_analytic();
    g = std::max(detail::dyadic_scale(a.singularities, 30), 0);
    certified = a.lipschitz && detail::dyadic_scale(a.singularities, 30) >= 0;
    lip = a.lipschitz.value_or(0.0);
  }
  std::size_t n = std::max<std::size_t>({K * 8, std::size_t{1} << 12, std::size_t{1} << g});
  n = K * detail::next_pow2((n + K - 1) / K);
  if (certified) {
    const double want = threshold ? *threshold / 32.0 : cfg.norm_tolerance;
    while (lip / (2.0 * static_cast<double>(n)) > want && 2 * n <= cfg.max_samples) n *= 2;
  } else {
    while (n < (std::size_t{1} << 16) && 2 * n <= cfg.max_samples) n *= 2;
  }
  if (n > cfg.max_samples) throw Error(ErrorCode::QuadratureBudgetExceeded, "discretization exceeds the sample budget");
  return n;
}

NormEstimate trig_projection_l2(const TrigPolynomial& t, std::size_t K) {
  const auto kk = static_cast<std::int64_t>(K);
  // Orthogonal residue classes k mod K.
  std::vector<std::pair<std::int64_t, TrigTerm>> classes;
  for (const auto& term : t.terms) classes.push_back({((term.k % kk) + kk) % kk, term});
  std::stable_sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < classes.size();) {
    std::size_t j = i;
    while (j < classes.size() && classes[j].first == classes[i].first) ++j;
    if (j - i == 1) {
      const auto& term = classes[i].second;
      total += std::norm(term.c) * one_minus_sinc_sq(std::numbers::pi * static_cast<double>(term.k) / static_cast<double>(K));
    } else {
      double energy = 0.0;
      Complex proj{};
      for (std::size_t q = i; q < j; ++q) {
        const auto& term = classes[q].second;
        const double x = std::numbers::pi * static_cast<double>(term.k) / static_cast<double>(K);
        const Complex a = (term.k % kk == 0 && term.k != 0) ? Complex{} : sinc(x) * std::polar(1.0, x);
        energy += std::norm(term.c);
        proj += term.c * a;
      }
      total += std::max(0.0, energy - std::norm(proj));
    }
    for (std::size_t q = i; q < j; ++q) scale += std::norm(classes[q].second.c);
    i = j;
  }
  const double v = std::sqrt(std::max(total, 0.0));
  return {v, std::sqrt(scale) * 1e-15 + v * 1e-14, true};
}

std::vector<Complex> trig_cell_means(const TrigPolynomial& t, std::size_t K) {
  const auto kk = static_cast<std::int64_t>(K);
  std::vector<TrigTerm> weighted;
  for (const auto& term : t.terms) {
    if (term.k != 0 && term.k % kk == 0) continue;
    weighted.push_back({term.k, term.c * sinc(std::numbers::pi * static_cast<double>(term.k) / static_cast<double>(K))});
  }
  const TrigPolynomial w{t.degree, std::move(weighted)};
  return detail::evaluate_on_grid(detail::stream_of(w), K, 0.5);
}

StepApproxResult minimize_cells(const std::vector<Complex>& fine, std::size_t K, double p) {
  const std::size_t per = fine.size() / K;
  std::vector<Complex> centers(K);
  double upper = 0.0;
  double lower = 0.0;
  bool converged = true;
  for (std::size_t j = 0; j < K; ++j) {
    const detail::CellMinimum cm = detail::minimize_cell(fine.data() + j * per, per, p);
    centers[j] = cm.c;
    upper += cm.upper;
    lower += cm.lower;
    converged = converged && cm.converged;
  }
  const double kk = static_cast<double>(K);
  const double hi = std::pow(upper / kk, 1.0 / p);
  const double lo = std::pow(lower / kk, 1.0 / p);
  return {PeriodicFunction::step(std::move(centers)), {hi, hi - lo, true}, converged};
}

}  // namespace

StepApproxResult step_project(const PeriodicFunction& f, std::size_t K, double p, const SearchConfig& cfg) {
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
  if (const auto* values = f.cell_values()) {
    const std::vector<Complex> fine = refined_cells(*values, K);
    PeriodicFunction approx = PeriodicFunction::step(group_means(fine, K));
    const NormEstimate err = distance(f, approx, p);
    return {std::move(approx), err, p == 2.0};
  }
  if (const auto* t = f.as_trig()) {
    PeriodicFunction approx = PeriodicFunction::step(trig_cell_means(*t, K));
    const NormEstimate err = p == 2.0 ? trig_projection_l2(*t, K) : distance(approx, f, p, cfg.quadrature());
    return {std::move(approx), err, p == 2.0};
  }
  const std::size_t n = discretization_cells(f, K, cfg, std::nullopt);
  const detail::Discretization d = detail::discretize(f, n);
  PeriodicFunction approx = PeriodicFunction::step(group_means(d.values, K));
  NormEstimate err = distance(PeriodicFunction::step(d.values), approx, p);
  err.error_radius += 2.0 * d.sup_error;
  err.certified = d.certified;
  return {std::move(approx), err, p == 2.0 && d.certified};
}

StepApproxResult best_step_error(const PeriodicFunction& f, std::size_t K, double p, const SearchConfig& cfg,
                                 std::optional<double> threshold) {
  require_rate_p(p);
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "K must be at least 1");
  if (p == 2.0 && !f.as_analytic()) return step_project(f, K, p, cfg);
  if (const auto* values = f.cell_values()) {
    if (K % values->size() == 0) {
      return {PeriodicFunction::step(refine(StepFunction{*values}, K).values), {0.0, 0.0, true}, true};
    }
    return minimize_cells(refined_cells(*values, K), K, p);
  }
  const std::size_t n = discretization_cells(f, K, cfg, threshold);
  const detail::Discretization d = detail::discretize(f, n);
  StepApproxResult r = p == 2.0 ? step_project(PeriodicFunction::step(d.values), K, p, cfg)
                                : minimize_cells(d.values, K, p);
  r.error.error_radius += d.sup_error;
  r.error.certified = d.certified;
  r.optimal = r.optimal && d.certified;
  return r;
}

RateProfile step_rate(const PeriodicFunction& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  detail::SearchOptions opt;
  opt.kind = "step";
  opt.p = p;
  return detail::search_profile(
      [&](unsigned m, double thr) {
        if (m > 40) throw Error(ErrorCode::BudgetExceeded, "cell count too large");
        const std::size_t K = std::size_t{1} << m;
        if (const auto* values = f.cell_values(); values && K % values->size() == 0) return NormEstimate{0.0, 0.0, true};
        if (const auto* t = f.as_trig(); t && t->terms.size() == 1 && t->terms.front().k == 0) {
          return NormEstimate{0.0, 0.0, true};
        }
        return best_step_error(f, K, p, cfg, thr).error;
      },
      cfg, opt);
}

}  // namespace modrate
