#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "modrate/detail/fft.hpp"
#include "modrate/detail/sampled.hpp"
#include "modrate/error.hpp"

namespace modrate::detail {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Relative allowance for floating point rounding in sampled sums and transforms.
constexpr double kRoundingSlack = 0x1p-40;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Integral over [0,1] of |a + (b - a) u|^p for real a, b.
double linear_power_integral(double a, double b, double p) {
  double lo = std::fabs(a);
  double hi = std::fabs(b);
  if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
    return (std::pow(lo, p + 1.0) + std::pow(hi, p + 1.0)) / ((p + 1.0) * (lo + hi));
  }
  if (lo > hi) std::swap(lo, hi);
  if (hi == 0.0) return 0.0;
  if (lo == hi) return std::pow(hi, p);
  const double gap = (hi - lo) / hi;
  const double num = -std::expm1((p + 1.0) * std::log1p(-gap));
  return std::pow(hi, p) * num / ((p + 1.0) * gap);
}

bool decisive(const NormEstimate& e, const QuadratureOptions& opt) {
  if (e.error_radius <= opt.target_radius) return true;
  if (!opt.threshold) return false;
  const double t = *opt.threshold;
  return e.upper() <= t || e.lower() > t;
}

bool stream_is_real(const TrigPolynomial& t) {
  for (const auto& term : t.terms) {
    if (std::conj(t.coefficient(-term.k)) != term.c) return false;
  }
  return true;
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

template <class F>
GkResult gauss_kronrod(const F& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double center = g(c);
  double kronrod = center * kKronrodWeights[7];
  double gauss = center * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kKronrodNodes[i];
    const double s = g(c - x) + g(c + x);
    kronrod += kKronrodWeights[i] * s;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * s;
  }
  return {kronrod * h, std::fabs((kronrod - gauss) * h)};
}

template <class F>
GkResult adaptive_integral(const F& g, double a, double b, double tol, std::size_t max_evals) {
  struct Piece {
    double a, b;
    GkResult r;
  };
  std::vector<Piece> pieces{{a, b, gauss_kronrod(g, a, b)}};
  std::size_t evals = 15;
  auto worst = [](const Piece& x, const Piece& y) { return x.r.error < y.r.error; };
  double total_err = pieces.front().r.error;
  while (total_err > tol && evals + 30 <= max_evals) {
    std::pop_heap(pieces.begin(), pieces.end(), worst);
    const Piece p = pieces.back();
    pieces.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      pieces.push_back(p);
      std::push_heap(pieces.begin(), pieces.end(), worst);
      break;
    }
    pieces.push_back({p.a, mid, gauss_kronrod(g, p.a, mid)});
    std::push_heap(pieces.begin(), pieces.end(), worst);
    pieces.push_back({mid, p.b, gauss_kronrod(g, mid, p.b)});
    std::push_heap(pieces.begin(), pieces.end(), worst);
    evals += 30;
    total_err = 0.0;
    for (const auto& q : pieces) total_err += q.r.error;
  }
  GkResult out{0.0, 0.0};
  for (const auto& q : pieces) {
    out.value += q.r.value;
    out.error += q.r.error;
  }
  return out;
}

std::vector<Complex> midpoint_samples(const AnalyticFunction& f, std::size_t cells) {
  std::vector<Complex> v(cells);
  const double h = 1.0 / static_cast<double>(cells);
  for (std::size_t j = 0; j < cells; ++j) v[j] = f.evaluator((static_cast<double>(j) + 0.5) * h);
  return v;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t r = 1;
  while (r < n) r <<= 1;
  return r;
}

int dyadic_scale(const std::vector<double>& points, int max_scale) {
  int scale = 0;
  for (double x : points) {
    int s = 0;
    while (s <= max_scale) {
      const double y = std::ldexp(x, s);
      if (y == std::floor(y)) break;
      ++s;
    }
    if (s > max_scale) return -1;
    scale = std::max(scale, s);
  }
  return scale;
}

Complex unit_root(std::int64_t num, std::int64_t den) {
  std::int64_t r = mod_floor(num, den);
  if ((static_cast<__int128>(r) * 4) % den == 0) {
    switch (static_cast<int>((static_cast<__int128>(r) * 4) / den)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  if (r > den / 2) r -= den;
  const double angle = kTwoPi * (static_cast<double>(r) / static_cast<double>(den));
  return {std::cos(angle), std::sin(angle)};
}

double step_norm(const std::vector<Complex>& v, double p) {
  double sum = 0.0;
  if (p == 2.0) {
    for (const Complex& c : v) sum += std::norm(c);
  } else if (p == 1.0) {
    for (const Complex& c : v) sum += std::abs(c);
  } else {
    for (const Complex& c : v) sum += std::pow(std::abs(c), p);
  }
  return std::pow(sum / static_cast<double>(v.size()), 1.0 / p);
}

double lebesgue_bound(std::int64_t degree) {
  return 3.0 + std::log(static_cast<double>(std::max<std::int64_t>(degree, 1)));
}

double norm_radius_from_integral(double integral, double e, double p) {
  const double value = std::pow(std::max(integral, 0.0), 1.0 / p);
  const double lower = std::pow(std::max(integral - e, 0.0), 1.0 / p);
  const double upper = std::pow(std::max(integral, 0.0) + e, 1.0 / p);
  return std::max(value - lower, upper - value);
}

CoeffStream stream_of(const TrigPolynomial& t) {
  CoeffStream s;
  s.degree = t.degree;
  s.terms = t.terms.size();
  s.real_valued = stream_is_real(t);
  s.visit = [&t](const CoeffStream::Sink& sink) {
    for (const auto& term : t.terms) sink(term.k, term.c);
  };
  return s;
}

double derivative_bound(const CoeffStream& s, int order) {
  double sum = 0.0;
  s.visit([&](std::int64_t k, Complex c) {
    sum += std::abs(c) * std::pow(kTwoPi * static_cast<double>(k < 0 ? -k : k), order);
  });
  return sum;
}

std::vector<Complex> evaluate_on_grid(const CoeffStream& s, std::size_t n, double offset) {
  const auto nn = static_cast<std::int64_t>(n);
  const bool half = offset == 0.5;
  auto offset_phase = [&](std::int64_t k) -> Complex {
    if (offset == 0.0) return {1.0, 0.0};
    if (half) return unit_root(mod_floor(k, 2 * nn), 2 * nn);
    const double x = static_cast<double>(mod_floor(k, nn)) * offset / static_cast<double>(n);
    return std::polar(1.0, kTwoPi * (x - std::floor(x)));
  };
  std::vector<Complex> out(n);
  if (s.terms <= 16) {
    std::vector<Complex> roots(n);
    for (std::size_t j = 0; j < n; ++j) roots[j] = unit_root(static_cast<std::int64_t>(j), nn);
    s.visit([&](std::int64_t k, Complex c) {
      const Complex a = c * offset_phase(k);
      const auto km = static_cast<std::size_t>(mod_floor(k, nn));
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += a * roots[idx];
        idx += km;
        if (idx >= n) idx -= n;
      }
    });
    return out;
  }
  s.visit([&](std::int64_t k, Complex c) { out[static_cast<std::size_t>(mod_floor(k, nn))] += c * offset_phase(k); });
  fft(out, +1);
  return out;
}

NormEstimate sampled_distance(const std::vector<Complex>* step, const CoeffStream& trig, double p,
                              const QuadratureOptions& opt) {
  const std::vector<Complex> zero{Complex{}};
  const std::vector<Complex>& cells = step ? *step : zero;
  const std::size_t k0 = cells.size();
  const bool real = trig.real_valued &&
                    std::all_of(cells.begin(), cells.end(), [](Complex c) { return c.imag() == 0.0; });
  const double l1 = derivative_bound(trig, 1);
  const double l2 = real ? derivative_bound(trig, 2) : 0.0;
  double scale_bound = 0.0;
  trig.visit([&](std::int64_t, Complex c) { scale_bound += std::abs(c); });
  double cell_max = 0.0;
  for (const Complex& c : cells) cell_max = std::max(cell_max, std::abs(c));
  scale_bound += cell_max;

  const auto want = static_cast<std::size_t>(std::max<std::int64_t>(64, 4 * (trig.degree + 1)));
  std::size_t n = k0 * next_pow2((want + k0 - 1) / k0);
  if (n > opt.max_samples) throw Error(ErrorCode::QuadratureBudgetExceeded, "sample budget too small for this degree");

  NormEstimate best;
  bool have = false;
  while (n <= opt.max_samples) {
    const double h = 1.0 / static_cast<double>(n);
    const std::size_t per_cell = n / k0;
    double sum = 0.0;
    double radius = 0.0;
    if (real) {
      const std::vector<Complex> t = evaluate_on_grid(trig, n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double s = cells[j / per_cell].real();
        const double a = t[j].real() - s;
        const double b = t[(j + 1) % n].real() - s;
        sum += linear_power_integral(a, b, p);
      }
      radius = l2 * h * h / 8.0;
    } else {
      const std::vector<Complex> t = evaluate_on_grid(trig, n, 0.5);
      for (std::size_t j = 0; j < n; ++j) {
        const double d = std::abs(t[j] - cells[j / per_cell]);
        sum += p == 2.0 ? d * d : std::pow(d, p);
      }
      radius = l1 * h / 2.0;
    }
    const double value = std::pow(sum * h, 1.0 / p);
    radius += kRoundingSlack * std::log2(static_cast<double>(n)) * (scale_bound + value);
    best = {value, radius, true};
    have = true;
    if (decisive(best, opt)) return best;
    n *= 2;
  }
  if (!have) throw Error(ErrorCode::QuadratureBudgetExceeded, "no sample count within budget");
  return best;
}

NormEstimate analytic_norm(const AnalyticFunction& f, double p, const QuadratureOptions& opt) {
  const int g = dyadic_scale(f.singularities, 30);
  if (f.lipschitz && g >= 0) {
    std::size_t n = std::max<std::size_t>(std::size_t{1} << g, 1024);
    NormEstimate best;
    bool have = false;
    while (n <= opt.max_samples) {
      const std::vector<Complex> v = midpoint_samples(f, n);
      const double value = step_norm(v, p);
      best = {value, *f.lipschitz / (2.0 * static_cast<double>(n)) + kRoundingSlack * value, true};
      have = true;
      if (decisive(best, opt)) return best;
      n *= 4;
    }
    if (have) return best;
    throw Error(ErrorCode::QuadratureBudgetExceeded, "singularity grid exceeds the sample budget");
  }

  std::vector<double> cuts = f.singularities;
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto integrand = [&](double t) { return std::pow(std::abs(f.evaluator(t)), p); };
  double integral = 0.0;
  double err = 0.0;
  const std::size_t budget = std::max<std::size_t>(opt.max_samples / cuts.size(), 1000);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const GkResult r = adaptive_integral(integrand, cuts[i], cuts[i + 1], 1e-13, budget);
    integral += r.value;
    err += r.error;
  }
  const double value = std::pow(std::max(integral, 0.0), 1.0 / p);
  return {value, norm_radius_from_integral(integral, err, p) + kRoundingSlack * value, false};
}

Discretization discretize(const PeriodicFunction& f, std::size_t cells) {
  if (cells == 0) throw Error(ErrorCode::InvalidArgument, "discretization needs at least one cell");
  if (const auto* values = f.cell_values()) {
    if (cells % values->size() != 0) throw Error(ErrorCode::InvalidArgument, "cells must refine the step partition");
    return {refine(StepFunction{*values}, cells).values, 0.0, true};
  }
  if (const auto* t = f.as_trig()) {
    const CoeffStream s = stream_of(*t);
    Discretization d{evaluate_on_grid(s, cells, 0.5), 0.0, true};
    d.sup_error = derivative_bound(s, 1) / (2.0 * static_cast<double>(cells));
    return d;
  }
  const auto& a = *f.as_analytic();
  Discretization d{midpoint_samples(a, cells), 0.0, false};
  const int g = dyadic_scale(a.singularities, 62);
  if (a.lipschitz && g >= 0 && g < 63 && cells % (std::size_t{1} << g) == 0) {
    d.sup_error = *a.lipschitz / (2.0 * static_cast<double>(cells));
    d.certified = true;
  }
  return d;
}

}  // namespace modrate::detail
