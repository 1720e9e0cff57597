#include "modrate/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modrate/detail/fft.hpp"
#include "modrate/detail/sampled.hpp"
#include "modrate/detail/spectrum.hpp"
#include "modrate/error.hpp"

namespace modrate {
namespace detail {

double trigamma(double x) {
  double acc = 0.0;
  while (x < 8.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double x2 = 1.0 / (x * x);
  const double series = 1.0 / x + x2 / 2.0 +
                        (1.0 / x) * x2 * (1.0 / 6.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 42.0 - x2 / 30.0)));
  return acc + series;
}

double residue_tail(std::int64_t r, std::int64_t period, std::int64_t bound) {
  std::int64_t first = bound + 1 + ((r - (bound + 1)) % period + period) % period;
  if (first <= 0) first += period * ((-first) / period + 1);
  const double pp = static_cast<double>(period);
  return trigamma(static_cast<double>(first) / pp) / (pp * pp);
}

StepSpectrum::StepSpectrum(const std::vector<Complex>& values) : dft_(values) {
  const std::size_t k0 = dft_.size();
  real_ = std::all_of(values.begin(), values.end(), [](Complex c) { return c.imag() == 0.0; });
  fft(dft_, -1);
  factor_.resize(k0);
  weight_.assign(k0, 0.0);
  const auto kk = static_cast<std::int64_t>(k0);
  for (std::size_t r = 1; r < k0; ++r) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(k0));
    factor_[r] = unit_root(-static_cast<std::int64_t>(r), 2 * kk) * (s / std::numbers::pi);
    weight_[r] = std::norm(dft_[r]) * s * s / (std::numbers::pi * std::numbers::pi);
  }
}

Complex StepSpectrum::coefficient(std::int64_t k) const {
  const auto k0 = static_cast<std::int64_t>(dft_.size());
  if (k == 0) return dft_[0] / static_cast<double>(k0);
  const std::int64_t r = ((k % k0) + k0) % k0;
  if (r == 0) return {};
  return dft_[static_cast<std::size_t>(r)] * factor_[static_cast<std::size_t>(r)] / static_cast<double>(k);
}

double StepSpectrum::tail_energy(std::int64_t lo, std::int64_t hi) const {
  const auto k0 = static_cast<std::int64_t>(dft_.size());
  double sum = 0.0;
  for (std::int64_t r = 1; r < k0; ++r) {
    const double w = weight_[static_cast<std::size_t>(r)];
    if (w == 0.0) continue;
    sum += w * (residue_tail(r, k0, hi) + residue_tail(k0 - r, k0, -lo));
  }
  return sum;
}

CoeffStream StepSpectrum::partial(std::int64_t lo, std::int64_t hi) const {
  CoeffStream s;
  s.degree = std::max(-lo, hi);
  s.terms = static_cast<std::size_t>(hi - lo + 1);
  s.real_valued = real_ && lo == -hi;
  s.visit = [this, lo, hi](const CoeffStream::Sink& sink) {
    for (std::int64_t k = lo; k <= hi; ++k) {
      const Complex c = coefficient(k);
      if (c != Complex{}) sink(k, c);
    }
  };
  return s;
}

TruncationResidual::TruncationResidual(const PeriodicFunction& f, double p, const SearchConfig& cfg)
    : f_(f), p_(p), cfg_(cfg) {
  if (const auto* values = f.cell_values()) spectrum_ = std::make_unique<StepSpectrum>(*values);
}

TruncationResidual::~TruncationResidual() = default;

NormEstimate TruncationResidual::of_cells(const std::vector<Complex>& values, const StepSpectrum& spec,
                                          std::int64_t lo, std::int64_t hi,
                                          std::optional<double> threshold) const {
  if (spec.cells() == 1) return {0.0, 0.0, true};
  if (p_ == 2.0) {
    const double v = std::sqrt(spec.tail_energy(lo, hi));
    return {v, v * 1e-13, true};
  }
  return sampled_distance(&values, spec.partial(lo, hi), p_, cfg_.quadrature(threshold));
}

NormEstimate TruncationResidual::operator()(std::int64_t lo, std::int64_t hi, std::optional<double> threshold) {
  if (const auto* t = f_.as_trig()) {
    std::vector<TrigTerm> rest;
    for (const auto& term : t->terms) {
      if (term.k < lo || term.k > hi) rest.push_back(term);
    }
    return p_norm(PeriodicFunction::trig(t->degree, std::move(rest)), p_, cfg_.quadrature(threshold));
  }
  if (const auto* values = f_.cell_values()) return of_cells(*values, *spectrum_, lo, hi, threshold);

  const auto& a = *f_.as_analytic();
  const std::int64_t width = hi - lo;
  const double lebesgue = p_ == 2.0 ? 1.0 : lebesgue_bound(std::max<std::int64_t>(width, 1));
  const int g = dyadic_scale(a.singularities, 30);
  const bool certified = a.lipschitz && g >= 0;
  std::size_t n = std::max<std::size_t>({std::size_t{1} << 14, next_pow2(static_cast<std::size_t>(8 * std::max(-lo, hi) + 8)),
                                         std::size_t{1} << std::max(g, 0)});
  if (certified) {
    const double want = threshold ? *threshold / 32.0 : cfg_.norm_tolerance;
    while ((1.0 + lebesgue) * *a.lipschitz / (2.0 * static_cast<double>(n)) > want && 2 * n <= cfg_.max_samples) n *= 2;
  }
  if (n > cfg_.max_samples) throw Error(ErrorCode::QuadratureBudgetExceeded, "discretization exceeds the sample budget");
  if (disc_cells_ != n) {
    disc_ = discretize(f_, n);
    disc_cells_ = n;
    spectrum_ = std::make_unique<StepSpectrum>(disc_.values);
  }
  NormEstimate r = of_cells(disc_.values, *spectrum_, lo, hi, threshold);
  if (!certified) {
    r.certified = false;
    return r;
  }
  r.error_radius += (1.0 + lebesgue) * disc_.sup_error;
  return r;
}

}  // namespace detail

Complex CoeffVector::at(std::int64_t k) const {
  if (k < -K || k > K) return {};
  return coeffs[static_cast<std::size_t>(k + K)];
}

CoeffVector fourier_coeffs(const PeriodicFunction& f, std::int64_t K) {
  if (K < 0) throw Error(ErrorCode::InvalidArgument, "K must be nonnegative");
  CoeffVector out;
  out.K = K;
  out.coeffs.assign(static_cast<std::size_t>(2 * K + 1), Complex{});
  if (const auto* t = f.as_trig()) {
    for (const auto& term : t->terms) {
      if (term.k >= -K && term.k <= K) out.coeffs[static_cast<std::size_t>(term.k + K)] = term.c;
    }
    return out;
  }
  if (const auto* values = f.cell_values()) {
    const detail::StepSpectrum spec(*values);
    for (std::int64_t k = -K; k <= K; ++k) out.coeffs[static_cast<std::size_t>(k + K)] = spec.coefficient(k);
    return out;
  }
  const auto& a = *f.as_analytic();
  const int g = detail::dyadic_scale(a.singularities, 30);
  const std::size_t n = std::max<std::size_t>({std::size_t{1} << 16, detail::next_pow2(static_cast<std::size_t>(8 * K + 8)),
                                               std::size_t{1} << std::max(g, 0)});
  if (n > (std::size_t{1} << 24)) throw Error(ErrorCode::QuadratureBudgetExceeded, "too many coefficients requested");
  const detail::Discretization d = detail::discretize(f, n);
  const detail::StepSpectrum spec(d.values);
  for (std::int64_t k = -K; k <= K; ++k) out.coeffs[static_cast<std::size_t>(k + K)] = spec.coefficient(k);
  out.exact = false;
  out.certified = d.certified;
  if (d.certified) {
    out.error = d.sup_error;
  } else {
    const detail::Discretization coarse = detail::discretize(f, n / 2);
    const detail::StepSpectrum cs(coarse.values);
    for (std::int64_t k = -K; k <= K; ++k) out.error = std::max(out.error, std::abs(cs.coefficient(k) - spec.coefficient(k)));
  }
  return out;
}

PeriodicFunction partial_sum(const PeriodicFunction& f, std::int64_t K) {
  const CoeffVector c = fourier_coeffs(f, K);
  std::vector<TrigTerm> terms;
  for (std::int64_t k = -K; k <= K; ++k) {
    const Complex v = c.at(k);
    if (v != Complex{}) terms.push_back({k, v});
  }
  return PeriodicFunction::trig(K, std::move(terms));
}

PeriodicFunction fejer_mean(const PeriodicFunction& f, std::int64_t K) {
  const CoeffVector c = fourier_coeffs(f, K);
  std::vector<TrigTerm> terms;
  const double denom = static_cast<double>(K + 1);
  for (std::int64_t k = -K; k <= K; ++k) {
    const double w = 1.0 - static_cast<double>(k < 0 ? -k : k) / denom;
    const Complex v = c.at(k) * w;
    if (v != Complex{}) terms.push_back({k, v});
  }
  return PeriodicFunction::trig(K, std::move(terms));
}

double kernel_eval(const KernelSpec& spec, TorusPoint t) {
  const double x = t.value();
  const double kk = static_cast<double>(spec.K);
  const double s = std::sin(std::numbers::pi * x);
  if (spec.kind == KernelSpec::Kind::Dirichlet) {
    if (x == 0.0) return 2.0 * kk + 1.0;
    return std::sin(std::numbers::pi * (2.0 * kk + 1.0) * x) / s;
  }
  if (x == 0.0) return kk + 1.0;
  const double q = std::sin(std::numbers::pi * (kk + 1.0) * x) / s;
  return q * q / (kk + 1.0);
}

NormEstimate fourier_residual(const PeriodicFunction& f, double p, unsigned m, const SearchConfig& cfg,
                              std::optional<double> threshold) {
  require_rate_p(p);
  if (m > 62) throw Error(ErrorCode::BudgetExceeded, "frequency cutoff too large");
  detail::TruncationResidual residual(f, p, cfg);
  const std::int64_t K = std::int64_t{1} << m;
  return residual(-K, K, threshold);
}

RateProfile fourier_rate(const PeriodicFunction& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  detail::TruncationResidual residual(f, p, cfg);
  detail::SearchOptions opt;
  opt.kind = "fourier";
  opt.p = p;
  opt.monotone = p == 2.0;
  return detail::search_profile(
      [&](unsigned m, double thr) {
        if (m > 62) throw Error(ErrorCode::BudgetExceeded, "frequency cutoff too large");
        const std::int64_t K = std::int64_t{1} << m;
        if (const auto* t = f.as_trig(); t && K >= t->degree) return NormEstimate{0.0, 0.0, true};
        return residual(-K, K, thr);
      },
      cfg, opt);
}

}  // namespace modrate
