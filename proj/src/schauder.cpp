#include "modrate/schauder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "modrate/detail/fft.hpp"
#include "modrate/detail/spectrum.hpp"
#include "modrate/error.hpp"
#include "modrate/step.hpp"

namespace modrate {
namespace {

double interval_value(const PeriodicFunction& f, double x) {
  if (const auto* a = f.as_analytic()) return a->evaluator(x).real();
  return evaluate(f, TorusPoint(x)).real();
}

NormEstimate haar_distance(const PeriodicFunction& f, std::size_t count, double p, const SearchConfig& cfg) {
  if (count == 0) return p_norm(f, p, cfg.quadrature());
  std::size_t level = 0;
  while ((std::size_t{2} << level) <= count) ++level;
  const std::size_t cells = std::size_t{1} << level;
  if (cells == count) return step_project(f, cells, p, cfg).error;
  // Partially refined level: the first `split` cells of size 1/cells are halved.
  const std::size_t split = count - cells;
  const StepApproxResult fine = step_project(f, 2 * cells, p, cfg);
  std::vector<Complex> v = fine.approximant.as_step()->values;
  for (std::size_t j = split; j < cells; ++j) {
    const Complex mean = 0.5 * (v[2 * j] + v[2 * j + 1]);
    v[2 * j] = mean;
    v[2 * j + 1] = mean;
  }
  const PeriodicFunction approx = PeriodicFunction::step(std::move(v));
  if (p == 2.0) {
    const NormEstimate coarse = distance(fine.approximant, approx, 2.0);
    const double value = std::hypot(fine.error.value, coarse.value);
    return {value, fine.error.error_radius + coarse.error_radius, fine.error.certified};
  }
  return distance(f, approx, p, cfg.quadrature());
}

}  // namespace

std::int64_t trig_basis_frequency(std::size_t k) noexcept {
  const auto half = static_cast<std::int64_t>((k + 1) / 2);
  return k % 2 == 1 ? half : -half;
}

Basis trig_basis(double p) {
  Basis b;
  b.name = "trig";
  b.projection = p == 2.0 ? Projection::Orthogonal : Projection::PartialSum;
  b.ambient_p = p;
  b.element = [](std::size_t k) {
    const std::int64_t freq = trig_basis_frequency(k);
    return PeriodicFunction::trig(freq < 0 ? -freq : freq, {{freq, 1.0}});
  };
  return b;
}

Basis haar_basis(double p) {
  Basis b;
  b.name = "haar";
  b.projection = p == 2.0 ? Projection::Orthogonal : Projection::PartialSum;
  b.ambient_p = p;
  b.element = [](std::size_t k) {
    if (k == 0) return PeriodicFunction::step({1.0});
    std::size_t level = 0;
    while ((std::size_t{2} << level) <= k) ++level;
    const std::size_t first = std::size_t{1} << level;
    const std::size_t i = k - first;
    std::vector<Complex> v(2 * first, 0.0);
    const double height = std::sqrt(static_cast<double>(first));
    v[2 * i] = height;
    v[2 * i + 1] = -height;
    return PeriodicFunction::step(std::move(v));
  };
  return b;
}

Basis chebyshev_basis() {
  Basis b;
  b.name = "chebyshev";
  b.projection = Projection::NearBest;
  b.element = [](std::size_t k) {
    AnalyticFunction a;
    a.evaluator = [k](double x) { return Complex(std::cos(static_cast<double>(k) * std::acos(std::clamp(2.0 * x - 1.0, -1.0, 1.0))), 0.0); };
    a.lipschitz = 2.0 * static_cast<double>(k * k);
    if (k % 2 == 1) a.singularities = {0.0};
    return PeriodicFunction::analytic(std::move(a));
  };
  return b;
}

Basis designated_first(const PeriodicFunction& f0, Basis base) {
  Basis b;
  b.name = "designated:" + base.name;
  b.projection = Projection::NearBest;
  b.ambient_p = base.ambient_p;
  b.first = std::make_shared<const PeriodicFunction>(f0);
  b.rest = std::make_shared<const Basis>(std::move(base));
  b.element = [first = b.first, rest = b.rest](std::size_t k) { return k == 0 ? *first : rest->element(k - 1); };
  return b;
}

std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f, unsigned levels) {
  if (levels == 0 || levels > 24) throw Error(ErrorCode::InvalidArgument, "levels must be in 1..24");
  const std::size_t n = std::size_t{1} << levels;
  std::vector<double> y(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double x = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    y[j] = f(std::clamp(0.5 * (x + 1.0), 0.0, 1.0));
  }
  std::vector<double> a = detail::dct1(y);
  for (double& v : a) v /= static_cast<double>(n);
  a.front() *= 0.5;
  a.back() *= 0.5;
  return a;
}

NormEstimate basis_distance(const PeriodicFunction& f, const Basis& basis, std::size_t count, const SearchConfig& cfg,
                            std::optional<double> threshold) {
  if (basis.first) {
    if (count >= 1 && f == *basis.first) return {0.0, 0.0, true};
    return basis_distance(f, *basis.rest, count == 0 ? 0 : count - 1, cfg, threshold);
  }
  if (!basis.ambient_p) {
    if (f.cell_values()) throw Error(ErrorCode::BasisNormMismatch, "step functions are not continuous on [0;1]");
    const std::vector<double> a = chebyshev_coefficients([&](double x) { return interval_value(f, x); });
    double tail = 0.0;
    for (std::size_t j = a.size(); j-- > count;) tail += std::fabs(a[j]);
    return {tail, 0.0, false};
  }
  const double p = *basis.ambient_p;
  if (basis.name == "haar") return haar_distance(f, count, p, cfg);
  if (basis.name == "trig") {
    if (count == 0) return p_norm(f, p, cfg.quadrature(threshold));
    detail::TruncationResidual residual(f, p, cfg);
    const auto hi = static_cast<std::int64_t>(count / 2);
    const auto lo = -static_cast<std::int64_t>((count - 1) / 2);
    return residual(lo, hi, threshold);
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported basis '" + basis.name + "'");
}

RateProfile b_rate(const PeriodicFunction& f, const Basis& basis, const SearchConfig& cfg) {
  if (basis.ambient_p) require_rate_p(*basis.ambient_p);
  const bool exact = basis.projection == Projection::Orthogonal;
  detail::SearchOptions opt;
  opt.kind = "basis";
  opt.p = basis.ambient_p.value_or(std::numeric_limits<double>::infinity());
  opt.adjust = [exact](unsigned, EntryKind k) { return exact ? k : EntryKind::UpperBound; };
  if (!basis.ambient_p) {
    if (f.cell_values()) throw Error(ErrorCode::BasisNormMismatch, "step functions are not continuous on [0;1]");
    // One coefficient pass serves every m.
    const std::vector<double> a = chebyshev_coefficients([&](double x) { return interval_value(f, x); });
    std::vector<double> suffix(a.size() + 1, 0.0);
    for (std::size_t j = a.size(); j-- > 0;) suffix[j] = suffix[j + 1] + std::fabs(a[j]);
    return detail::search_profile(
        [&](unsigned m, double) {
          const std::size_t count = std::size_t{1} << std::min(m, 40u);
          if (count > a.size()) throw Error(ErrorCode::BudgetExceeded, "degree beyond coefficient table");
          return NormEstimate{suffix[count], 0.0, false};
        },
        cfg, opt);
  }
  return detail::search_profile(
      [&](unsigned m, double thr) {
        if (m > 40) throw Error(ErrorCode::BudgetExceeded, "basis prefix too long");
        return basis_distance(f, basis, std::size_t{1} << m, cfg, thr);
      },
      cfg, opt);
}

RateProfile weierstrass_degree_rate(const std::function<double(double)>& f, const SearchConfig& cfg) {
  const std::vector<double> a = chebyshev_coefficients(f);
  std::vector<double> suffix(a.size() + 1, 0.0);
  for (std::size_t j = a.size(); j-- > 0;) suffix[j] = suffix[j + 1] + std::fabs(a[j]);
  detail::SearchOptions opt;
  opt.kind = "degree";
  opt.p = std::numeric_limits<double>::infinity();
  opt.adjust = [](unsigned, EntryKind) { return EntryKind::UpperBound; };
  return detail::search_profile(
      [&](unsigned m, double) {
        const std::size_t degree = std::size_t{1} << std::min(m, 40u);
        if (degree + 1 > a.size()) throw Error(ErrorCode::BudgetExceeded, "degree beyond coefficient table");
        return NormEstimate{suffix[degree + 1], 0.0, false};
      },
      cfg, opt);
}

}  // namespace modrate
