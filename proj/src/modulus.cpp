#include "modrate/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "modrate/detail/fft.hpp"
#include "modrate/detail/sampled.hpp"
#include "modrate/detail/shift_sup.hpp"
#include "modrate/error.hpp"

namespace modrate {
namespace detail {

StepShiftTable::StepShiftTable(std::vector<Complex> values, double p, std::size_t work_budget)
    : v_(std::move(values)), p_(p), budget_(work_budget), cache_(v_.size(), 0.0), known_(v_.size(), false) {
  const std::size_t k = v_.size();
  known_[0] = true;
  if (p_ == 2.0 && k > 4096) {
    std::vector<Complex> a = v_;
    fft(a, -1);
    for (auto& x : a) x = std::norm(x);
    fft(a, +1);
    double energy = 0.0;
    for (const Complex& c : v_) energy += std::norm(c);
    const double kk = static_cast<double>(k);
    for (std::size_t j = 1; j < k; ++j) {
      cache_[j] = std::max(0.0, (2.0 * energy - 2.0 * a[j].real() / kk) / kk);
      known_[j] = true;
    }
    all_known_ = true;
  }
}

double StepShiftTable::power(std::size_t j) {
  const std::size_t k = v_.size();
  j %= k;
  if (known_[j]) return cache_[j];
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = std::abs(v_[i] - v_[(i + j) % k]);
    sum += p_ == 2.0 ? d * d : std::pow(d, p_);
  }
  cache_[j] = sum / static_cast<double>(k);
  known_[j] = true;
  cache_[k - j] = cache_[j];
  known_[k - j] = true;
  return cache_[j];
}

StepShiftTable::Range StepShiftTable::sup_breakpoints(std::size_t j0) {
  const std::size_t k = v_.size();
  j0 = std::min(j0, k / 2);
  if (j0 == 0) return {};
  std::size_t unknown = 0;
  if (!all_known_) {
    for (std::size_t j = 1; j <= j0; ++j) unknown += known_[j] ? 0 : 1;
  }
  if (unknown * k <= budget_) {
    double best = 0.0;
    for (std::size_t j = 1; j <= j0; ++j) best = std::max(best, power(j));
    const double d = std::pow(best, 1.0 / p_);
    return {d, d};
  }
  // Subadditivity: D(a + b) <= D(a) + D(b), so a coarse sample plus the sup
  // over one sample gap bounds everything in between.
  const std::size_t samples = 64;
  const std::size_t step = (j0 + samples - 1) / samples;
  double best = 0.0;
  for (std::size_t j = step; j <= j0; j += step) best = std::max(best, power(j));
  best = std::max(best, power(j0));
  const double d = std::pow(best, 1.0 / p_);
  const Range gap = sup_breakpoints(step - 1);
  return {d, d + gap.hi};
}

StepShiftTable::Range StepShiftTable::sup_upto(std::size_t j0, double theta) {
  const std::size_t k = v_.size();
  Range r = sup_breakpoints(j0);
  if (theta > 0.0 && j0 < k / 2) {
    const double e = std::pow((1.0 - theta) * power(j0) + theta * power(j0 + 1), 1.0 / p_);
    r.lo = std::max(r.lo, e);
    r.hi = std::max(r.hi, e);
  }
  return r;
}

}  // namespace detail

namespace {

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 63;

std::uint64_t pow2_saturating(std::uint64_t k) { return k >= 63 ? kSaturated : std::uint64_t{1} << k; }

NormEstimate from_range(double lo, double hi, bool certified) {
  return {0.5 * (lo + hi), 0.5 * (hi - lo), certified};
}

bool decisive(double lo, double hi, std::optional<double> thr, double target) {
  if (hi - lo <= 2.0 * target) return true;
  if (!thr) return false;
  const NormEstimate e = from_range(lo, hi, true);
  return compare(e, *thr) != Verdict::Unknown;
}

class ShiftSup {
 public:
  ShiftSup(const PeriodicFunction& f, double p, const SearchConfig& cfg) : f_(f), p_(p), cfg_(cfg) {
    if (const auto* values = f.cell_values()) table_ = std::make_unique<detail::StepShiftTable>(*values, p);
  }

  NormEstimate at(unsigned m, std::optional<double> thr) {
    if (table_) return cells(m);
    if (const auto* t = f_.as_trig()) return trig(*t, m, thr);
    return analytic(*f_.as_analytic(), m, thr);
  }

 private:
  NormEstimate cells(unsigned m) {
    const std::size_t k = table_->cells();
    std::size_t j0 = k;
    double theta = 0.0;
    if (m < 63) {
      const std::uint64_t den = std::uint64_t{1} << m;
      j0 = k / den;
      theta = std::ldexp(static_cast<double>(k % den), -static_cast<int>(m));
    } else {
      j0 = 0;
      theta = std::ldexp(static_cast<double>(k), -static_cast<int>(m));
    }
    const auto r = table_->sup_upto(j0, theta);
    return from_range(r.lo, r.hi, true);
  }

  NormEstimate trig(const TrigPolynomial& t, unsigned m, std::optional<double> thr) {
    if (t.terms.empty()) return {0.0, 0.0, true};
    if (t.terms.size() == 1) {
      const double k = std::fabs(static_cast<double>(t.terms.front().k));
      const double x = m >= 1 ? std::min(0.5, std::ldexp(k, -static_cast<int>(m))) : 0.5;
      const double kfrac = x >= 0.5 ? 0.5 : x;
      const double s = (k == 0.0) ? 0.0 : (kfrac == 0.5 ? 1.0 : std::sin(std::numbers::pi * kfrac));
      // For |k| h >= 1/2 some shift in range hits the antipodal phase.
      return {2.0 * std::abs(t.terms.front().c) * s, 0.0, true};
    }
    double lip = 0.0;
    if (p_ <= 2.0) {
      for (const auto& term : t.terms) lip += std::norm(term.c) * std::pow(2.0 * std::numbers::pi * static_cast<double>(term.k), 2);
      lip = std::sqrt(lip);
    } else {
      lip = derivative_bound(t, 1);
    }
    const unsigned base = std::max(m, 1u);
    unsigned s = static_cast<unsigned>(std::countr_zero(detail::next_pow2(cfg_.shift_samples_per_scale)));
    NormEstimate out;
    for (;; s += 2) {
      double lo = 0.0;
      double hi = 0.0;
      bool certified = true;
      const std::int64_t count = std::int64_t{1} << s;
      for (std::int64_t i = 1; i <= count; ++i) {
        const NormEstimate d = diff_norm(f_, DyadicShift(i, base + s), p_, cfg_.quadrature(thr));
        lo = std::max(lo, d.lower());
        hi = std::max(hi, d.upper());
        certified = certified && d.certified;
      }
      hi += lip * std::ldexp(1.0, -static_cast<int>(base + s)) / 2.0;
      out = from_range(lo, hi, certified);
      if (decisive(lo, hi, thr, cfg_.norm_tolerance) || s >= 10 || base + s + 2 > DyadicShift::kMaxScale) break;
    }
    return out;
  }

  NormEstimate analytic(const AnalyticFunction& a, unsigned m, std::optional<double> thr) {
    const int g = detail::dyadic_scale(a.singularities, 30);
    const bool certified = a.lipschitz && g >= 0;
    const std::size_t per_scale = detail::next_pow2(cfg_.shift_samples_per_scale);
    if (m > 40) throw Error(ErrorCode::QuadratureBudgetExceeded, "shift scale too fine for discretization");
    const std::size_t resolution = (std::size_t{1} << m) * per_scale;
    if (resolution > cfg_.max_samples) throw Error(ErrorCode::QuadratureBudgetExceeded, "shift scale too fine for discretization");
    std::size_t n = std::max({resolution, std::size_t{1} << 12, std::size_t{1} << std::max(g, 0)});
    if (certified) {
      const double want = thr ? *thr / 64.0 : cfg_.norm_tolerance;
      while (*a.lipschitz / static_cast<double>(n) > want && 2 * n <= cfg_.max_samples) n *= 2;
    }
    if (n > cfg_.max_samples) throw Error(ErrorCode::QuadratureBudgetExceeded, "singularity grid exceeds the sample budget");
    if (!analytic_table_ || analytic_cells_ != n) {
      const detail::Discretization d = detail::discretize(f_, n);
      analytic_table_ = std::make_unique<detail::StepShiftTable>(d.values, p_);
      analytic_cells_ = n;
      rho_ = d.sup_error;
    }
    const std::size_t j0 = m == 0 ? n : (n >> m);
    const auto r = analytic_table_->sup_upto(j0, 0.0);
    if (!certified) return {r.hi, 0.5 * (r.hi - r.lo), false};
    return from_range(std::max(0.0, r.lo - 2.0 * rho_), r.hi + 2.0 * rho_, true);
  }

  const PeriodicFunction& f_;
  double p_;
  SearchConfig cfg_;
  std::unique_ptr<detail::StepShiftTable> table_;
  std::unique_ptr<detail::StepShiftTable> analytic_table_;
  std::size_t analytic_cells_ = 0;
  double rho_ = 0.0;
};

}  // namespace

NormEstimate certified_shift_sup(const PeriodicFunction& f, double p, unsigned m, const SearchConfig& cfg,
                                 std::optional<double> threshold, bool require_certified) {
  require_rate_p(p);
  if (require_certified) {
    if (const auto* a = f.as_analytic()) {
      if (!a->lipschitz || detail::dyadic_scale(a->singularities, 30) < 0) {
        throw Error(ErrorCode::UncertifiableSup, "analytic function has no usable derivative bound");
      }
    }
  }
  ShiftSup sup(f, p, cfg);
  return sup.at(m, threshold);
}

RateProfile lp_modulus(const PeriodicFunction& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  ShiftSup sup(f, p, cfg);
  detail::SearchOptions opt;
  opt.kind = "modulus";
  opt.p = p;
  if (const auto* g = f.as_grid()) {
    const auto log2n = static_cast<unsigned>(std::countr_zero(g->samples.size()));
    opt.adjust = [log2n](unsigned m, EntryKind k) { return m > log2n ? EntryKind::LowerBound : k; };
  }
  return detail::search_profile([&](unsigned m, double thr) { return sup.at(m, thr); }, cfg, opt);
}

RateProfile sup_modulus_on_grid(const std::function<double(double)>& f, unsigned grid_exponent, unsigned n_max) {
  if (grid_exponent > 28) throw Error(ErrorCode::BudgetExceeded, "grid exponent above 28");
  const std::size_t n = std::size_t{1} << grid_exponent;
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(std::ldexp(static_cast<double>(i), -static_cast<int>(grid_exponent)));
  // omega(2^-m): largest max - min over windows of stride + 1 consecutive samples.
  std::vector<std::uint32_t> hi(n + 1), lo(n + 1);
  const auto omega = [&](unsigned m) {
    const std::size_t stride = n >> m;
    std::size_t hb = 0, he = 0, lb = 0, le = 0;
    double w = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      while (he > hb && v[hi[he - 1]] <= v[i]) --he;
      hi[he++] = static_cast<std::uint32_t>(i);
      while (le > lb && v[lo[le - 1]] >= v[i]) --le;
      lo[le++] = static_cast<std::uint32_t>(i);
      if (hi[hb] + stride < i) ++hb;
      if (lo[lb] + stride < i) ++lb;
      w = std::max(w, v[hi[hb]] - v[lo[lb]]);
    }
    return w;
  };
  RateProfile profile;
  profile.kind = "sup_modulus";
  profile.p = std::numeric_limits<double>::infinity();
  profile.cap = grid_exponent;
  unsigned m = 0;
  double w = omega(0);
  for (unsigned k = 0; k <= n_max; ++k) {
    const double thr = std::ldexp(1.0, -static_cast<int>(k));
    while (m <= grid_exponent && w > thr) {
      ++m;
      if (m <= grid_exponent) w = omega(m);
    }
    if (m > grid_exponent) {
      profile.entries.push_back({k, grid_exponent, EntryKind::Capped});
    } else {
      profile.entries.push_back({k, m, EntryKind::LowerBound});
    }
  }
  return profile;
}

std::uint64_t ceil_log2(std::uint64_t k) noexcept {
  if (k <= 1) return 0;
  return 64 - static_cast<std::uint64_t>(std::countl_zero(k - 1));
}

NatMap unary_to_binary(NatMap unary) {
  return [unary = std::move(unary)](std::uint64_t n) { return ceil_log2(unary(pow2_saturating(n))); };
}

NatMap binary_to_unary(NatMap binary) {
  return [binary = std::move(binary)](std::uint64_t n) { return pow2_saturating(binary(ceil_log2(n))); };
}

NatMap compose_moduli(NatMap mu, NatMap nu) {
  return [mu = std::move(mu), nu = std::move(nu)](std::uint64_t n) { return mu(nu(n)); };
}

NatMap limit_modulus(std::function<NatMap(std::uint64_t)> moduli) {
  return [moduli = std::move(moduli)](std::uint64_t n) { return moduli(n + 2)(n + 1); };
}

}  // namespace modrate
