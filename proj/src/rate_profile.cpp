#include "modrate/rate_profile.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "modrate/error.hpp"

namespace modrate {
namespace {

constexpr double kTieSlack = 1e-12;

bool budget_error(const Error& e) {
  return e.code() == ErrorCode::QuadratureBudgetExceeded || e.code() == ErrorCode::BudgetExceeded;
}

}  // namespace

const char* to_string(EntryKind kind) noexcept {
  switch (kind) {
    case EntryKind::Exact: return "exact";
    case EntryKind::UpperBound: return "upper";
    case EntryKind::LowerBound: return "lower";
    case EntryKind::Capped: return "capped";
  }
  return "exact";
}

EntryKind entry_kind_from_string(const std::string& s) {
  if (s == "exact") return EntryKind::Exact;
  if (s == "upper") return EntryKind::UpperBound;
  if (s == "lower") return EntryKind::LowerBound;
  if (s == "capped") return EntryKind::Capped;
  throw Error(ErrorCode::InvalidArgument, "unknown entry kind '" + s + "'");
}

const RateEntry* RateProfile::at(unsigned n) const noexcept {
  for (const auto& e : entries) {
    if (e.n == n) return &e;
  }
  return nullptr;
}

bool RateProfile::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void SearchConfig::validate() const {
  if (m_cap < n_max) throw Error(ErrorCode::InvalidArgument, "m_cap must be at least n_max");
  if (shift_samples_per_scale < 2) throw Error(ErrorCode::InvalidArgument, "shift_samples_per_scale must be at least 2");
  if (!(norm_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm_tolerance must be positive");
  if (max_samples < 64) throw Error(ErrorCode::InvalidArgument, "max_samples must be at least 64");
}

QuadratureOptions SearchConfig::quadrature(std::optional<double> threshold) const {
  QuadratureOptions q;
  q.max_samples = max_samples;
  q.target_radius = norm_tolerance;
  q.threshold = threshold;
  return q;
}

Verdict compare(const NormEstimate& e, double threshold) {
  const double t = threshold * (1.0 + kTieSlack);
  if (!e.certified) return e.value <= t ? Verdict::Pass : Verdict::Fail;
  if (e.upper() <= t) return Verdict::Pass;
  if (e.lower() > t) return Verdict::Fail;
  return Verdict::Unknown;
}

bool bounds_from_below(EntryKind k) noexcept { return k == EntryKind::Exact || k == EntryKind::LowerBound; }
bool bounds_from_above(EntryKind k) noexcept { return k == EntryKind::Exact || k == EntryKind::UpperBound; }

void require_rate_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "rates need a finite p > 1");
}

namespace detail {

RateProfile search_profile(const MeasureFn& measure, const SearchConfig& cfg, const SearchOptions& opt) {
  cfg.validate();
  RateProfile profile;
  profile.kind = opt.kind;
  profile.p = opt.p;
  profile.cap = cfg.m_cap;

  std::map<unsigned, NormEstimate> cache;
  auto get = [&](unsigned m, double thr) {
    auto it = cache.find(m);
    if (it != cache.end() && compare(it->second, thr) != Verdict::Unknown) return it->second;
    NormEstimate e = measure(m, thr);
    if (it == cache.end() || e.error_radius <= it->second.error_radius) cache[m] = e;
    return e;
  };

  unsigned start = 0;
  bool capped = false;
  for (unsigned n = 0; n <= cfg.n_max; ++n) {
    if (capped) {
      profile.entries.push_back({n, cfg.m_cap, EntryKind::Capped});
      continue;
    }
    const double thr = std::ldexp(1.0, -static_cast<int>(n));
    std::optional<unsigned> found;
    bool certified = true;
    try {
      for (unsigned m = start; m <= cfg.m_cap; ++m) {
        const NormEstimate e = get(m, thr);
        if (compare(e, thr) == Verdict::Pass) {
          found = m;
          certified = e.certified;
          break;
        }
      }
    } catch (const Error& err) {
      if (!budget_error(err)) throw;
    }
    if (!found) {
      capped = true;
      profile.entries.push_back({n, cfg.m_cap, EntryKind::Capped});
      continue;
    }
    const unsigned m = *found;
    EntryKind kind = certified ? EntryKind::Exact : EntryKind::UpperBound;
    if (kind == EntryKind::Exact && m > 0) {
      try {
        const NormEstimate below = get(m - 1, thr);
        if (!below.certified || compare(below, thr) != Verdict::Fail) kind = EntryKind::UpperBound;
      } catch (const Error& err) {
        if (!budget_error(err)) throw;
        kind = EntryKind::UpperBound;
      }
    }
    if (opt.adjust) kind = opt.adjust(m, kind);
    profile.entries.push_back({n, m, kind});
    start = m;
  }

  if (!opt.monotone) {
    for (const auto& entry : profile.entries) {
      if (entry.kind == EntryKind::Capped) continue;
      const double thr = std::ldexp(1.0, -static_cast<int>(entry.n));
      for (auto it = cache.upper_bound(entry.m); it != cache.end(); ++it) {
        if (it->second.certified && compare(it->second, thr) == Verdict::Fail) {
          if (!profile.has_flag("nonmonotone_residual")) profile.flags.push_back("nonmonotone_residual");
        }
      }
    }
  }
  return profile;
}

}  // namespace detail
}  // namespace modrate
