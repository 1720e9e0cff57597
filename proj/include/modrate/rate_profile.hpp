#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modrate/torus.hpp"

namespace modrate {

enum class EntryKind { Exact, UpperBound, LowerBound, Capped };

const char* to_string(EntryKind kind) noexcept;
EntryKind entry_kind_from_string(const std::string& s);

struct RateEntry {
  unsigned n = 0;
  unsigned m = 0;
  EntryKind kind = EntryKind::Exact;
  friend bool operator==(const RateEntry&, const RateEntry&) = default;
};

/// n -> m table of a binary modulus or rate. `kind` names the quantity
/// ("modulus", "step", "fourier", "basis", "degree").
struct RateProfile {
  std::string kind;
  double p = 2.0;
  std::vector<RateEntry> entries;
  unsigned cap = 64;
  std::vector<std::string> flags;

  const RateEntry* at(unsigned n) const noexcept;
  bool has_flag(const std::string& f) const;
};

struct SearchConfig {
  unsigned n_max = 8;
  unsigned m_cap = 64;
  unsigned shift_samples_per_scale = 16;
  double norm_tolerance = 1e-12;
  std::size_t max_samples = std::size_t{1} << 22;

  /// Throws InvalidArgument unless m_cap >= n_max and shift_samples_per_scale >= 2.
  void validate() const;
  QuadratureOptions quadrature(std::optional<double> threshold = std::nullopt) const;
};

/// Outcome of comparing an estimate against 2^-n: equality passes, and a few
/// ulps of slack absorb rounding in closed forms.
enum class Verdict { Pass, Fail, Unknown };
Verdict compare(const NormEstimate& e, double threshold);

/// Usable on the smaller side of an inequality (the true value is at least m).
bool bounds_from_below(EntryKind k) noexcept;
/// Usable on the larger side (the true value is at most m).
bool bounds_from_above(EntryKind k) noexcept;

void require_rate_p(double p);

namespace detail {

/// Residual (or sup) at resolution m measured against `threshold`.
using MeasureFn = std::function<NormEstimate(unsigned m, double threshold)>;

struct SearchOptions {
  std::string kind;
  double p = 2.0;
  /// Residuals are known to be nonincreasing in m.
  bool monotone = true;
  /// Optional downgrade of an entry's kind given its m.
  std::function<EntryKind(unsigned m, EntryKind)> adjust;
};

/// Least-m search shared by all rate engines. Budget exhaustion (Error with
/// QuadratureBudgetExceeded or BudgetExceeded) turns the entry and every later
/// one into Capped.
RateProfile search_profile(const MeasureFn& measure, const SearchConfig& cfg, const SearchOptions& opt);

}  // namespace detail
}  // namespace modrate
