#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modrate/gallery.hpp"
#include "modrate/rate_profile.hpp"

namespace modrate {

/// Caps on the fitted argument shift a and value offset b.
struct FitCaps {
  unsigned a_cap = 8;
  unsigned b_cap = 16;
};

/// One of the four inequalities
///   a) phi(n) <= mu(n+a) + n + b        b) mu(n) <= 2 phi(n+a) + n + b
///   c) sigma(n) <= mu(n+a) + b          d) mu(n) <= sigma(n+a) + p n + b
struct FittedConstant {
  std::string inequality;
  /// "fit", "violation" or "insufficient" (no comparable entry pairs).
  std::string status;
  unsigned a = 0;
  unsigned b = 0;
  std::size_t pairs = 0;
};

struct Violation {
  std::string inequality;
  unsigned n = 0;
  std::string detail;
};

struct ProfileSet {
  RateProfile mu;
  RateProfile sigma;
  RateProfile phi;
};

struct EquivalenceReport {
  std::string function;
  double p = 2.0;
  ProfileSet profiles;
  std::vector<FittedConstant> fits;
  std::vector<Violation> violations;

  bool pass() const noexcept { return violations.empty(); }
  const FittedConstant* fit(const std::string& inequality) const;
};

/// mu, sigma and phi of f at p.
ProfileSet compute_profiles(const PeriodicFunction& f, double p, const SearchConfig& cfg);

/// Minimal (a, b), lexicographically, making each inequality hold on every
/// comparable n. A pair is comparable when the left entry bounds its true value
/// from below and the right entry from above. Throws InsufficientCertification
/// when no inequality has a comparable pair.
EquivalenceReport fit_equivalence(const std::string& name, double p, ProfileSet profiles, const FitCaps& caps = {});

EquivalenceReport verify_equivalence(const GalleryEntry& entry, double p, const SearchConfig& cfg = {},
                                     const FitCaps& caps = {});

/// One (a, b) per inequality valid for every report at once; all reports must
/// share p. Reports whose profiles offer no comparable pairs are skipped.
std::vector<FittedConstant> fit_pooled(const std::vector<EquivalenceReport>& reports, const FitCaps& caps = {});

struct ScalingReport {
  std::string function;
  unsigned r = 0;
  double p = 2.0;
  std::size_t compared = 0;
  std::vector<std::string> mismatches;
  bool pass() const noexcept { return mismatches.empty(); }
};

/// Compares the profiles of 2^r f at n with those of f at n + r on entries that
/// are Exact in both.
ScalingReport verify_scaling(const GalleryEntry& entry, unsigned r, double p, const SearchConfig& cfg = {});

struct InequalityReport {
  std::string id;
  std::size_t trials = 0;
  double max_relative_violation = 0.0;
  double tolerance = 1e-9;
  bool pass = true;
  std::size_t exact_trials = 0;
  std::size_t quadrature_trials = 0;
  /// Jackson side only: fitted constant of the truncation bound.
  std::optional<double> fitted_constant;
  std::string note;
};

/// Randomized checks of the convexity bound, the discrete and integral Hoelder
/// inequalities, the finite-dimensional embedding and Minkowski's integral
/// inequality. Deterministic in (seed, trials).
std::vector<InequalityReport> inequality_suite(std::uint64_t seed, std::size_t trials, unsigned threads = 1);

/// Markov's bound on random real polynomials of degree <= 16, the Chebyshev
/// equality witnesses T_2..T_8 and an empirical Jackson constant.
std::vector<InequalityReport> jackson_markov_suite(std::uint64_t seed, std::size_t trials);

struct DirichletEstimate {
  double p = 2.0;
  double estimate = 0.0;
  double first_half = 0.0;
  double second_half = 0.0;
};

/// Empirical operator norm of F_K over the corpus: max ||F_K f||_p / ||f||_p for
/// K = 2^0..2^k_log2, with the same maximum over each half of the corpus.
DirichletEstimate dirichlet_constant(const std::vector<GalleryEntry>& corpus, double p, unsigned k_log2 = 6,
                                     const SearchConfig& cfg = {});

/// Normalized gallery functions used for the equivalence checks.
std::vector<GalleryEntry> equivalence_corpus();

/// Derives an independent 64-bit seed for trial `index` of stream `stream`.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

}  // namespace modrate
