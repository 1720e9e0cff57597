#pragma once

#include <cstddef>
#include <optional>

#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

struct StepApproxResult {
  PeriodicFunction approximant;
  NormEstimate error;
  /// The approximant is a certified best approximation in S_K.
  bool optimal = false;
};

/// Cell means on K equal cells, with the L^p error of that approximant.
StepApproxResult step_project(const PeriodicFunction& f, std::size_t K, double p = 2.0, const SearchConfig& cfg = {});

/// Best approximation in S_K by per-cell convex minimization. The error value
/// is an upper bound; value - error_radius is a certified lower bound.
StepApproxResult best_step_error(const PeriodicFunction& f, std::size_t K, double p, const SearchConfig& cfg = {},
                                 std::optional<double> threshold = std::nullopt);

RateProfile step_rate(const PeriodicFunction& f, double p, const SearchConfig& cfg = {});

namespace detail {

/// Minimizes mean_i |v_i - c|^p over c; returns {c, upper, lower} for the mean.
struct CellMinimum {
  Complex c;
  double upper = 0.0;
  double lower = 0.0;
  bool converged = true;
};
CellMinimum minimize_cell(const Complex* v, std::size_t count, double p);

}  // namespace detail
}  // namespace modrate
