#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "modrate/detail/sampled.hpp"
#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate::detail {

/// Trigamma function psi'(x) for x > 0.
double trigamma(double x);

/// sum of 1/k^2 over integers k > bound with k = r (mod period), r in 1..period-1.
double residue_tail(std::int64_t r, std::int64_t period, std::int64_t bound);

/// Exact Fourier coefficients of a step function with K0 cells:
/// f^_k = C[k mod K0] sin(pi r / K0) exp(-i pi r / K0) / (pi k), C = DFT of the values.
class StepSpectrum {
 public:
  explicit StepSpectrum(const std::vector<Complex>& values);

  std::size_t cells() const noexcept { return dft_.size(); }
  Complex coefficient(std::int64_t k) const;
  /// sum |f^_k|^2 over k < lo and k > hi (lo <= 0 <= hi), free of cancellation.
  double tail_energy(std::int64_t lo, std::int64_t hi) const;
  /// Coefficients with lo <= k <= hi as a stream.
  CoeffStream partial(std::int64_t lo, std::int64_t hi) const;

  /// Per-residue weights |C_r|^2 sin^2(pi r/K0) / pi^2 (index 0 unused).
  const std::vector<double>& weights() const noexcept { return weight_; }

 private:
  std::vector<Complex> dft_;
  std::vector<Complex> factor_;  // sin(pi r / K0) exp(-i pi r / K0) / pi
  std::vector<double> weight_;
  bool real_ = true;
};

/// ||f - sum_{lo <= k <= hi} f^_k e_k||_p with per-function caches, shared by
/// the Fourier rate and the trigonometric basis rate.
class TruncationResidual {
 public:
  TruncationResidual(const PeriodicFunction& f, double p, const SearchConfig& cfg);
  ~TruncationResidual();

  NormEstimate operator()(std::int64_t lo, std::int64_t hi, std::optional<double> threshold);

 private:
  NormEstimate of_cells(const std::vector<Complex>& values, const StepSpectrum& spec, std::int64_t lo,
                        std::int64_t hi, std::optional<double> threshold) const;

  const PeriodicFunction& f_;
  double p_;
  SearchConfig cfg_;
  std::unique_ptr<StepSpectrum> spectrum_;
  std::size_t disc_cells_ = 0;
  Discretization disc_;
};

}  // namespace modrate::detail
