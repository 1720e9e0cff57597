#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

/// K x K cells, values[i * K + j] on [i/K, (i+1)/K) x [j/K, (j+1)/K).
struct Step2D {
  std::size_t K = 1;
  std::vector<Complex> values;
};

/// Coefficients c_{k1,k2} for max(|k1|, |k2|) <= K, index (k1 + K)(2K + 1) + (k2 + K).
struct Trig2D {
  std::int64_t K = 0;
  std::vector<Complex> coeffs;
  Complex at(std::int64_t k1, std::int64_t k2) const;
};

/// 2^g x 2^g samples read as cell values.
struct Grid2D {
  unsigned g = 0;
  std::vector<Complex> samples;
};

class PeriodicFunction2D {
 public:
  using Variant = std::variant<Step2D, Trig2D, Grid2D>;

  static PeriodicFunction2D step(std::size_t K, std::vector<Complex> values);
  static PeriodicFunction2D trig(std::int64_t K, std::vector<Complex> coeffs);
  static PeriodicFunction2D grid(unsigned g, std::vector<Complex> samples);
  /// (x, y) -> g(x) h(y) for two Step functions or two Trig polynomials.
  static PeriodicFunction2D tensor(const PeriodicFunction& g, const PeriodicFunction& h);

  const Variant& variant() const noexcept { return rep_; }
  const Step2D* as_step() const noexcept { return std::get_if<Step2D>(&rep_); }
  const Trig2D* as_trig() const noexcept { return std::get_if<Trig2D>(&rep_); }
  const Grid2D* as_grid() const noexcept { return std::get_if<Grid2D>(&rep_); }

 private:
  explicit PeriodicFunction2D(Variant v) : rep_(std::move(v)) {}
  Variant rep_;
};

/// Fourier coefficients on the max-norm cube of radius M.
Trig2D fourier_coeffs_2d(const PeriodicFunction2D& f, std::int64_t M);

/// sup over max(|d1|, |d2|) <= 2^-m of ||f - tau_d f||_p.
NormEstimate shift_sup_2d(const PeriodicFunction2D& f, double p, unsigned m, const SearchConfig& cfg = {});
/// ||f - F_{2^m} f||_p with partial sums over max-norm frequency cubes.
NormEstimate fourier_residual_2d(const PeriodicFunction2D& f, double p, unsigned m, const SearchConfig& cfg = {});
/// Best approximation error by constants on 2^m x 2^m cubes.
NormEstimate best_step_error_2d(const PeriodicFunction2D& f, double p, unsigned m);

RateProfile lp_modulus_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg = {});
RateProfile fourier_rate_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg = {});
RateProfile step_rate_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg = {});

}  // namespace modrate
