#pragma once

#include <cstdint>
#include <vector>

#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

/// Fourier coefficients f^_k for |k| <= K. `error` bounds |computed - true| per
/// coefficient; it is 0 for exact closed forms and only an estimate when
/// `certified` is false.
struct CoeffVector {
  std::int64_t K = 0;
  std::vector<Complex> coeffs;  // index k + K
  bool exact = true;
  double error = 0.0;
  bool certified = true;

  Complex at(std::int64_t k) const;
};

struct KernelSpec {
  enum class Kind { Dirichlet, Fejer };
  Kind kind = Kind::Dirichlet;
  std::int64_t K = 0;
};

CoeffVector fourier_coeffs(const PeriodicFunction& f, std::int64_t K);
/// F_K f as a trigonometric polynomial.
PeriodicFunction partial_sum(const PeriodicFunction& f, std::int64_t K);
/// Cesaro mean with weights 1 - |k|/(K+1).
PeriodicFunction fejer_mean(const PeriodicFunction& f, std::int64_t K);
double kernel_eval(const KernelSpec& spec, TorusPoint t);

/// ||f - F_{2^m} f||_p.
NormEstimate fourier_residual(const PeriodicFunction& f, double p, unsigned m, const SearchConfig& cfg = {},
                              std::optional<double> threshold = std::nullopt);

/// Binary Fourier rate. For p != 2 the residual is not assumed monotone and the
/// profile carries "nonmonotone_residual" when a later m was seen to fail.
RateProfile fourier_rate(const PeriodicFunction& f, double p, const SearchConfig& cfg = {});

}  // namespace modrate
