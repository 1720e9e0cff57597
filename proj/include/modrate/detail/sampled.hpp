#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "modrate/torus.hpp"

namespace modrate::detail {

/// Coefficients of a trigonometric polynomial produced on demand, so that large
/// partial sums never have to be materialized as TrigPolynomial values.
struct CoeffStream {
  using Sink = std::function<void(std::int64_t, Complex)>;

  std::int64_t degree = 0;
  std::size_t terms = 0;  // number of (possibly) nonzero coefficients
  bool real_valued = false;
  std::function<void(const Sink&)> visit;
};

CoeffStream stream_of(const TrigPolynomial& t);
double derivative_bound(const CoeffStream& s, int order);

/// Values of the stream at (j + offset) / n, j = 0..n-1.
std::vector<Complex> evaluate_on_grid(const CoeffStream& s, std::size_t n, double offset);

/// ||s - T||_p where s is a step function (nullptr means zero) and T the stream.
/// Real inputs use linear interpolation per cell with radius |T''| h^2 / 8,
/// complex ones the midpoint rule with radius |T'| h / 2.
NormEstimate sampled_distance(const std::vector<Complex>* step, const CoeffStream& trig, double p,
                              const QuadratureOptions& opt);

/// L^p norm of an analytic closure: certified midpoint sums when a Lipschitz
/// hint is present and every singularity sits on a dyadic grid, otherwise
/// adaptive Gauss-Kronrod with an uncertified error estimate.
NormEstimate analytic_norm(const AnalyticFunction& f, double p, const QuadratureOptions& opt);

/// The piecewise-constant midpoint sample of f on `cells` cells together with a
/// bound on sup |f - sample|.
struct Discretization {
  std::vector<Complex> values;
  double sup_error = 0.0;
  bool certified = true;
};

Discretization discretize(const PeriodicFunction& f, std::size_t cells);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);
/// Exponent of the smallest dyadic grid containing every point, or -1.
int dyadic_scale(const std::vector<double>& points, int max_scale = 40);

/// exp(2 pi i num / den) with exact values at multiples of a quarter turn.
Complex unit_root(std::int64_t num, std::int64_t den);

/// (sum |v|^p / n)^(1/p) computed exactly for the step function with values v.
double step_norm(const std::vector<Complex>& v, double p);

/// Bound 3 + ln K on the Lebesgue constant of the partial sum operator F_K.
double lebesgue_bound(std::int64_t degree);

/// Norm radius induced by an error `e` on the integral `integral` of |f|^p.
double norm_radius_from_integral(double integral, double e, double p);

}  // namespace modrate::detail
