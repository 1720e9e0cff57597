#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace modrate {

using Complex = std::complex<double>;

/// A point of the unit circle T = [0;1) mod 1.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(double t);

  double value() const noexcept { return t_; }

  friend TorusPoint operator+(TorusPoint a, TorusPoint b) { return TorusPoint(a.t_ + b.t_); }
  friend TorusPoint operator-(TorusPoint a, TorusPoint b) { return TorusPoint(a.t_ - b.t_); }
  friend bool operator==(TorusPoint, TorusPoint) = default;

 private:
  double t_ = 0.0;
};

/// Exact shift numerator * 2^-scale, kept reduced into (-1/2, 1/2] with an odd
/// numerator (or the zero shift).
class DyadicShift {
 public:
  static constexpr unsigned kMaxScale = 62;

  DyadicShift() = default;
  DyadicShift(std::int64_t numerator, unsigned scale);

  std::int64_t numerator() const noexcept { return numerator_; }
  unsigned scale() const noexcept { return scale_; }
  double value() const noexcept;
  bool is_zero() const noexcept { return numerator_ == 0; }

  /// Numerator when written over 2^target (target >= scale()).
  std::int64_t numerator_over(unsigned target) const;

  DyadicShift operator-() const { return DyadicShift(-numerator_, scale_); }
  friend bool operator==(const DyadicShift&, const DyadicShift&) = default;

 private:
  std::int64_t numerator_ = 0;
  unsigned scale_ = 0;
};

struct TrigTerm {
  std::int64_t k = 0;
  Complex c;
  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

/// Constant on each of the cells [j/K, (j+1)/K), K = values.size().
struct StepFunction {
  std::vector<Complex> values;
  std::size_t cells() const noexcept { return values.size(); }
  friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

/// sum_k c_k exp(2 pi i k t) over the listed terms; terms are sorted by k, carry
/// nonzero coefficients and satisfy |k| <= degree.
struct TrigPolynomial {
  std::int64_t degree = 0;
  std::vector<TrigTerm> terms;

  Complex coefficient(std::int64_t k) const;
  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;
};

/// 2^g samples, read as the step function constant on each sample cell.
struct GridFunction {
  std::vector<Complex> samples;
  friend bool operator==(const GridFunction&, const GridFunction&) = default;
};

/// A closure t -> f(t) on [0;1). `lipschitz` bounds |f'| on every open arc
/// between consecutive singularities (on the whole circle when there are none).
struct AnalyticFunction {
  std::function<Complex(double)> evaluator;
  std::optional<double> lipschitz;
  std::vector<double> singularities;
  bool real_valued = true;
};

enum class Representation { Step, Trig, Grid, Analytic };

class PeriodicFunction {
 public:
  using Variant = std::variant<StepFunction, TrigPolynomial, GridFunction, AnalyticFunction>;

  static PeriodicFunction step(std::vector<Complex> values);
  static PeriodicFunction trig(std::int64_t degree, std::vector<TrigTerm> terms);
  /// Dense coefficients c_{-K}..c_{K}; the vector length must be odd.
  static PeriodicFunction trig_dense(const std::vector<Complex>& coeffs);
  static PeriodicFunction grid(std::vector<Complex> samples);
  static PeriodicFunction analytic(AnalyticFunction f);

  Representation representation() const noexcept;
  const Variant& variant() const noexcept { return rep_; }

  const StepFunction* as_step() const noexcept { return std::get_if<StepFunction>(&rep_); }
  const TrigPolynomial* as_trig() const noexcept { return std::get_if<TrigPolynomial>(&rep_); }
  const GridFunction* as_grid() const noexcept { return std::get_if<GridFunction>(&rep_); }
  const AnalyticFunction* as_analytic() const noexcept {
    return std::get_if<AnalyticFunction>(&rep_);
  }

  /// Step or Grid: the cell values.
  const std::vector<Complex>* cell_values() const noexcept;

  bool is_real() const;

  /// Representation equality; analytic closures never compare equal.
  friend bool operator==(const PeriodicFunction& a, const PeriodicFunction& b);

 private:
  explicit PeriodicFunction(Variant v) : rep_(std::move(v)) {}
  Variant rep_;
};

struct NormEstimate {
  double value = 0.0;
  double error_radius = 0.0;
  bool certified = true;

  double lower() const noexcept { return value > error_radius ? value - error_radius : 0.0; }
  double upper() const noexcept { return value + error_radius; }
};

struct QuadratureOptions {
  std::size_t max_samples = std::size_t{1} << 22;
  double target_radius = 1e-9;
  /// When set, refinement stops as soon as the estimate is decisive against it.
  std::optional<double> threshold;
};

PeriodicFunction shift(const PeriodicFunction& f, const DyadicShift& delta);
PeriodicFunction scale_values(const PeriodicFunction& f, double factor);
Complex evaluate(const PeriodicFunction& f, TorusPoint t);

NormEstimate p_norm(const PeriodicFunction& f, double p, const QuadratureOptions& opt = {});
/// ||f - g||_p for any pair of representations.
NormEstimate distance(const PeriodicFunction& f, const PeriodicFunction& g, double p,
                      const QuadratureOptions& opt = {});
/// ||f - tau_delta f||_p.
NormEstimate diff_norm(const PeriodicFunction& f, const DyadicShift& delta, double p,
                       const QuadratureOptions& opt = {});

/// The same step function written on `cells` cells; `cells` must be a multiple of K.
StepFunction refine(const StepFunction& f, std::size_t cells);

/// Sum of |c_k| * (2 pi |k|)^order over the terms: bounds the sup norm of the
/// order-th derivative.
double derivative_bound(const TrigPolynomial& t, int order);

}  // namespace modrate
