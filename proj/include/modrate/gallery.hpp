#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modrate/torus.hpp"

namespace modrate {

using ParamMap = std::map<std::string, std::string>;

/// An exact rational num/den with den > 0, parsed from "a/b", "0.125" or "3".
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(const std::string& text);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  /// Scale s with den == 2^s, if the reduced denominator is a power of two.
  std::optional<unsigned> dyadic_scale() const noexcept;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A closed-form or reference value of some quantity of the entry.
struct OracleClaim {
  /// "modulus", "step", "fourier", "sup_modulus", "diff_norm", "norm", "markov".
  std::string quantity;
  /// Exponent of the norm; empty means the sup norm.
  std::optional<double> p;
  unsigned n_lo = 0;
  unsigned n_hi = 0;
  std::string formula;
  /// How the value was obtained ("closed form", "parseval tail", "dense grid", ...).
  std::string source;
  /// Value at n (or at the shift 2^-n for diff_norm), when the claim is numeric.
  std::function<double(unsigned)> value;
};

struct GalleryEntry {
  std::string name;
  ParamMap params;
  PeriodicFunction function;
  std::vector<OracleClaim> oracles;
  std::vector<std::string> flags;
  /// Evaluator on the closed interval [0;1] for sup-norm oracles.
  std::function<double(double)> interval;

  const OracleClaim* oracle(const std::string& quantity) const;
  bool has_flag(const std::string& f) const;
};

struct ExampleInfo {
  std::string name;
  std::string params;
  std::string oracles;
};

/// Throws UnknownExample for unknown names, NonDyadicBreakpoint for indicator
/// endpoints off the dyadic grid and InvalidArgument for malformed parameters.
GalleryEntry make_example(const std::string& name, const ParamMap& params = {});

std::vector<ExampleInfo> list_examples();

/// h(t) = 1/ln(e/t) on [0;1] with h(0) = 0.
double log_h(double t) noexcept;

}  // namespace modrate
