#pragma once

#include <cstddef>
#include <vector>

#include "modrate/torus.hpp"

namespace modrate::detail {

/// E_j = (1/K) sum_i |v_i - v_{i+j}|^p for the step function with values v,
/// i.e. ||g - tau_{j/K} g||_p^p. Between breakpoints j/K the p-th power of the
/// shift distance is linear in delta, so sups reduce to maxima over E_j.
class StepShiftTable {
 public:
  StepShiftTable(std::vector<Complex> values, double p, std::size_t work_budget = std::size_t{1} << 27);

  std::size_t cells() const noexcept { return v_.size(); }
  double power(std::size_t j);

  /// Enclosure [lo, hi] of sup ||g - tau_delta g||_p over 0 < delta <= (j0 + theta)/K.
  struct Range {
    double lo = 0.0;
    double hi = 0.0;
  };
  Range sup_upto(std::size_t j0, double theta);

 private:
  Range sup_breakpoints(std::size_t j0);

  std::vector<Complex> v_;
  double p_;
  std::size_t budget_;
  std::vector<double> cache_;
  std::vector<bool> known_;
  bool all_known_ = false;
};

}  // namespace modrate::detail
