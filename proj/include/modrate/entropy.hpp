#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace modrate {

/// [0; length] with the absolute-value metric; length must be positive.
struct IntervalClass {
  double length = 1.0;
};

/// Functions on the points j 2^-mu (j < 2^mu) with values in the 2^-n grid of
/// [-2^r, 2^r] and consecutive increments of at most 2^-n, in the sup metric.
struct GridPathClass {
  unsigned mu = 0;
  unsigned r = 0;
};

/// Step functions on 2^cells_log2 cells with values in the 2^-value_bits grid
/// of [-2^r, 2^r], L^p norm at most 2^r and L^p modulus bounded by `mu`
/// (mu[k] for k < mu.size()), in the L^p metric.
struct StepBallClass {
  unsigned cells_log2 = 1;
  unsigned r = 0;
  double p = 2.0;
  unsigned value_bits = 2;
  std::vector<unsigned> mu;
};

struct ClassSpec {
  std::variant<IntervalClass, GridPathClass, StepBallClass> kind;
  /// Elements of the discretized class that may be enumerated.
  std::size_t max_elements = 1'000'000;
  /// Elements for which pairwise ball membership is tabulated.
  std::size_t max_pairwise = std::size_t{1} << 13;
};

enum class CoverMethod { Exact, GreedyUpper };
const char* to_string(CoverMethod m) noexcept;

struct CoverResult {
  std::uint64_t count = 0;
  /// Log(count): least e with 2^e >= count.
  std::uint64_t eta = 0;
  CoverMethod method = CoverMethod::Exact;
  std::size_t elements = 0;
  std::string note;
};

/// Number of closed balls of radius 2^-n needed to cover the class. Discrete
/// classes use centers from the class itself. Throws BudgetExceeded past the
/// configured enumeration limits and InvalidArgument for a class whose value
/// grid is too coarse for n.
CoverResult covering_number(const ClassSpec& spec, unsigned n);

/// (2^(r+n+1) + 1) 3^(2^mu - 1): value-grid paths on 2^mu points with bounded increments.
mpz_class path_count_bound(unsigned mu, unsigned r, unsigned n);

/// ceil(log2 x) for x >= 1, with Log(1) = 0.
std::uint64_t ceil_log2(const mpz_class& x);

/// eta = Log(width), the binary form of a unary covering count.
std::uint64_t eta_from_width(std::uint64_t width) noexcept;

}  // namespace modrate
