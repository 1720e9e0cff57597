#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

enum class Projection { Orthogonal, PartialSum, NearBest };

/// A dense sequence in L^p(T) (ambient_p) or in C[0;1] with the sup norm
/// (ambient_p empty).
struct Basis {
  std::string name;
  Projection projection = Projection::Orthogonal;
  std::optional<double> ambient_p;
  /// Element b_k; for interval bases the torus argument is read as x in [0;1).
  std::function<PeriodicFunction(std::size_t k)> element;
  /// Optional designated first element, followed by the elements of `rest`.
  std::shared_ptr<const PeriodicFunction> first;
  std::shared_ptr<const Basis> rest;
};

/// Frequencies 0, +1, -1, +2, -2, ...; orthogonal in L^2, partial sums otherwise.
Basis trig_basis(double p = 2.0);
/// Constant followed by Haar wavelets level by level.
Basis haar_basis(double p = 2.0);
/// Chebyshev polynomials T_k(2x - 1) on [0;1] in the sup norm.
Basis chebyshev_basis();
/// b_0 = f0, then the elements of `base`.
Basis designated_first(const PeriodicFunction& f0, Basis base);

/// Frequency of the k-th trigonometric basis element.
std::int64_t trig_basis_frequency(std::size_t k) noexcept;

/// Distance from f to the span of the first `count` elements: exact for
/// Orthogonal projections, an upper bound otherwise.
NormEstimate basis_distance(const PeriodicFunction& f, const Basis& basis, std::size_t count,
                            const SearchConfig& cfg = {}, std::optional<double> threshold = std::nullopt);

RateProfile b_rate(const PeriodicFunction& f, const Basis& basis, const SearchConfig& cfg = {});

/// Chebyshev coefficients a_j of x -> f(x) on [0;1] (variable 2x - 1) from
/// 2^levels + 1 Lobatto nodes.
std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f, unsigned levels = 16);

/// Least m such that Chebyshev truncation at degree 2^m is within 2^-n in the
/// sup norm; every entry is an UpperBound.
RateProfile weierstrass_degree_rate(const std::function<double(double)>& f, const SearchConfig& cfg = {});

}  // namespace modrate
