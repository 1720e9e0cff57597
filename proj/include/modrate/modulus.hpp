#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

/// sup over 0 < delta <= 2^-m of ||f - tau_delta f||_p. `threshold` only steers
/// adaptive refinement. Throws UncertifiableSup when `require_certified` is set
/// and no derivative bound is available.
NormEstimate certified_shift_sup(const PeriodicFunction& f, double p, unsigned m, const SearchConfig& cfg = {},
                                 std::optional<double> threshold = std::nullopt, bool require_certified = false);

/// Binary L^p modulus for n = 0..cfg.n_max.
RateProfile lp_modulus(const PeriodicFunction& f, double p, const SearchConfig& cfg = {});

/// Sup-norm modulus of an interval function on [0;1] read off a grid with
/// spacing 2^-grid_exponent; every entry is a lower bound of the true value.
RateProfile sup_modulus_on_grid(const std::function<double(double)>& f, unsigned grid_exponent, unsigned n_max);

using NatMap = std::function<std::uint64_t(std::uint64_t)>;

/// ceil(log2 k), with Log(0) = Log(1) = 0.
std::uint64_t ceil_log2(std::uint64_t k) noexcept;

/// n -> Log M(2^n). Arguments and results saturate at 2^63.
NatMap unary_to_binary(NatMap unary);
/// N -> 2^mu(Log N).
NatMap binary_to_unary(NatMap binary);
/// n -> mu(nu(n)).
NatMap compose_moduli(NatMap mu, NatMap nu);
/// n -> mu_{n+2}(n+1) for a sequence of moduli indexed by m.
NatMap limit_modulus(std::function<NatMap(std::uint64_t)> moduli);

}  // namespace modrate
