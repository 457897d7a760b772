#pragma once

#include <span>
#include <vector>

// Water-filling primitives over one link's subcarriers.
//
// A link is described by its channel-to-noise ratios c_s = gain_s / noise.
// Filling to water level L puts p_s = max(0, L - 1/c_s) on subcarrier s,
// which yields rate sum_s max(0, log2(L * c_s)) bits/s/Hz.  Both the rate and
// the power are continuous and nondecreasing in L.

namespace hcran::wf {

double rate_at_level(std::span<const double> cnr, double level) noexcept;
double power_at_level(std::span<const double> cnr, double level) noexcept;
void powers_at_level(std::span<const double> cnr, double level, std::span<double> out) noexcept;

/// Rate of an explicit per-subcarrier power vector.
double rate_of_powers(std::span<const double> cnr, std::span<const double> powers) noexcept;

/// Smallest level reaching `rate`; equals 1/max(c) for rate 0.
/// Closed form over the sorted active set.
double level_for_rate(std::span<const double> cnr, double rate);

/// Level that spends exactly `power` watts.
double level_for_power(std::span<const double> cnr, double power);

/// Level at which a single link maximizes  weight * rate - price * power.
/// Infinite when price is 0.
double unconstrained_level(double weight, double price) noexcept;

}  // namespace hcran::wf
