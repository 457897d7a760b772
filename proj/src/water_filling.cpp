#include "hcran/water_filling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hcran::wf {

double rate_at_level(std::span<const double> cnr, double level) noexcept {
    double r = 0.0;
    for (double c : cnr) {
        const double x = level * c;
        if (x > 1.0) r += std::log2(x);
    }
    return r;
}

double power_at_level(std::span<const double> cnr, double level) noexcept {
    double p = 0.0;
    for (double c : cnr) {
        const double x = level - 1.0 / c;
        if (x > 0.0) p += x;
    }
    return p;
}

void powers_at_level(std::span<const double> cnr, double level, std::span<double> out) noexcept {
    for (std::size_t s = 0; s < cnr.size(); ++s) {
        out[s] = std::max(0.0, level - 1.0 / cnr[s]);
    }
}

double rate_of_powers(std::span<const double> cnr, std::span<const double> powers) noexcept {
    double r = 0.0;
    for (std::size_t s = 0; s < cnr.size(); ++s) r += std::log2(1.0 + powers[s] * cnr[s]);
    return r;
}

namespace {

std::vector<double> sorted_desc(std::span<const double> cnr) {
    std::vector<double> c(cnr.begin(), cnr.end());
    std::sort(c.begin(), c.end(), std::greater<>());
    return c;
}

}  // namespace

double level_for_rate(std::span<const double> cnr, double rate) {
    if (cnr.empty()) {
        if (rate <= 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    const auto c = sorted_desc(cnr);
    if (rate <= 0.0) return 1.0 / c.front();
    double log_sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        log_sum += std::log2(c[k]);
        const double n = static_cast<double>(k + 1);
        const double level = std::exp2((rate - log_sum) / n);
        if (k + 1 == c.size() || level * c[k + 1] <= 1.0) return level;
    }
    return std::numeric_limits<double>::infinity();  // unreachable
}

double level_for_power(std::span<const double> cnr, double power) {
    if (cnr.empty()) return 0.0;
    const auto c = sorted_desc(cnr);
    if (power <= 0.0) return 1.0 / c.front();
    double inv_sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        inv_sum += 1.0 / c[k];
        const double level = (power + inv_sum) / static_cast<double>(k + 1);
        if (k + 1 == c.size() || level * c[k + 1] <= 1.0) return level;
    }
    return std::numeric_limits<double>::infinity();  // unreachable
}

double unconstrained_level(double weight, double price) noexcept {
    if (price <= 0.0) return std::numeric_limits<double>::infinity();
    return weight / (std::numbers::ln2 * price);
}

}  // namespace hcran::wf
