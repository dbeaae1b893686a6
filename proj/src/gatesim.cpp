#include "photolink/gatesim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photolink::gatesim {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Exact Poisson inversion by product of uniforms; valid while exp(-mean)
/// stays normal, so callers keep mean <= 500.
std::uint64_t poisson_inversion(double mean, CounterRng& rng) {
    const double limit = std::exp(-mean);
    std::uint64_t count = 0;
    double product = 1.0;
    do {
        product *= rng.next_uniform();
        ++count;
    } while (product > limit);
    return count - 1;
}

double sample_photons(double mean, double variance_scale, CounterRng& rng) {
    if (mean < 1e3 && variance_scale == 1.0) {
        // Split into chunks of mean <= 500; a sum of Poissons is Poisson.
        std::uint64_t total = 0;
        double remaining = mean;
        while (remaining > 500.0) {
            total += poisson_inversion(500.0, rng);
            remaining -= 500.0;
        }
        total += poisson_inversion(remaining, rng);
        return static_cast<double>(total);
    }
    const double draw =
        mean + std::sqrt(variance_scale * mean) * rng.next_normal();
    return std::max(0.0, std::round(draw));
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_index)
    : key_(splitmix64(splitmix64(seed) ^ stream_index)) {}

std::uint64_t CounterRng::next_u64() {
    return splitmix64(key_ + (++counter_) * kGoldenGamma);
}

double CounterRng::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

QubitState rx(double theta, const QubitState& s) {
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    const std::complex<double> minus_i{0.0, -1.0};
    QubitState out;
    out.amp0 = c * s.amp0 + minus_i * sn * s.amp1;
    out.amp1 = c * s.amp1 + minus_i * sn * s.amp0;
    return out;
}

double error_prob_exact(double theta) {
    const double c = std::cos(theta / 2.0);
    return c * c;
}

double angle_from_photons(double photons, double photons_target) {
    if (!(photons_target > 0.0)) {
        throw std::domain_error("angle_from_photons: target count must be > 0");
    }
    if (photons < 0.0) {
        throw std::domain_error("angle_from_photons: photon count must be >= 0");
    }
    return std::numbers::pi * photons / photons_target;
}

MonteCarloResult monte_carlo_gate_error(double n_target, std::uint64_t trials,
                                        std::uint64_t seed,
                                        double variance_scale) {
    if (!(n_target >= 10.0)) {
        throw std::domain_error("monte_carlo_gate_error: need N_target >= 10");
    }
    if (trials < 1) {
        throw std::domain_error("monte_carlo_gate_error: need at least 1 trial");
    }
    if (!(variance_scale > 0.0)) {
        throw std::domain_error(
            "monte_carlo_gate_error: variance scale must be > 0");
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        CounterRng rng(seed, trial);
        const double photons = sample_photons(n_target, variance_scale, rng);
        const double err =
            error_prob_exact(angle_from_photons(photons, n_target));
        sum += err;
        sum_sq += err * err;
    }

    MonteCarloResult result;
    result.trials = trials;
    result.seed = seed;
    result.mean_error = sum / static_cast<double>(trials);
    if (trials > 1) {
        const double n = static_cast<double>(trials);
        const double variance =
            (sum_sq - n * result.mean_error * result.mean_error) / (n - 1.0);
        result.std_error_of_mean = std::sqrt(std::max(0.0, variance) / n);
    }
    return result;
}

}  // namespace photolink::gatesim
