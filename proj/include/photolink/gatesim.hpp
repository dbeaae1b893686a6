#pragma once

#include <complex>
#include <cstdint>

namespace photolink::gatesim {

struct QubitState {
    std::complex<double> amp0{1.0, 0.0};
    std::complex<double> amp1{0.0, 0.0};

    double norm_sq() const {
        return std::norm(amp0) + std::norm(amp1);
    }
};

struct MonteCarloResult {
    double mean_error{0.0};
    double std_error_of_mean{0.0};
    std::uint64_t trials{0};
    std::uint64_t seed{0};
};

// Counter-based random stream: stream key = splitmix64(splitmix64(seed) ^ index),
// draw n = splitmix64(key + n * golden_gamma). Each Monte Carlo trial owns
// stream `trial_index`, so any partitioning of trials reproduces the serial
// result bit for bit.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    /// Uniform in (0, 1].
    double next_uniform();
    /// Standard normal via Box-Muller (two uniforms per call).
    double next_normal();

  private:
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

QubitState rx(double theta, const QubitState& s);

/// Probability of remaining in |0> after an intended pi-pulse of angle theta.
double error_prob_exact(double theta);

double angle_from_photons(double photons, double photons_target);

/// Draws photon numbers with variance_scale * Poisson variance; exact
/// chunked Poisson inversion below 1e3 mean (variance_scale = 1 only),
/// Gaussian moment matching otherwise.
MonteCarloResult monte_carlo_gate_error(double n_target, std::uint64_t trials,
                                        std::uint64_t seed,
                                        double variance_scale = 1.0);

}  // namespace photolink::gatesim
