#include <doctest.h>

#include <cmath>
#include <vector>

#include "photolink/constants.hpp"
#include "photolink/gatesim.hpp"
#include "photolink/rfchain.hpp"
#include "photolink/units.hpp"

using namespace photolink;
using namespace photolink::rfchain;
namespace k = photolink::constants;

namespace {

// Reference detection chain: mm-wave LNA, harmonic mixer, microwave LNA.
std::vector<ChainStage> detection_chain() {
    return {
        ChainStage::from_db("mmw_lna", 22.5, 0.3),
        {"mixer", 2.368e-6, 10446.0},
        ChainStage::from_db("uw_lna", 31.0, 0.03),
    };
}

}  // namespace

TEST_CASE("stage construction from dB") {
    const auto stage = ChainStage::from_db("mmw_lna", 22.5, 0.3);
    CHECK(stage.gain_linear == doctest::Approx(177.83).epsilon(1e-3));
    CHECK(stage.noise_factor_linear == doctest::Approx(1.0715).epsilon(1e-4));
    CHECK_THROWS_AS((ChainStage{"bad", 1.0, 0.5}.validate()), std::domain_error);
}

TEST_CASE("friis cascade") {
    const auto single = std::vector<ChainStage>{{"only", 10.0, 2.5}};
    CHECK(friis_total(single) == doctest::Approx(2.5));

    const double total = friis_total(detection_chain());
    CHECK(total == doctest::Approx(76.0).epsilon(0.05));
    CHECK(to_db(total).value == doctest::Approx(18.8).epsilon(0.02));

    auto huge_front = detection_chain();
    huge_front[0].gain_linear = 1e12;
    CHECK(friis_total(huge_front) ==
          doctest::Approx(huge_front[0].noise_factor_linear).epsilon(1e-3));

    CHECK_THROWS_AS(friis_total(std::vector<ChainStage>{}), std::domain_error);
}

TEST_CASE("mixer noise factor back-out") {
    const double f_mixer =
        backout_mixer_noise_factor(76.2, 1.0715, 177.83, 1.0069, 2.368e-6);
    CHECK(f_mixer == doctest::Approx(1.04e4).epsilon(0.01));
    CHECK(std::abs(to_db(f_mixer).value - 41.0) < 1.5);

    // Noiseless chain collapses to unity.
    CHECK(backout_mixer_noise_factor(1.0715, 1.0715, 177.83, 1.0, 2.368e-6) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(
        backout_mixer_noise_factor(1.0, 5.0, 100.0, 1.0, 2.368e-6),
        std::domain_error);
}

TEST_CASE("friis/back-out round trip on random chains") {
    gatesim::CounterRng rng(111, 0);
    for (int i = 0; i < 1000; ++i) {
        std::vector<ChainStage> stages{
            {"a", 1.0 + 500.0 * rng.next_uniform(),
             1.0 + 5.0 * rng.next_uniform()},
            {"b", 1e-6 + rng.next_uniform(), 1.0 + 2e4 * rng.next_uniform()},
            {"c", 1.0 + 2000.0 * rng.next_uniform(),
             1.0 + 2.0 * rng.next_uniform()},
        };
        const double f_total = friis_total(stages);
        const double backed = backout_mixer_noise_factor(
            f_total, stages[0].noise_factor_linear, stages[0].gain_linear,
            stages[2].noise_factor_linear, stages[1].gain_linear);
        CHECK(backed ==
              doctest::Approx(stages[1].noise_factor_linear).epsilon(1e-9));
        stages[1].noise_factor_linear = backed;
        CHECK(friis_total(stages) == doctest::Approx(f_total).epsilon(1e-9));
    }
}

TEST_CASE("friis monotonicity under perturbation") {
    gatesim::CounterRng rng(113, 0);
    for (int i = 0; i < 500; ++i) {
        std::vector<ChainStage> stages{
            {"a", 1.0 + 100.0 * rng.next_uniform(),
             1.0 + 3.0 * rng.next_uniform()},
            {"b", 0.1 + rng.next_uniform(), 1.0 + 10.0 * rng.next_uniform()},
            {"c", 1.0 + 100.0 * rng.next_uniform(),
             1.0 + 3.0 * rng.next_uniform()},
        };
        const double base = friis_total(stages);
        auto noisier = stages;
        noisier[1].noise_factor_linear *= 1.3;
        CHECK(friis_total(noisier) >= base);
        auto weaker_front = stages;
        weaker_front[0].gain_linear *= 0.7;
        CHECK(friis_total(weaker_front) >= base);
    }
}

TEST_CASE("mixer conversion gain") {
    const double gain = mixer_conversion_gain(0.53, 177.83, 1258.9);
    CHECK(gain == doctest::Approx(2.37e-6).epsilon(2e-3));
    CHECK(std::abs(to_db(gain).value - (-56.3)) < 0.3);
    CHECK(mixer_conversion_gain(6.0, 2.0, 3.0) == doctest::Approx(1.0));
    CHECK(mixer_conversion_gain(0.265, 177.83, 1258.9) ==
          doctest::Approx(0.5 * gain).epsilon(1e-12));
}

TEST_CASE("SNR budget reproduces the 4 K input budget") {
    const auto budget = snr_budget(14.97e-9, 0.05, 1e-3, 50.0, 4.0, 21e9);
    CHECK(budget.shot_power == doctest::Approx(0.0167e-9).epsilon(0.02));
    CHECK(budget.thermal_power == doctest::Approx(0.00116e-9).epsilon(0.02));
    CHECK(budget.snr_in() == doctest::Approx(838.0).epsilon(0.02));
    CHECK(to_db(budget.snr_in()).value == doctest::Approx(29.2).epsilon(0.005));

    CHECK(snr_in(0.0, 0.05, 1e-3, 50.0, 4.0, 21e9) == 0.0);
    CHECK_THROWS_AS(snr_in(1e-9, 0.05, 0.0, 50.0, 0.0, 21e9),
                    std::domain_error);
}

TEST_CASE("insertion loss from quadratic fit coefficient") {
    bool suspicious = false;
    const double room = insertion_loss_from_fit(0.090, 0.40, 50.0, &suspicious);
    CHECK(room == doctest::Approx(0.01125).epsilon(1e-9));
    CHECK(to_db(room).value == doctest::Approx(-19.5).epsilon(1e-3));
    CHECK_FALSE(suspicious);

    const double cryo = insertion_loss_from_fit(0.020, 0.050, 50.0);
    CHECK(cryo == doctest::Approx(0.16).epsilon(1e-9));
    CHECK(to_db(cryo).value == doctest::Approx(-8.0).epsilon(0.01));

    // Lossless chain: a = R^2 Z0.
    CHECK(insertion_loss_from_fit(0.16 * 50.0, 0.4, 50.0) ==
          doctest::Approx(1.0));
    insertion_loss_from_fit(10.0, 0.05, 50.0, &suspicious);
    CHECK(suspicious);
}

TEST_CASE("measured PSD to effective occupation") {
    // Invert the conversion for the quoted min/max occupation figures.
    const double g_total = 0.53;
    for (const double target : {30.0, 1200.0}) {
        const double s_ss =
            target * 4.0 * g_total * k::reduced_planck * angular(80e9);
        CHECK(n_eff_from_measured_psd(s_ss, g_total, 50.0, 80e9) ==
              doctest::Approx(target).epsilon(1e-12));
    }
    CHECK(n_eff_from_measured_psd(0.0, 0.53, 50.0, 80e9) == 0.0);

    gatesim::CounterRng rng(121, 0);
    const double base = n_eff_from_measured_psd(1e-18, 0.53, 50.0, 80e9);
    for (int i = 0; i < 1000; ++i) {
        const double s = 10.0 * rng.next_uniform();
        CHECK(n_eff_from_measured_psd(s * 1e-18, 0.53, 50.0, 80e9) ==
              doctest::Approx(s * base).epsilon(1e-12));
    }
}
