#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "photolink/scenario.hpp"

// Exit codes: 0 success, 2 usage, 3 validation, 4 runtime.
int main(int argc, char** argv) {
    CLI::App app{"Link-budget, noise, and frequency-planning toolkit for "
                 "optically-driven cryogenic microwave sources"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON scenario config")
            ->required();
        sub->add_option("--out", out_path, "output file path")->required();
    };

    auto* tradeoff = app.add_subcommand(
        "tradeoff", "responsivity sweep: gate power, error, qubit budget");
    add_common(tradeoff);
    auto* noise = app.add_subcommand(
        "noise", "effective photon occupation vs optical power");
    add_common(noise);
    auto* chain = app.add_subcommand(
        "chain", "cascaded noise figure, mixer back-out, SNR budget");
    add_common(chain);
    auto* gatesim = app.add_subcommand(
        "gatesim", "Monte Carlo X-gate error with Poisson photon statistics");
    add_common(gatesim);
    gatesim->add_option("--seed", seed, "override the config seed");
    auto* freqplan = app.add_subcommand(
        "freqplan", "sideband, beat-tone, and harmonic mixer planning");
    add_common(freqplan);
    auto* fit =
        app.add_subcommand("fit", "data-reduction fits from CSV input");
    add_common(fit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    namespace sc = photolink::scenario;
    if (tradeoff->parsed()) {
        return sc::cmd_tradeoff(config_path, out_path);
    }
    if (noise->parsed()) {
        return sc::cmd_noise(config_path, out_path);
    }
    if (chain->parsed()) {
        return sc::cmd_chain(config_path, out_path);
    }
    if (gatesim->parsed()) {
        return sc::cmd_gatesim(config_path, out_path, seed);
    }
    if (freqplan->parsed()) {
        return sc::cmd_freqplan(config_path, out_path);
    }
    if (fit->parsed()) {
        return sc::cmd_fit(config_path, out_path);
    }
    return 2;
}
