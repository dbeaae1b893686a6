#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace photolink::freqplan {

/// Frequencies inside the planner live on an exact grid: integer hertz for
/// tones, reduced int64 fractions for solved LO frequencies. Floating point
/// only appears at the boundary.
using Hz = std::int64_t;

struct RationalHz {
    std::int64_t num{0};
    std::int64_t den{1};

    RationalHz() = default;
    RationalHz(std::int64_t n, std::int64_t d);
    RationalHz(Hz hz) : num(hz), den(1) {}  // NOLINT(google-explicit-constructor)

    double hz() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
    Hz rounded_hz() const;

    friend bool operator==(const RationalHz&, const RationalHz&) = default;
};

RationalHz operator+(RationalHz a, RationalHz b);
RationalHz operator-(RationalHz a, RationalHz b);
RationalHz operator*(std::int64_t k, RationalHz a);
RationalHz rational_abs(RationalHz a);
bool operator<(RationalHz a, RationalHz b);

struct Tone {
    Hz frequency{0};
    std::string origin;
};

struct MixPlan {
    RationalHz f_mod;   // EO modulation frequency
    RationalHz f_lo;    // harmonic mixer LO
    int harmonic{1};    // N
    Hz f_if{0};         // f_IF = f_RF - N * f_LO, exact
    Hz f_rf{0};         // target tone
    std::vector<Tone> propagating_tones;
    Hz spur_margin{10'000'000};  // guard band for spur reporting
};

struct SpurHit {
    Tone spur_tone;
    int harmonic{0};
    double offset_hz{0.0};  // |tone - M*f_LO|, landing within guard of f_IF
};

// WR10 fundamental-mode cutoff used as a hard high-pass on beat tones.
inline constexpr Hz kWr10CutoffHz = 59'000'000'000;
inline constexpr Hz kWr10BandLowHz = 75'000'000'000;
inline constexpr Hz kWr10BandHighHz = 110'000'000'000;
inline constexpr Hz kWr15CutoffHz = 39'875'000'000;

std::vector<Tone> null_bias_sidebands(Hz f_carrier, Hz f_mod, int max_order);

std::vector<Tone> beat_tones(const std::vector<Tone>& optical);

std::vector<Tone> waveguide_filter(const std::vector<Tone>& tones, Hz cutoff);

RationalHz solve_lo(Hz f_rf, int harmonic, Hz f_if);

MixPlan plan_spectroscopy(Hz f_rf_target, int harmonic, Hz f_if, Hz cutoff,
                          int sideband_order);

std::vector<SpurHit> spur_check(const MixPlan& plan, int max_harmonic,
                                Hz guard);

/// Same-LO fixed-IF plan: one synthesizer drives the single-sideband
/// up-converter (doubled once, then second-order sidebands beat, so
/// f_mmw = 8 * f_RF') and the harmonic mixer at harmonic 8. The output IF
/// is pinned at 8 * f_if_drive regardless of the LO.
MixPlan slfi_plan(Hz f_mmw_target, Hz f_if_drive);

}  // namespace photolink::freqplan
