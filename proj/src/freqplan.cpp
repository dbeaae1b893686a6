#include "photolink/freqplan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace photolink::freqplan {

namespace {

// Nominal C-band carrier; beat frequencies do not depend on it.
constexpr Hz kNominalCarrierHz = 193'500'000'000'000;

}  // namespace

RationalHz::RationalHz(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) {
        throw std::domain_error("RationalHz: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Hz RationalHz::rounded_hz() const {
    return static_cast<Hz>(std::llround(hz()));
}

RationalHz operator+(RationalHz a, RationalHz b) {
    return RationalHz{a.num * b.den + b.num * a.den, a.den * b.den};
}

RationalHz operator-(RationalHz a, RationalHz b) {
    return RationalHz{a.num * b.den - b.num * a.den, a.den * b.den};
}

RationalHz operator*(std::int64_t k, RationalHz a) {
    return RationalHz{k * a.num, a.den};
}

RationalHz rational_abs(RationalHz a) {
    return a.num < 0 ? RationalHz{-a.num, a.den} : a;
}

bool operator<(RationalHz a, RationalHz b) {
    return a.num * b.den < b.num * a.den;
}

std::vector<Tone> null_bias_sidebands(Hz f_carrier, Hz f_mod, int max_order) {
    if (max_order != 1 && max_order != 2) {
        throw std::domain_error(
            "null_bias_sidebands: only sideband orders 1 and 2 are supported");
    }
    if (f_carrier < 0 || f_mod <= 0) {
        throw std::domain_error("null_bias_sidebands: invalid frequencies");
    }
    std::vector<Tone> tones;
    for (int k = max_order; k >= 1; --k) {
        tones.push_back({f_carrier - k * f_mod, "lsb" + std::to_string(k)});
    }
    for (int k = 1; k <= max_order; ++k) {
        tones.push_back({f_carrier + k * f_mod, "usb" + std::to_string(k)});
    }
    return tones;
}

std::vector<Tone> beat_tones(const std::vector<Tone>& optical) {
    if (optical.size() < 2) {
        throw std::domain_error("beat_tones: need at least 2 optical tones");
    }
    std::vector<Tone> beats;
    for (std::size_t i = 0; i < optical.size(); ++i) {
        for (std::size_t j = i + 1; j < optical.size(); ++j) {
            const Hz diff =
                std::abs(optical[i].frequency - optical[j].frequency);
            if (diff == 0) {
                continue;
            }
            const auto seen = std::find_if(
                beats.begin(), beats.end(),
                [diff](const Tone& t) { return t.frequency == diff; });
            if (seen == beats.end()) {
                beats.push_back(
                    {diff, optical[j].origin + "-" + optical[i].origin});
            }
        }
    }
    std::sort(beats.begin(), beats.end(), [](const Tone& a, const Tone& b) {
        return a.frequency < b.frequency;
    });
    return beats;
}

std::vector<Tone> waveguide_filter(const std::vector<Tone>& tones, Hz cutoff) {
    if (cutoff < 0) {
        throw std::domain_error("waveguide_filter: cutoff must be >= 0");
    }
    std::vector<Tone> passed;
    for (const Tone& t : tones) {
        if (t.frequency >= cutoff) {
            passed.push_back(t);
        }
    }
    return passed;
}

RationalHz solve_lo(Hz f_rf, int harmonic, Hz f_if) {
    if (harmonic < 1) {
        throw std::domain_error("solve_lo: harmonic must be >= 1");
    }
    if (f_rf <= f_if) {
        throw std::domain_error("solve_lo: need f_RF > f_IF");
    }
    return RationalHz{f_rf - f_if, harmonic};
}

MixPlan plan_spectroscopy(Hz f_rf_target, int harmonic, Hz f_if, Hz cutoff,
                          int sideband_order) {
    if (sideband_order != 1 && sideband_order != 2) {
        throw std::domain_error(
            "plan_spectroscopy: sideband order must be 1 or 2");
    }
    if (f_rf_target < cutoff) {
        throw std::domain_error(
            "plan_spectroscopy: target below waveguide cutoff");
    }
    const Hz beat_multiple = 2 * sideband_order;
    if (f_rf_target % beat_multiple != 0) {
        throw std::domain_error(
            "plan_spectroscopy: target must be a multiple of " +
            std::to_string(beat_multiple) + " Hz to stay on the integer grid");
    }
    MixPlan plan;
    plan.f_rf = f_rf_target;
    plan.f_if = f_if;
    plan.harmonic = harmonic;
    plan.f_mod = RationalHz{f_rf_target, beat_multiple};
    plan.f_lo = solve_lo(f_rf_target, harmonic, f_if);
    const auto sidebands = null_bias_sidebands(
        kNominalCarrierHz, plan.f_mod.rounded_hz(), sideband_order);
    plan.propagating_tones = waveguide_filter(beat_tones(sidebands), cutoff);
    return plan;
}

std::vector<SpurHit> spur_check(const MixPlan& plan, int max_harmonic,
                                Hz guard) {
    if (max_harmonic < plan.harmonic) {
        throw std::domain_error("spur_check: max harmonic below the plan's N");
    }
    std::vector<SpurHit> hits;
    for (const Tone& tone : plan.propagating_tones) {
        if (tone.frequency == plan.f_rf) {
            continue;
        }
        for (int m = 1; m <= max_harmonic; ++m) {
            // Exact integer arithmetic over the LO's denominator.
            const std::int64_t den = plan.f_lo.den;
            const std::int64_t diff =
                std::abs(tone.frequency * den - m * plan.f_lo.num);
            if (std::abs(diff - plan.f_if * den) <= guard * den) {
                hits.push_back({tone, m,
                                static_cast<double>(diff) /
                                    static_cast<double>(den)});
            }
        }
    }
    return hits;
}

MixPlan slfi_plan(Hz f_mmw_target, Hz f_if_drive) {
    if (f_mmw_target <= 0 || f_if_drive < 0) {
        throw std::domain_error("slfi_plan: invalid frequencies");
    }
    MixPlan plan;
    plan.f_rf = f_mmw_target;
    plan.harmonic = 8;
    plan.f_if = 8 * f_if_drive;
    // f_LO drives both the single-sideband up-converter (f_RF' = f_LO + f_IF,
    // then x2 and second-order sideband beats give x8) and the mixer.
    plan.f_lo = RationalHz{f_mmw_target, 8} - RationalHz{f_if_drive};
    plan.f_mod = RationalHz{f_mmw_target, 4};
    if (f_mmw_target % 4 == 0) {
        const auto sidebands = null_bias_sidebands(
            kNominalCarrierHz, plan.f_mod.rounded_hz(), 2);
        plan.propagating_tones =
            waveguide_filter(beat_tones(sidebands), kWr10CutoffHz);
    } else {
        plan.propagating_tones = {{f_mmw_target, "target"}};
    }
    return plan;
}

}  // namespace photolink::freqplan
