#pragma once

#include <cstdint>

#include "bankbench/data/panel.hpp"

namespace bankbench::data {

// Seeded panel generator. Distressed companies pass through a shared
// struggling profile and end in a state where all three distress criteria
// hold mildly; confuser subpopulations replay the same trajectory with
// exactly one axis mirrored across its rule boundary, and healthy companies
// carry heavy single-axis tails, so the positive class is a corner-box
// conjunction rather than anything a single linear score can rank.
struct SynthConfig {
    std::size_t n_companies = 1000;
    int year_start = 2014;
    int year_end = 2021;
    int censor_year = 2021;
    double target_distress_rate = 0.02;
    // Fraction of the distressed count that ends exactly at censor_year
    // (generated on top of target_distress_rate; these never become positives).
    double censored_fraction = 0.3;
    double zombie_fraction = 0.10;           // endgame EBITDA mirrored positive
    double leveraged_liquid_fraction = 0.20; // endgame current ratio lands just above the cutoff
    double illiquid_fraction = 0.02;         // endgame equity mirrored positive
    double missing_rate = 0.03;
    std::uint64_t seed = 42;
};

Panel generate_panel(const SynthConfig& cfg);

// Deterministic GDP series (no RNG) covering [year_start-1, year_end] for the
// four panel countries.
MacroTable generate_macro(int year_start, int year_end);

} // namespace bankbench::data
