// Synthetic two-class cubes for pipeline checks: classes may differ in
// texture only, in spectrum only, or both.
#pragma once

#include "hsfuse/types.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hsfuse {

enum class SynthContrast { TextureOnly, SpectrumOnly, Both };

SynthContrast synth_contrast_from_name(const std::string& name);
std::string synth_contrast_name(SynthContrast c);

struct SyntheticSpec {
    int bands = 96;
    double wavelength_start = 960.0;
    double wavelength_step = 6.0;

    // Zone layout: spots x repeats pairs of square zones (one control, one
    // infected per pair), arranged on a grid with margins.
    int spots = 4;
    int repeats = 5;       // acquisition repetitions; group = (spot, repeat)
    int zone_size = 10;    // zone side in pixels
    int margin = 3;        // blank pixels around zones

    SynthContrast contrast = SynthContrast::Both;
    double contrast_magnitude = 1.0;
    double noise_level = 0.05;
    std::uint64_t seed = 0;
};

struct SyntheticScene {
    std::shared_ptr<HyperCube> cube;
    std::vector<ZoneSpec> zones;
};

// Texture-only: both classes share the per-pixel marginal spectral
// distribution but differ in spatial autocorrelation. Spectrum-only: same
// texture statistics, class-dependent absorption peak. Both: combined.
SyntheticScene synth(const SyntheticSpec& spec);

// Unlabelled stand-in for the unsupervised case: concentric-ring luminance
// structure modulating a smooth base spectrum, full mask, no zones.
struct SyntheticWoodSpec {
    int height = 64;
    int width = 64;
    int bands = 256;
    double wavelength_start = 928.0;
    double wavelength_step = 6.0;
    int rings = 6;
    double noise_level = 0.02;
    std::uint64_t seed = 0;
};

std::shared_ptr<HyperCube> synth_wood(const SyntheticWoodSpec& spec);

}  // namespace hsfuse
