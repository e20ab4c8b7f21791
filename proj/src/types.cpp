#include "hsfuse/types.hpp"

#include <cmath>

namespace hsfuse {

SpectralAxis SpectralAxis::index_axis(int n) {
    SpectralAxis axis;
    axis.wavelengths.resize(n);
    for (int i = 0; i < n; ++i) axis.wavelengths[i] = i;
    return axis;
}

void SpectralAxis::validate() const {
    for (std::size_t i = 1; i < wavelengths.size(); ++i) {
        if (!(wavelengths[i] > wavelengths[i - 1])) {
            throw Error("spectral axis not strictly increasing at index " +
                        std::to_string(i));
        }
    }
}

bool SpectralAxis::is_uniform(double rel_tol) const {
    if (wavelengths.size() < 3) return true;
    const double step = wavelengths[1] - wavelengths[0];
    for (std::size_t i = 2; i < wavelengths.size(); ++i) {
        const double d = wavelengths[i] - wavelengths[i - 1];
        if (std::abs(d - step) > rel_tol * std::max(std::abs(step), 1.0)) {
            return false;
        }
    }
    return true;
}

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::RawCounts: return "raw-counts";
        case Unit::Reflectance: return "reflectance";
        case Unit::Absorbance: return "absorbance";
    }
    return "raw-counts";
}

Unit unit_from_name(const std::string& name) {
    if (name == "raw-counts") return Unit::RawCounts;
    if (name == "reflectance") return Unit::Reflectance;
    if (name == "absorbance") return Unit::Absorbance;
    throw Error("unknown unit name: " + name);
}

std::string block_kind_name(BlockKind k) {
    return k == BlockKind::Spatial ? "spatial" : "spectral";
}

HyperCube HyperCube::make(int height, int width, SpectralAxis axis,
                          Unit unit) {
    HyperCube cube;
    cube.height = height;
    cube.width = width;
    cube.axis = std::move(axis);
    cube.unit = unit;
    cube.values.assign(std::size_t(height) * width * cube.bands(), 0.0);
    return cube;
}

}  // namespace hsfuse
