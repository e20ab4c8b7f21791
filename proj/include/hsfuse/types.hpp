// Core domain types shared across the library: spectral axis, hyperspectral
// cube, calibration references, patches and feature blocks.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsfuse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Wavelength axis in nanometers, strictly increasing.
struct SpectralAxis {
    std::vector<double> wavelengths;

    int size() const { return static_cast<int>(wavelengths.size()); }

    // Synthetic axis 0..n-1 for cubes without a declared wavelength list.
    static SpectralAxis index_axis(int n);

    // Throws if the axis is not strictly increasing.
    void validate() const;

    // True when the step is uniform within the given relative tolerance.
    bool is_uniform(double rel_tol = 1e-9) const;
};

enum class Unit { RawCounts, Reflectance, Absorbance };

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& name);

// Hyperspectral cube of height I_y lines, width I_x samples and I_lambda
// bands. Values are stored pixel-interleaved: the spectrum of one pixel is
// contiguous. An empty mask means every pixel is usable.
struct HyperCube {
    int width = 0;   // I_x
    int height = 0;  // I_y
    SpectralAxis axis;
    Unit unit = Unit::RawCounts;
    std::vector<double> values;         // height*width*bands, BIP order
    std::vector<std::uint8_t> mask;     // height*width, nonzero = usable

    int bands() const { return axis.size(); }
    std::int64_t pixel_count() const { return std::int64_t(width) * height; }

    double& at(int y, int x, int b) {
        return values[(std::size_t(y) * width + x) * bands() + b];
    }
    double at(int y, int x, int b) const {
        return values[(std::size_t(y) * width + x) * bands() + b];
    }
    const double* spectrum(int y, int x) const {
        return values.data() + (std::size_t(y) * width + x) * bands();
    }
    bool usable(int y, int x) const {
        return mask.empty() || mask[std::size_t(y) * width + x] != 0;
    }

    static HyperCube make(int height, int width, SpectralAxis axis,
                          Unit unit = Unit::RawCounts);
};

// White/dark reference spectra. Either a single spectrum (rows = 1,
// broadcast over the whole image) or one spectrum per image column
// (rows = I_x, the line-scan case).
struct CalibrationRefs {
    Matrix white;  // rows in {1, I_x}, cols = I_lambda
    Matrix dark;   // same shape as white
};

// A labelled set of zone pixels. class_label is 0 (control) / 1 (infected)
// when present.
struct ZoneSpec {
    int zone_id = 0;
    std::optional<int> class_label;
    int group = -1;  // cross-validation group; defaults to zone_id
    std::vector<std::pair<int, int>> pixels;  // (row, col)
};

// Odd-width square sub-images identified by their center pixels. Centers are
// ordered row-major within a zone, zones by ascending id.
struct PatchSet {
    int k = 0;
    std::shared_ptr<const HyperCube> cube;
    std::vector<std::pair<int, int>> centers;  // (row, col)
    std::vector<int> zone_ids;
    std::vector<int> class_labels;  // empty when unsupervised
    std::vector<int> groups;        // empty when unsupervised

    int n() const { return static_cast<int>(centers.size()); }
    bool has_labels() const { return !class_labels.empty(); }
};

// One k x k x I_lambda sub-image copied out of the cube.
struct Patch {
    int k = 0;
    int bands = 0;
    std::vector<double> values;  // row-major (r, c, b)

    double at(int r, int c, int b) const {
        return values[(std::size_t(r) * k + c) * bands + b];
    }
};

enum class BlockKind { Spatial, Spectral };

std::string block_kind_name(BlockKind k);

// N x R feature matrix of one modality, tagged with the reduction component
// or signature rank that produced it.
struct FeatureBlock {
    BlockKind kind = BlockKind::Spatial;
    std::string name;
    int component = 0;  // reduction component / signature rank (1-based)
    Matrix values;      // N x R
    std::vector<std::string> column_names;

    int n() const { return static_cast<int>(values.rows()); }
    int r() const { return static_cast<int>(values.cols()); }
};

}  // namespace hsfuse
