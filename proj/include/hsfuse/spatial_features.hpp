// Texture descriptors per monochrome patch: the structure-tensor triplet
// (magnitude, phase, coherence) and GLCM-based Haralick indices.
#pragma once

#include "hsfuse/spectral_reduction.hpp"
#include "hsfuse/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace hsfuse {

struct TensorFeatures {
    double magnitude = 0.0;  // lambda1 + lambda2, >= 0
    double phase = 0.0;      // dominant orientation in [0, pi)
    double coherence = 0.0;  // (l1 - l2)/(l1 + l2) in [0, 1]
};

// 3x3 Sobel gradients with mirror padding inside the patch, tensor averaged
// over all pixels, eigenstructure in closed form. A tensor with trace below
// 1e-12 gives coherence 0 and phase 0.
TensorFeatures structure_tensor(const Matrix& patch);

// Equal-width binning of clamp(image, lo, hi) into ng bins; v = hi maps to
// bin ng-1.
Eigen::MatrixXi quantize(const Matrix& image, int ng, double lo, double hi);

struct Glcm {
    int ng = 0;
    Matrix p;  // ng x ng, symmetric, sums to 1
};

// Symmetric co-occurrence counts at pixel distance d summed over the given
// orientations (degrees, from {0, 45, 90, 135}), normalized to probabilities.
// Throws when no pixel pair is in bounds.
Glcm glcm(const Eigen::MatrixXi& quantized, int ng, int d,
          const std::vector<int>& orientations_deg);

inline const std::vector<int>& isotropic_orientations() {
    static const std::vector<int> all{0, 45, 90, 135};
    return all;
}

constexpr int kHaralickCount = 14;
using HaralickVector = std::array<double, kHaralickCount>;

const std::vector<std::string>& haralick_names();

// The 14 Haralick statistics with base-2 logarithms, 0*log0 = 0 and the
// degenerate rules: correlation 0 when a marginal variance is 0, the two
// information measures 0 when HX or HY is 0, maximal correlation
// coefficient 0 when the marginal support has fewer than two levels.
// Gray-level indices are 0-based; sum-variance is taken around sum-average.
HaralickVector haralick(const Glcm& g);

struct TextureOptions {
    int gray_levels = 8;
    int distance = 1;
    std::vector<int> orientations_deg = isotropic_orientations();
};

enum class SpatialMethod { Tensor, Haralick };

struct QuantRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Per-component texture extraction. Haralick quantization ranges come from
// the calibration set's global per-component (min, max) and are frozen so
// test patches are binned identically.
struct SpatialExtractor {
    SpatialMethod method = SpatialMethod::Tensor;
    TextureOptions texture;
    std::vector<QuantRange> ranges;  // per component, haralick only

    static SpatialExtractor fit(const ReducedPatchSet& calibration,
                                SpatialMethod method,
                                const TextureOptions& texture = {});

    // One FeatureBlock per reduction component: N x 3 for tensor,
    // N x 14 for haralick.
    std::vector<FeatureBlock> extract(const ReducedPatchSet& reduced) const;
};

}  // namespace hsfuse
