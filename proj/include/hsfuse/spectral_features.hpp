// Spectral signatures per patch: unfold to a pixels-by-wavelengths matrix,
// then take the mean spectrum or uncentered SVD loadings.
#pragma once

#include "hsfuse/types.hpp"

#include <vector>

namespace hsfuse {

// k x k x I_lambda patch as a k^2 x I_lambda matrix, rows in row-major pixel
// order.
Matrix unfold(const Patch& patch);

// Column-wise arithmetic mean.
Vector mean_spectrum(const Matrix& unfolded);

// First b_lambda right-singular vectors of the uncentered matrix, unit norm,
// decreasing singular value, sign fixed so the largest-magnitude coefficient
// is positive. Loadings beyond the numerical rank are zero-filled and
// counted in zero_filled when given.
Matrix svd_signatures(const Matrix& unfolded, int b_lambda,
                      int* zero_filled = nullptr);

enum class SpectralMethod { Mean, Svd };

struct SpectralOptions {
    SpectralMethod method = SpectralMethod::Mean;
    int signatures = 3;  // B_lambda, svd only
};

// Mean: one N x I_lambda block. Svd: B_lambda blocks where block j holds
// every patch's j-th loading. zero_filled (optional) counts rank-deficient
// loadings across all patches.
std::vector<FeatureBlock> spectral_blocks(const PatchSet& patches,
                                          const SpectralOptions& options,
                                          long* zero_filled = nullptr);

}  // namespace hsfuse
