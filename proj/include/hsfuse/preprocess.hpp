// Spectral pretreatments: Savitzky-Golay derivatives, edge trimming and the
// per-block autoscaling applied before fusion.
#pragma once

#include "hsfuse/types.hpp"

#include <utility>

namespace hsfuse {

struct SavGolSpec {
    int window = 13;
    int degree = 3;
    int deriv_order = 2;

    void validate() const;  // window odd, degree < window, deriv <= degree
};

// Convolves every row with the least-squares Savitzky-Golay kernel for
// (window, degree, deriv_order), derivative taken with respect to channel
// index. The ends of each row are computed on edge-replicated samples and
// are meant to be discarded with trim_edges.
Matrix savgol(const Matrix& spectra, const SavGolSpec& spec);

// The convolution kernel itself (length window), exposed for inspection.
Vector savgol_kernel(const SavGolSpec& spec);

// Drops n_per_side channels at each end of the matrix and the axis.
std::pair<Matrix, SpectralAxis> trim_edges(const Matrix& spectra,
                                           const SpectralAxis& axis,
                                           int n_per_side);

// Column means and the global scalar of a block autoscaling, frozen at fit
// time so test data can be transformed identically.
struct ScalingParams {
    Vector column_means;
    double global_scale = 1.0;  // population std of the centered block
};

// Centers each column, then divides the whole block by the global (population)
// standard deviation of the centered block. Throws on a constant block.
std::pair<Matrix, ScalingParams> block_autoscale(const Matrix& block);

// Replays frozen parameters on new rows of the same feature space.
Matrix apply_scaling(const Matrix& block, const ScalingParams& params);

// Applies savgol to every pixel spectrum of a cube, then trims
// trim_per_side channels at both ends of the spectral axis.
HyperCube preprocess_cube(const HyperCube& cube, const SavGolSpec& spec,
                          int trim_per_side);

}  // namespace hsfuse
