// Serial reference implementations, written straight from the definitions.
// They are deliberately naive: tests compare the optimized kernels against
// them, and the benchmark measures the gap. Not linked into the library.
#pragma once

#include "hsfuse/spatial_features.hpp"
#include "hsfuse/types.hpp"

#include <vector>

namespace hsfuse::reference {

// Savitzky-Golay by explicit per-window polynomial least squares: for every
// output sample, fit a degree-`degree` polynomial to the window (edge
// replicated) and evaluate its deriv_order-th derivative at the center.
Matrix savgol_polyfit(const Matrix& spectra, int window, int degree,
                      int deriv_order);

// GLCM by brute-force enumeration of every ordered pixel pair.
Matrix glcm_bruteforce(const Eigen::MatrixXi& quantized, int ng, int d,
                       const std::vector<int>& orientations_deg);

// The 14 Haralick statistics recomputed definition by definition with plain
// loops; the maximal correlation coefficient uses an unsymmetrized Q matrix
// and a general (non-selfadjoint) eigensolver.
std::array<double, 14> haralick_definitions(const Matrix& p);

// PCA through the eigendecomposition of the sample covariance matrix.
struct PcaResult {
    Vector mean;
    Matrix loadings;  // columns, largest-|coefficient| positive
    Vector explained_variance_ratio;
};
PcaResult pca_covariance(const Matrix& data, int components);

// Principal-component scores of a column-centered matrix through the
// eigendecomposition of its Gram matrix.
Matrix pca_scores_gram(const Matrix& centered, int components);

// Right-singular vectors of an uncentered matrix via the eigendecomposition
// of m^T m.
Matrix svd_loadings_gram(const Matrix& m, int count);

// Single-block PLS1 (NIPALS with X deflation). Returns the regression
// vector for centered X and y.
Vector pls1_nipals(const Matrix& x_centered, const Vector& y_centered,
                   int components);

// The ROSA winner sequence recomputed by exhaustive per-component residual
// minimization.
std::vector<int> rosa_winners_bruteforce(const std::vector<Matrix>& blocks,
                                         const Vector& y, int components);

// Two-Gaussian posterior by direct density evaluation.
Matrix lda_posteriors_density(const Matrix& scores, const Matrix& class_means,
                              const Matrix& covariance,
                              const Eigen::Vector2d& priors);

// Serial counterparts of the parallel per-patch kernels (same math as the
// library, no OpenMP); used by the benchmark for like-for-like timing.
std::vector<TensorFeatures> tensor_features_serial(
    const hsfuse::ReducedPatchSet& reduced, int component);

}  // namespace hsfuse::reference
