// Dimension reduction of the spectral axis: PCA fitted on training spectra,
// then projection of every patch pixel to a small number of score images.
#pragma once

#include "hsfuse/types.hpp"

#include <string>
#include <variant>

namespace hsfuse {

// Either a fixed component count or a cumulative explained-variance target.
struct ComponentCount { int k; };
struct VarianceThreshold { double tau; };
using PcaSelector = std::variant<ComponentCount, VarianceThreshold>;

struct PcaModel {
    Vector mean;                       // I_lambda
    Matrix loadings;                   // I_lambda x B_s, orthonormal columns
    Vector explained_variance_ratio;   // B_s, non-increasing

    int components() const { return static_cast<int>(loadings.cols()); }
    int input_dim() const { return static_cast<int>(loadings.rows()); }

    // Scores of row spectra: (X - mean) * loadings.
    Matrix transform(const Matrix& spectra) const;
};

// Mean-centered PCA via singular value decomposition. Every loading column
// is flipped so its largest-magnitude coefficient is positive. A fixed count
// larger than the data rank is an error.
PcaModel fit_pca(const Matrix& training, const PcaSelector& selector);

// Monochromatic score images of every patch: values[p][comp][r][c].
struct ReducedPatchSet {
    int n = 0;
    int components = 0;
    int k = 0;
    std::vector<double> values;

    double at(int p, int comp, int r, int c) const {
        return values[((std::size_t(p) * components + comp) * k + r) * k + c];
    }
    double& at(int p, int comp, int r, int c) {
        return values[((std::size_t(p) * components + comp) * k + r) * k + c];
    }
    Matrix image(int p, int comp) const;
};

// Replaces every pixel spectrum x by loadings^T (x - mean).
ReducedPatchSet project_patches(const PatchSet& patches, const PcaModel& model);

// JSON persistence (mean, loadings, ratios).
void save_pca_json(const PcaModel& model, const std::string& path);
PcaModel load_pca_json(const std::string& path);

}  // namespace hsfuse
