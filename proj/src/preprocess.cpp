#include "hsfuse/preprocess.hpp"

#include "hsfuse/parallel.hpp"

#include <cmath>

namespace hsfuse {

void SavGolSpec::validate() const {
    if (window < 3 || window % 2 == 0) {
        throw Error("savgol window must be odd and >= 3, got " +
                    std::to_string(window));
    }
    if (degree < 0 || degree >= window) {
        throw Error("savgol degree must satisfy 0 <= degree < window");
    }
    if (deriv_order < 0 || deriv_order > degree) {
        throw Error("savgol derivative order must satisfy 0 <= order <= degree");
    }
}

Vector savgol_kernel(const SavGolSpec& spec) {
    spec.validate();
    const int m = (spec.window - 1) / 2;
    // Vandermonde design over centered offsets; the kernel is d! times the
    // d-th row of the pseudo-inverse.
    Matrix design(spec.window, spec.degree + 1);
    for (int i = 0; i < spec.window; ++i) {
        double p = 1.0;
        for (int d = 0; d <= spec.degree; ++d) {
            design(i, d) = p;
            p *= (i - m);
        }
    }
    Matrix pinv = design.colPivHouseholderQr().solve(
        Matrix::Identity(spec.window, spec.window));
    double factorial = 1.0;
    for (int d = 2; d <= spec.deriv_order; ++d) factorial *= d;
    return factorial * pinv.row(spec.deriv_order).transpose();
}

Matrix savgol(const Matrix& spectra, const SavGolSpec& spec) {
    spec.validate();
    const int n = static_cast<int>(spectra.cols());
    if (n < spec.window) {
        throw Error("spectrum length " + std::to_string(n) +
                    " below savgol window " + std::to_string(spec.window));
    }
    const Vector kernel = savgol_kernel(spec);
    const int m = (spec.window - 1) / 2;

    Matrix out(spectra.rows(), n);
    parallel_for(spectra.rows(), [&](std::ptrdiff_t row) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int t = -m; t <= m; ++t) {
                int idx = j + t;
                if (idx < 0) idx = 0;            // edge replication; these
                if (idx >= n) idx = n - 1;       // samples are trimmed later
                acc += kernel[t + m] * spectra(row, idx);
            }
            out(row, j) = acc;
        }
    });
    return out;
}

std::pair<Matrix, SpectralAxis> trim_edges(const Matrix& spectra,
                                           const SpectralAxis& axis,
                                           int n_per_side) {
    const int n = static_cast<int>(spectra.cols());
    if (axis.size() != n) throw Error("axis length does not match spectra");
    if (n_per_side < 0) throw Error("trim count must be non-negative");
    if (n <= 2 * n_per_side) {
        throw Error("cannot trim " + std::to_string(n_per_side) +
                    " per side from " + std::to_string(n) + " channels");
    }
    const int kept = n - 2 * n_per_side;
    Matrix m = spectra.middleCols(n_per_side, kept);
    SpectralAxis trimmed;
    trimmed.wavelengths.assign(axis.wavelengths.begin() + n_per_side,
                               axis.wavelengths.begin() + n_per_side + kept);
    return {std::move(m), std::move(trimmed)};
}

std::pair<Matrix, ScalingParams> block_autoscale(const Matrix& block) {
    if (block.rows() < 2) throw Error("block autoscale needs at least 2 rows");
    ScalingParams params;
    params.column_means = block.colwise().mean();
    Matrix centered = block.rowwise() - params.column_means.transpose();
    const double global_std =
        std::sqrt(centered.array().square().sum() /
                  static_cast<double>(block.size()));
    const double mean_magnitude =
        std::max(1.0, params.column_means.cwiseAbs().maxCoeff());
    if (global_std <= 1e-12 * mean_magnitude) {
        throw Error("degenerate constant block: global standard deviation is 0");
    }
    params.global_scale = global_std;
    centered /= global_std;
    return {std::move(centered), std::move(params)};
}

Matrix apply_scaling(const Matrix& block, const ScalingParams& params) {
    if (block.cols() != params.column_means.size()) {
        throw Error("scaling parameters do not match block width");
    }
    return (block.rowwise() - params.column_means.transpose()) /
           params.global_scale;
}

HyperCube preprocess_cube(const HyperCube& cube, const SavGolSpec& spec,
                          int trim_per_side) {
    spec.validate();
    const int B = cube.bands();
    if (B < spec.window) {
        throw Error("cube has fewer bands than the savgol window");
    }
    const Vector kernel = savgol_kernel(spec);
    const int m = (spec.window - 1) / 2;
    const int kept = B - 2 * trim_per_side;
    if (kept <= 0) throw Error("trim removes every channel");

    SpectralAxis axis;
    axis.wavelengths.assign(
        cube.axis.wavelengths.begin() + trim_per_side,
        cube.axis.wavelengths.begin() + trim_per_side + kept);
    HyperCube out = HyperCube::make(cube.height, cube.width, axis, cube.unit);
    out.mask = cube.mask;

    parallel_for(cube.pixel_count(), [&](std::ptrdiff_t p) {
        const double* s = cube.values.data() + std::size_t(p) * B;
        double* d = out.values.data() + std::size_t(p) * kept;
        for (int j = 0; j < kept; ++j) {
            const int src = j + trim_per_side;
            double acc = 0.0;
            for (int t = -m; t <= m; ++t) {
                int idx = src + t;
                if (idx < 0) idx = 0;
                if (idx >= B) idx = B - 1;
                acc += kernel[t + m] * s[idx];
            }
            d[j] = acc;
        }
    });
    return out;
}

}  // namespace hsfuse
