#include "hsfuse/spectral_reduction.hpp"

#include "hsfuse/parallel.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <fstream>

using nlohmann::json;

namespace hsfuse {

namespace {

// Deterministic sign: flip the column so its largest-magnitude coefficient
// (first such index on ties) is positive.
void fix_sign(Eigen::Ref<Vector> column) {
    int best = 0;
    double best_abs = 0.0;
    for (int i = 0; i < column.size(); ++i) {
        const double a = std::abs(column[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (column[best] < 0.0) column = -column;
}

}  // namespace

Matrix PcaModel::transform(const Matrix& spectra) const {
    if (spectra.cols() != loadings.rows()) {
        throw Error("spectrum length does not match PCA model");
    }
    return (spectra.rowwise() - mean.transpose()) * loadings;
}

PcaModel fit_pca(const Matrix& training, const PcaSelector& selector) {
    const int m = static_cast<int>(training.rows());
    const int dim = static_cast<int>(training.cols());
    if (m < 2) throw Error("PCA needs at least 2 training spectra");

    PcaModel model;
    model.mean = training.colwise().mean();
    Matrix centered = training.rowwise() - model.mean.transpose();

    Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double total = sv.array().square().sum();
    if (total <= 0.0) throw Error("PCA training data has zero variance");

    const double tol =
        sv[0] * std::max(m, dim) * std::numeric_limits<double>::epsilon();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol) ++rank;
    }

    int count;
    if (std::holds_alternative<ComponentCount>(selector)) {
        count = std::get<ComponentCount>(selector).k;
        if (count < 1) throw Error("component count must be >= 1");
        if (count > rank) {
            throw Error("requested " + std::to_string(count) +
                        " components but data rank is " + std::to_string(rank));
        }
    } else {
        const double tau = std::get<VarianceThreshold>(selector).tau;
        if (!(tau > 0.0 && tau <= 1.0)) {
            throw Error("variance threshold must be in (0, 1]");
        }
        double cum = 0.0;
        count = rank;
        for (int i = 0; i < rank; ++i) {
            cum += sv[i] * sv[i] / total;
            if (cum >= tau - 1e-12) {
                count = i + 1;
                break;
            }
        }
    }

    model.loadings = svd.matrixV().leftCols(count);
    model.explained_variance_ratio.resize(count);
    for (int i = 0; i < count; ++i) {
        model.explained_variance_ratio[i] = sv[i] * sv[i] / total;
        fix_sign(model.loadings.col(i));
    }
    return model;
}

Matrix ReducedPatchSet::image(int p, int comp) const {
    Matrix m(k, k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) m(r, c) = at(p, comp, r, c);
    }
    return m;
}

ReducedPatchSet project_patches(const PatchSet& patches,
                                const PcaModel& model) {
    const HyperCube& cube = *patches.cube;
    if (cube.bands() != model.input_dim()) {
        throw Error("cube band count does not match PCA model");
    }
    ReducedPatchSet out;
    out.n = patches.n();
    out.components = model.components();
    out.k = patches.k;
    out.values.resize(std::size_t(out.n) * out.components * out.k * out.k);

    const int k = patches.k, h = (k - 1) / 2, B = cube.bands();
    parallel_for(out.n, [&](std::ptrdiff_t p) {
        auto [cr, cc] = patches.centers[p];
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) {
                Eigen::Map<const Vector> x(cube.spectrum(cr - h + r, cc - h + c),
                                           B);
                for (int comp = 0; comp < out.components; ++comp) {
                    out.at(static_cast<int>(p), comp, r, c) =
                        model.loadings.col(comp).dot(x - model.mean);
                }
            }
        }
    });
    return out;
}

void save_pca_json(const PcaModel& model, const std::string& path) {
    json j;
    j["mean"] = std::vector<double>(model.mean.data(),
                                    model.mean.data() + model.mean.size());
    j["explained_variance_ratio"] = std::vector<double>(
        model.explained_variance_ratio.data(),
        model.explained_variance_ratio.data() +
            model.explained_variance_ratio.size());
    j["loadings"] = json::array();
    for (int c = 0; c < model.components(); ++c) {
        j["loadings"].push_back(std::vector<double>(
            model.loadings.col(c).data(),
            model.loadings.col(c).data() + model.loadings.rows()));
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

PcaModel load_pca_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    json j = json::parse(in);
    PcaModel model;
    const auto mean = j.at("mean").get<std::vector<double>>();
    model.mean = Eigen::Map<const Vector>(mean.data(), mean.size());
    const auto ratios =
        j.at("explained_variance_ratio").get<std::vector<double>>();
    model.explained_variance_ratio =
        Eigen::Map<const Vector>(ratios.data(), ratios.size());
    const auto& cols = j.at("loadings");
    model.loadings.resize(mean.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto col = cols[c].get<std::vector<double>>();
        if (col.size() != mean.size()) throw Error("ragged loadings in " + path);
        model.loadings.col(c) = Eigen::Map<const Vector>(col.data(), col.size());
    }
    return model;
}

}  // namespace hsfuse
