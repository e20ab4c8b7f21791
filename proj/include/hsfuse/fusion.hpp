// Multiblock fusion of scaled feature blocks: consensus PCA (unsupervised)
// and ROSA-PLS (supervised, one winning block per latent variable).
#pragma once

#include "hsfuse/preprocess.hpp"
#include "hsfuse/types.hpp"

#include <string>
#include <vector>

namespace hsfuse {

// Blocks sharing N rows, each autoscaled exactly once with its parameters
// frozen for later transformation of test data. Raw values are kept so
// cross-validation can rescale per fold.
struct BlockCollection {
    std::vector<FeatureBlock> raw;
    std::vector<ScalingParams> scaling;
    std::vector<Matrix> scaled;

    int n() const { return raw.empty() ? 0 : raw.front().n(); }
    int block_count() const { return static_cast<int>(raw.size()); }
    int total_columns() const;
    std::vector<int> column_offsets() const;  // block start columns in concat
    Matrix concat_scaled() const;
};

// Autoscales each block and freezes the parameters. Throws on mismatched N
// or a constant block.
BlockCollection assemble(std::vector<FeatureBlock> blocks);

// Scales test blocks with the collection's frozen parameters.
std::vector<Matrix> transform_blocks(const BlockCollection& trained,
                                     const std::vector<FeatureBlock>& test_raw);

// ---------------------------------------------------------------------------
// MB-PCA (consensus PCA). Super scores equal the principal-component scores
// of the column-wise concatenation of the scaled blocks; block loadings are
// p_{b,a} = X_b^T t_a / (t_a^T t_a).
// ---------------------------------------------------------------------------
struct MbpcaModel {
    int components = 0;
    Matrix super_scores;                   // N x A, orthogonal columns
    std::vector<Matrix> block_loadings;    // R_b x A per block
    Vector explained_variance;             // fraction per component
    Matrix concat_loadings;                // R_total x A
};

MbpcaModel fit_mbpca(const BlockCollection& collection, int components);

// ---------------------------------------------------------------------------
// ROSA-PLS. Components are won by the block whose candidate score leaves the
// smallest response residual; candidate scores are orthogonalized against
// the accepted ones, so the X blocks are never deflated.
// ---------------------------------------------------------------------------
struct RosaModel {
    int components = 0;          // achieved (may be below the request)
    Matrix scores;               // T: N x A, orthonormal columns
    std::vector<int> winners;    // block index per component
    Matrix weights;              // W: R_total x A, zero outside the winner
    Matrix loadings;             // P = X_concat^T T
    Vector q;                    // T^T y_centered
    Vector beta;                 // regression vector on the scaled concat
    double y_mean = 0.0;
    std::vector<int> block_offsets;
    std::vector<int> block_sizes;
    std::vector<std::string> notes;  // tie-breaks, early stop

    // Scores of new (already scaled) blocks; leading columns reproduce any
    // truncation of the model to fewer components.
    Matrix score_blocks(const std::vector<Matrix>& scaled_blocks,
                        int upto = -1) const;
    // y_mean + X_concat * beta.
    Vector predict(const std::vector<Matrix>& scaled_blocks) const;
};

RosaModel fit_rosa(const BlockCollection& collection, const Vector& y,
                   int components);

// Convenience: transform + score in one call.
Matrix rosa_scores(const RosaModel& model, const BlockCollection& trained,
                   const std::vector<FeatureBlock>& test_raw);

// The block-selection trace: one row per latent variable with the winning
// block's kind and index, optionally annotated with a CV error column.
void write_selection_trace(const RosaModel& model,
                           const std::vector<FeatureBlock>& blocks,
                           const std::vector<double>& cv_error_per_component,
                           const std::string& path);

// Model persistence (JSON with embedded matrices).
void save_rosa_json(const RosaModel& model, const std::string& path);
RosaModel load_rosa_json(const std::string& path);
void save_scaling_json(const std::vector<ScalingParams>& params,
                       const std::string& path);
std::vector<ScalingParams> load_scaling_json(const std::string& path);

}  // namespace hsfuse
