// LDA on fused scores, confusion-matrix arithmetic and the nested grouped
// cross-validation that selects the number of latent variables.
#pragma once

#include "hsfuse/fusion.hpp"
#include "hsfuse/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hsfuse {

struct LdaModel {
    Matrix class_means;   // 2 x A (rows: class 0, class 1)
    Matrix pooled_cov;    // A x A after shrinkage
    Eigen::Vector2d priors;
    double shrinkage = 1e-6;
};

// Gaussian LDA with pooled covariance Sigma + shrinkage*(trace/A)*I and
// empirical class priors. Requires both classes present and N > A.
LdaModel fit_lda(const Matrix& scores, const std::vector<int>& labels,
                 double shrinkage = 1e-6);

struct Prediction {
    std::vector<int> labels;
    Matrix posteriors;  // N x 2, rows sum to 1
};

Prediction lda_predict(const LdaModel& model, const Matrix& scores);

// Counts indexed [predicted][actual]. Percentages reproduce reported tables,
// which truncate to one decimal.
struct ConfusionMatrix {
    long counts[2][2] = {{0, 0}, {0, 0}};

    long total() const;
    double row_error_pct(int predicted) const;   // off-diagonal / row total
    double col_error_pct(int actual) const;      // off-diagonal / column total
    double overall_error_pct() const;
    double overall_error() const;                // untruncated fraction
};

ConfusionMatrix confusion(const std::vector<int>& predicted,
                          const std::vector<int>& actual);

// Percentage truncated to one decimal (the convention of the reported
// tables); 0 when the denominator is 0.
double truncate_pct(long numerator, long denominator);

void write_confusion_csv(const ConfusionMatrix& cm, const std::string& path,
                         const std::string& title = "");

// ---------------------------------------------------------------------------
// Nested grouped cross-validation.
// ---------------------------------------------------------------------------
struct CvPlan {
    std::vector<int> groups;    // per-sample group id (spot x date identity)
    int inner_groups = 0;       // declared count; 0 = derive, else validated
    int outer_subset_size = 20; // groups held out per outer fold
    int n_outer = 2;            // disjoint outer subsets
    int a_min = 1;
    int a_max = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

struct CvResult {
    int optimal_a = 0;                                // argmin of mean curve
    std::vector<int> a_grid;                          // candidate values
    std::vector<std::vector<double>> inner_error;     // [outer fold][a index]
    std::vector<double> mean_inner_error;             // averaged curve
    std::vector<int> selected_a_per_fold;
    std::vector<double> outer_error_per_fold;         // at the fold's A
    std::vector<std::string> warnings;
};

// Outer loop: hold out each random subset of groups. Inner loop:
// leave-one-group-out over the remaining groups, fitting ROSA at a_max once
// per fold and an LDA per truncation. Scaling is refitted inside every fold
// from its training rows only. Ties on the error curve go to the smaller A.
CvResult nested_cv(const BlockCollection& collection, const Vector& y,
                   const CvPlan& plan);

void write_cv_report_csv(const CvResult& result, const std::string& path);
void write_cv_summary_json(const CvResult& result, const std::string& path);

// ---------------------------------------------------------------------------
// Gray-level sweep.
// ---------------------------------------------------------------------------
struct SweepRow {
    int gray_levels;
    double min_cv_error;  // fraction
    int argmin_a;
};

// Re-runs feature extraction (via the supplied callback) and nested CV for
// every gray-level count in [ng_min, ng_max].
std::vector<SweepRow> sweep_gray_levels(
    const std::function<BlockCollection(int ng)>& features_for,
    const Vector& y, const CvPlan& plan, int ng_min, int ng_max);

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& path);

}  // namespace hsfuse
