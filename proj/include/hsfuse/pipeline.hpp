// End-to-end orchestration of both pipelines from a JSON config: patching,
// reduction, feature extraction, fusion, cross-validation and reporting.
#pragma once

#include "hsfuse/cube_io.hpp"
#include "hsfuse/discriminant.hpp"
#include "hsfuse/fusion.hpp"
#include "hsfuse/patching.hpp"
#include "hsfuse/preprocess.hpp"
#include "hsfuse/spatial_features.hpp"
#include "hsfuse/spectral_features.hpp"
#include "hsfuse/spectral_reduction.hpp"
#include "hsfuse/synth.hpp"
#include "hsfuse/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hsfuse {

enum class FusionMode { Mbpca, Rosa };

struct InputConfig {
    std::string cube_path;            // .hdr
    std::string white_path;           // optional (.csv or .hdr)
    std::string dark_path;
    std::string to_unit;              // "", "reflectance", "absorbance"
    double absorbance_floor = 1e-6;
    std::string mask_path;            // optional .pgm
    std::string zones_path;           // optional .csv
};

struct PipelineConfig {
    std::uint64_t seed = 0;
    std::optional<InputConfig> input;
    std::optional<SyntheticSpec> synthetic;           // two-class scene
    std::optional<SyntheticWoodSpec> synthetic_wood;  // unlabelled scene

    int patch_width = 3;
    std::optional<SavGolSpec> savgol_spec;
    int trim_per_side = 0;

    PcaSelector reduction = ComponentCount{1};
    SpatialMethod spatial_method = SpatialMethod::Tensor;
    TextureOptions texture;
    SpectralOptions spectral;

    FusionMode fusion_mode = FusionMode::Mbpca;
    int fusion_components = 7;

    bool cv_enabled = false;
    int cv_outer_subset_size = 20;
    int cv_n_outer = 2;
    int cv_a_min = 1;
    int cv_a_max = 10;

    std::optional<long> expected_patches;

    // Mode-consistent field presence: rosa requires a label source, mbpca
    // forbids one. Throws Error when violated.
    void validate() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

// The frozen feature-extraction state plus the blocks it produced.
struct FeatureBundle {
    std::shared_ptr<const HyperCube> cube;  // after pretreatment
    PatchSet patches;
    PcaModel pca;
    SpatialExtractor spatial;
    SpectralOptions spectral;
    std::vector<FeatureBlock> blocks;  // spatial blocks first, then spectral
    std::vector<CensusRow> census;
    long svd_zero_filled = 0;
};

// Loads (or synthesizes) the configured cube and zones.
struct SceneData {
    std::shared_ptr<const HyperCube> cube;
    std::vector<ZoneSpec> zones;
    long absorbance_floored = 0;
    std::vector<std::string> warnings;
};
SceneData load_scene(const PipelineConfig& config);

// Fits PCA / quantization ranges on this data and extracts all blocks.
FeatureBundle extract_features(const PipelineConfig& config,
                               const SceneData& scene);

// Re-extracts features on new data with the frozen models of `fitted`.
FeatureBundle apply_features(const PipelineConfig& config,
                             const FeatureBundle& fitted,
                             const SceneData& scene);

Vector labels_as_response(const PatchSet& patches);

// Feature model persistence (pretreatment, PCA, texture ranges).
void save_feature_model(const PipelineConfig& config,
                        const FeatureBundle& bundle, const std::string& path);
// Returns a config patched with the stored extraction parameters plus the
// frozen models, ready for apply_features.
std::pair<PipelineConfig, FeatureBundle> load_feature_model(
    const std::string& path);

// Full run: executes every configured stage into out_dir and writes a
// manifest listing all outputs with content hashes. Returns output paths.
std::vector<std::string> run_pipeline(const PipelineConfig& config,
                                      const std::string& out_dir);

}  // namespace hsfuse
