/**
 * @file config.hpp
 * @brief Pipeline configuration: every module tunable, stage toggles and
 *        the YAML file format
 */
#pragma once

#include <aquapipe/color.hpp>
#include <aquapipe/filt/wgaf.hpp>
#include <aquapipe/illum.hpp>
#include <aquapipe/metrics.hpp>
#include <aquapipe/priors.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace aquapipe::pipeline {

enum class Stage { ILLUMINATION, WGAF, SACC, BALANCE, HSV };

inline constexpr Stage kStages[] = {Stage::ILLUMINATION, Stage::WGAF, Stage::SACC, Stage::BALANCE, Stage::HSV};

/// Config/CLI name of a stage: illumination, wgaf, sacc, balance, hsv.
const char* stage_name(Stage s) noexcept;
/// Throws ConfigError for unknown names.
Stage parse_stage(const std::string& name);

struct StageToggles {
    bool illumination = true;
    bool wgaf = true;
    bool sacc = true;
    bool balance = true;
    bool hsv = true;

    bool& operator[](Stage s) noexcept;
    bool operator[](Stage s) const noexcept;
};

struct HsvParams {
    double sat_gain = 1.1;
    double val_gain = 1.0;
};

struct PipelineConfig {
    StageToggles stages;
    illum::HybridIllumParams illumination;
    filt::WgafParams wgaf;
    priors::DcpParams dcp;
    priors::MudcpParams mudcp;
    std::optional<double> rcp_lambda;  ///< adaptive when empty
    color::WaterTypeTable water_types = color::WaterTypeTable::defaults();
    bool wti_literal_argmax = false;
    std::string water_type = "auto";   ///< "auto" or a table entry name
    color::PerceptualBalanceParams balance;
    std::optional<std::filesystem::path> reference_image;  ///< switches balance to histogram matching
    HsvParams hsv;
    metrics::MetricCoefficients coefficients;

    /// Checks every module invariant; throws ConfigError.
    void validate() const;
};

/// Parses YAML text. Missing keys keep their defaults; unknown keys throw ConfigError.
PipelineConfig parse_config(const std::string& yaml_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Fully populated YAML document for `cfg`.
std::string dump_config(const PipelineConfig& cfg);

}  // namespace aquapipe::pipeline
