/**
 * @file pipeline.hpp
 * @brief End-to-end enhancement, batch processing and scoring
 *
 * Stage order is fixed: hybrid illumination, WGAF denoising, scene-adaptive
 * prior fusion, perceptual balance (histogram matching when a reference
 * image is configured) and HSV gains. Each stage can be switched off.
 */
#pragma once

#include <aquapipe/pipeline/config.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace aquapipe::pipeline {

/// Adaptive values chosen while enhancing one image.
struct EnhanceTrace {
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<filt::WgafBranchStats> wgaf_branches;
    std::optional<double> wgaf_sigma;
    std::optional<std::array<double, 3>> attenuation;
    std::optional<std::string> water_type;
    std::optional<double> balance_delta_e;   ///< distance to the Lab reference after balancing
    std::optional<int> balance_iterations;
    bool histogram_matched = false;
};

struct EnhanceResult {
    ImageBuffer image;
    EnhanceTrace trace;
};

/**
 * Runs the enabled stages on `img`. GRAY and LINEAR_RGB inputs are brought
 * to SRGB first. A stage failure is rethrown as StageError naming the stage.
 * `reference` overrides the configured reference image for histogram matching.
 */
EnhanceResult enhance(const ImageBuffer& img, const PipelineConfig& cfg, const ImageBuffer* reference = nullptr);

/// Metric report for an image in any supported space (converted to SRGB).
metrics::MetricReport score(const ImageBuffer& img, const ImageBuffer* ref, const metrics::MetricCoefficients& c);
metrics::MetricReport score_file(const std::filesystem::path& img, const std::optional<std::filesystem::path>& ref,
                                 const metrics::MetricCoefficients& c);

struct JobEntry {
    std::string input;
    std::string output;
    bool ok = false;
    std::string error;
    EnhanceTrace trace;
    std::optional<metrics::MetricReport> before;
    std::optional<metrics::MetricReport> after;
    double wall_ms = 0.0;
};

struct JobReport {
    std::vector<JobEntry> entries;  ///< sorted by input path

    std::size_t failures() const noexcept;
};

/// Enhances a file, writes the PNG output and scores before and after.
JobEntry process_file(const std::filesystem::path& input, const std::filesystem::path& output,
                      const PipelineConfig& cfg, const ImageBuffer* reference = nullptr);

/// Output name for an input file: PNG names are kept, anything else gets ".png" appended.
std::string output_name(const std::filesystem::path& input);

/// Files under `dir` (not recursive) with a .png, .jpg or .jpeg extension, sorted.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/**
 * Enhances every image in `input_dir` into `output_dir` using `jobs` worker
 * threads. Per-image failures are recorded and the batch continues. Throws
 * IoError when the directory is missing or holds no candidate images.
 */
JobReport run_batch(const std::filesystem::path& input_dir, const std::filesystem::path& output_dir,
                    const PipelineConfig& cfg, int jobs = 1);

}  // namespace aquapipe::pipeline
