/**
 * @file pipeline.cpp
 * @brief Stage orchestration, batch runs and scoring
 */

#include <aquapipe/pipeline/pipeline.hpp>

#include <aquapipe/imgcore/color_convert.hpp>
#include <aquapipe/imgcore/io.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace aquapipe::pipeline {

namespace fs = std::filesystem;

namespace {

ImageBuffer as_srgb(const ImageBuffer& img) {
    return img.space() == ColorSpace::SRGB ? img : convert(img, ColorSpace::SRGB);
}

template <class Fn>
auto run_stage(Stage s, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage_name(s), e.what());
    }
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const color::WaterTypeProfile& pick_profile(const color::AttenuationProfile& eta, const PipelineConfig& cfg) {
    if (cfg.water_type == "auto") {
        return color::classify_water_type(eta, cfg.water_types,
                                          cfg.wti_literal_argmax ? color::WtiMode::LITERAL_ARGMAX : color::WtiMode::NEAREST);
    }
    for (const auto& p : cfg.water_types.profiles) {
        if (p.name == cfg.water_type) return p;
    }
    throw ConfigError("water type '" + cfg.water_type + "' is not in the table");
}

}  // namespace

EnhanceResult enhance(const ImageBuffer& input, const PipelineConfig& cfg, const ImageBuffer* reference) {
    cfg.validate();
    EnhanceResult res{as_srgb(input), {}};
    ImageBuffer& img = res.image;
    EnhanceTrace& tr = res.trace;

    if (cfg.stages.illumination) {
        run_stage(Stage::ILLUMINATION, [&] {
            const illum::HybridResult h = illum::hybrid_illumination(img, cfg.illumination);
            img = h.image;
            tr.alpha = h.alpha;
            tr.gamma = h.gamma;
        });
    }
    if (cfg.stages.wgaf) {
        run_stage(Stage::WGAF, [&] {
            filt::WgafResult w = filt::wgaf_filter(img, cfg.wgaf);
            img = std::move(w.image);
            tr.wgaf_branches = w.branches;
            tr.wgaf_sigma = w.wavelet_sigma;
        });
    }
    if (cfg.stages.sacc) {
        run_stage(Stage::SACC, [&] {
            const color::AttenuationProfile eta = color::estimate_attenuation(img);
            const color::WaterTypeProfile& profile = pick_profile(eta, cfg);
            img = color::fuse_priors(img, profile, color::FusionParams{cfg.dcp, cfg.mudcp, cfg.rcp_lambda});
            tr.attenuation = eta.eta;
            tr.water_type = profile.name;
        });
    }
    if (cfg.stages.balance) {
        run_stage(Stage::BALANCE, [&] {
            std::optional<ImageBuffer> loaded;
            if (reference == nullptr && cfg.reference_image) loaded = as_srgb(load_image(*cfg.reference_image));
            const ImageBuffer* ref = reference != nullptr ? reference : (loaded ? &*loaded : nullptr);
            if (ref != nullptr) {
                img = color::histogram_match(img, as_srgb(*ref));
                tr.histogram_matched = true;
            } else {
                const color::BalanceResult b = color::perceptual_balance_detailed(img, cfg.balance);
                img = b.image;
                tr.balance_delta_e = b.final_delta_e;
                tr.balance_iterations = b.iterations;
            }
        });
    }
    if (cfg.stages.hsv) {
        run_stage(Stage::HSV, [&] { img = color::hsv_adjust(img, cfg.hsv.sat_gain, cfg.hsv.val_gain); });
    }
    return res;
}

metrics::MetricReport score(const ImageBuffer& img, const ImageBuffer* ref, const metrics::MetricCoefficients& c) {
    const ImageBuffer a = as_srgb(img);
    if (ref == nullptr) return metrics::evaluate(a, nullptr, c);
    const ImageBuffer b = as_srgb(*ref);
    return metrics::evaluate(a, &b, c);
}

metrics::MetricReport score_file(const fs::path& img, const std::optional<fs::path>& ref,
                                 const metrics::MetricCoefficients& c) {
    const ImageBuffer a = load_image(img);
    if (!ref) return score(a, nullptr, c);
    const ImageBuffer b = load_image(*ref);
    return score(a, &b, c);
}

std::size_t JobReport::failures() const noexcept {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const JobEntry& e) { return !e.ok; }));
}

std::string output_name(const fs::path& input) {
    const std::string name = input.filename().string();
    return lower(input.extension().string()) == ".png" ? name : name + ".png";
}

std::vector<fs::path> list_images(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("input directory " + dir.string() + " does not exist");
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string ext = lower(e.path().extension().string());
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

JobEntry process_file(const fs::path& input, const fs::path& output, const PipelineConfig& cfg,
                      const ImageBuffer* reference) {
    const auto t0 = std::chrono::steady_clock::now();
    JobEntry e;
    e.input = input.string();
    e.output = output.string();
    try {
        const ImageBuffer src = as_srgb(load_image(input));
        e.before = metrics::evaluate(src, nullptr, cfg.coefficients);
        EnhanceResult r = enhance(src, cfg, reference);
        e.trace = std::move(r.trace);
        // Score what is written: the 8-bit PNG decodes to exactly these samples.
        ImageBuffer written = std::move(r.image);
        for (double& v : written.samples()) v = quantize_byte(v) / 255.0;
        e.after = metrics::evaluate(written, nullptr, cfg.coefficients);
        save_image(written, output);
        e.ok = true;
    } catch (const std::exception& ex) {
        e.ok = false;
        e.error = ex.what();
    }
    e.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

JobReport run_batch(const fs::path& input_dir, const fs::path& output_dir, const PipelineConfig& cfg, int jobs) {
    cfg.validate();
    const std::vector<fs::path> inputs = list_images(input_dir);
    if (inputs.empty()) throw IoError("no .png/.jpg images in " + input_dir.string());
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (!fs::is_directory(output_dir)) throw IoError("cannot create output directory " + output_dir.string());

    std::optional<ImageBuffer> reference;
    if (cfg.stages.balance && cfg.reference_image) reference = as_srgb(load_image(*cfg.reference_image));
    const ImageBuffer* ref = reference ? &*reference : nullptr;

    JobReport report;
    report.entries.resize(inputs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
            report.entries[i] = process_file(inputs[i], output_dir / output_name(inputs[i]), cfg, ref);
        }
    };
    const int n = std::clamp(jobs, 1, static_cast<int>(inputs.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return report;
}

}  // namespace aquapipe::pipeline
