// aquapipe command-line front end.
//
// Exit codes: 0 success, 1 partial batch failure, 2 usage or config error,
// 3 I/O error.

#include <aquapipe/imgcore/io.hpp>
#include <aquapipe/pipeline/pipeline.hpp>
#include <aquapipe/pipeline/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace ap = aquapipe;
namespace pl = aquapipe::pipeline;
namespace fs = std::filesystem;

namespace {

enum Exit { OK = 0, PARTIAL = 1, USAGE = 2, IO = 3 };

pl::PipelineConfig resolve_config(const std::string& path) {
    if (!path.empty()) return pl::load_config(path);
    if (const char* env = std::getenv("AQUAPIPE_CONFIG"); env != nullptr && *env != '\0') return pl::load_config(env);
    return pl::PipelineConfig{};
}

void write_json(const nlohmann::json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ap::IoError("cannot write report " + path.string());
    out << j.dump(2) << '\n';
}

void print_summary(const pl::JobReport& r) {
    for (const auto& e : r.entries) {
        if (!e.ok) {
            std::cerr << "FAILED " << e.input << ": " << e.error << '\n';
            continue;
        }
        std::cout << e.input << " -> " << e.output;
        if (e.trace.water_type) std::cout << "  [" << *e.trace.water_type << "]";
        if (e.before && e.after) {
            std::cout << "  UIQM " << e.before->uiqm << " -> " << e.after->uiqm << "  UCIQE " << e.before->uciqe
                      << " -> " << e.after->uciqe;
        }
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Underwater image enhancement and quality scoring"};
    app.require_subcommand(0, 1);
    bool print_default_flag = false;
    app.add_flag("--print-default-config", print_default_flag, "Print the fully populated default config and exit");

    std::string config_path;
    std::string report_path;

    auto* enhance = app.add_subcommand("enhance", "Enhance one image");
    std::string in_path, out_path, water_type, reference;
    std::vector<std::string> disabled;
    enhance->add_option("input", in_path, "Input image")->required();
    enhance->add_option("-o,--output", out_path, "Output PNG")->required();
    enhance->add_option("--config", config_path, "YAML config (default: $AQUAPIPE_CONFIG)");
    enhance->add_option("--water-type", water_type, "auto or a water_types entry name");
    enhance->add_option("--reference-image", reference, "Histogram-match to this image instead of perceptual balance");
    enhance->add_option("--report", report_path, "Write a JSON report (and CSV alongside)");
    enhance->add_option("--disable-stage", disabled, "illumination, wgaf, sacc, balance or hsv (repeatable)");

    auto* batch = app.add_subcommand("batch", "Enhance every .png/.jpg in a directory");
    std::string in_dir, out_dir;
    int jobs = 1;
    batch->add_option("input_dir", in_dir)->required();
    batch->add_option("output_dir", out_dir)->required();
    batch->add_option("--config", config_path, "YAML config (default: $AQUAPIPE_CONFIG)");
    batch->add_option("--report", report_path, "Write a JSON report (and CSV alongside)");
    batch->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* score = app.add_subcommand("score", "Compute quality metrics");
    std::string image, ref;
    score->add_option("image", image)->required();
    score->add_option("--ref", ref, "Reference image for SSIM and delta E");
    score->add_option("--report", report_path, "Write the metric report as JSON");
    score->add_option("--config", config_path, "YAML config for metric coefficients");

    auto* print_default = app.add_subcommand("print-default-config", "Print the fully populated default config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? OK : USAGE;
    }

    try {
        if (print_default_flag || *print_default) {
            std::cout << pl::dump_config(pl::PipelineConfig{});
            return OK;
        }
        if (*enhance) {
            pl::PipelineConfig cfg = resolve_config(config_path);
            if (!water_type.empty()) cfg.water_type = water_type;
            if (!reference.empty()) cfg.reference_image = reference;
            for (const auto& name : disabled) cfg.stages[pl::parse_stage(name)] = false;
            cfg.validate();
            // Decode up front so unreadable input maps to the I/O exit code;
            // anything failing after this point is a processing failure.
            (void)ap::load_image(in_path);
            pl::JobReport rep;
            rep.entries.push_back(pl::process_file(in_path, out_path, cfg));
            if (!report_path.empty()) pl::write_report(rep, report_path);
            print_summary(rep);
            return rep.entries.front().ok ? OK : PARTIAL;
        }
        if (*batch) {
            const pl::PipelineConfig cfg = resolve_config(config_path);
            const pl::JobReport rep = pl::run_batch(in_dir, out_dir, cfg, jobs);
            if (!report_path.empty()) pl::write_report(rep, report_path);
            print_summary(rep);
            std::cout << rep.entries.size() - rep.failures() << '/' << rep.entries.size() << " images enhanced\n";
            return rep.failures() == 0 ? OK : PARTIAL;
        }
        if (*score) {
            const pl::PipelineConfig cfg = resolve_config(config_path);
            const auto opt_ref = ref.empty() ? std::nullopt : std::optional<fs::path>(ref);
            const nlohmann::json j = pl::to_json(pl::score_file(image, opt_ref, cfg.coefficients));
            if (!report_path.empty()) write_json(j, report_path);
            std::cout << j.dump(2) << '\n';
            return OK;
        }
        std::cerr << app.help();
        return USAGE;
    } catch (const ap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return USAGE;
    } catch (const ap::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return IO;
    } catch (const ap::FormatError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return IO;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return IO;
    }
}
