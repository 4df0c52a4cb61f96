#include <doctest.h>

#include <aquapipe/imgcore/io.hpp>
#include <aquapipe/pipeline/pipeline.hpp>
#include <aquapipe/pipeline/report.hpp>

#include "schema_check.hpp"
#include "test_support.hpp"

#include <fstream>
#include <iterator>

using namespace aquapipe;
using namespace aquapipe::pipeline;
namespace fs = std::filesystem;

namespace {

// Smooth bluish scene with texture, quantized so it survives a PNG trip.
ImageBuffer scene(int w, int h, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    ImageBuffer img(w, h, ColorSpace::SRGB);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double s = 0.5 + 0.3 * std::sin(0.3 * x + 0.1 * seed) * std::cos(0.2 * y);
            img.at(0, y, x) = std::clamp(0.15 * s + u(rng) + 0.05, 0.0, 1.0);
            img.at(1, y, x) = std::clamp(0.55 * s + u(rng) + 0.1, 0.0, 1.0);
            img.at(2, y, x) = std::clamp(0.65 * s + u(rng) + 0.15, 0.0, 1.0);
        }
    for (double& v : img.samples()) v = quantize_byte(v) / 255.0;
    return img;
}

PipelineConfig all_off() {
    PipelineConfig cfg;
    for (Stage s : kStages) cfg.stages[s] = false;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("aquapipe_" + tag + "_" + std::to_string(std::random_device{}()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path make_batch_input(const fs::path& dir) {
    const fs::path in = dir / "in";
    fs::create_directories(in);
    save_image(scene(40, 32, 1), in / "a.png");
    save_image(scene(36, 36, 2), in / "b.png");
    save_image(scene(48, 24, 3), in / "c.png");
    fs::copy_file(test::data_dir() / "truncated.png", in / "d_broken.png");
    std::ofstream(in / "notes.txt") << "ignored";
    return in;
}

}  // namespace

TEST_CASE("config dump and parse round trip") {
    PipelineConfig cfg;
    cfg.stages.hsv = false;
    cfg.wgaf.t1 = 2.5e-4;
    cfg.dcp.omega = 0.9;
    cfg.rcp_lambda = 0.3;
    cfg.illumination.gamma_override = 0.7;
    cfg.reference_image = "ref.png";
    cfg.water_type = "turbid";
    cfg.coefficients.uciqe.c1 = 0.1 + 0.2;  // not a short decimal
    const std::string text = dump_config(cfg);
    const PipelineConfig back = parse_config(text);
    CHECK(dump_config(back) == text);
    CHECK(back.wgaf.t1 == cfg.wgaf.t1);
    CHECK(back.coefficients.uciqe.c1 == cfg.coefficients.uciqe.c1);
    CHECK(back.rcp_lambda == cfg.rcp_lambda);
    CHECK(back.reference_image == cfg.reference_image);
    CHECK_FALSE(back.stages.hsv);

    CHECK(dump_config(parse_config("")) == dump_config(PipelineConfig{}));
    CHECK(parse_config("dcp: {omega: 0.8}").dcp.omega == 0.8);
}

TEST_CASE("config rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_config("dcp: {omgea: 0.8}"), ConfigError);
    CHECK_THROWS_AS(parse_config("stagez: {}"), ConfigError);
    CHECK_THROWS_AS(parse_config("dcp: {omega: 1.5}"), ConfigError);
    CHECK_THROWS_AS(parse_config("dcp: {omega: fast}"), ConfigError);
    CHECK_THROWS_AS(parse_config("wti: {water_type: arctic}"), ConfigError);
    CHECK_THROWS_AS(parse_config("mudcp: {radii: [3, 7], weights: [1.0]}"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/aquapipe.yaml"), IoError);
    try {
        parse_config("balance: {bta: 1}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("balance.bta") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_stage("dehaze"), ConfigError);
    for (Stage s : kStages) CHECK(parse_stage(stage_name(s)) == s);
}

TEST_CASE("default config exposes every invented constant") {
    const auto problems = test::default_config_problems(dump_config(PipelineConfig{}));
    for (const auto& p : problems) INFO(p);
    CHECK(problems.empty());

    PipelineConfig changed;
    changed.balance.beta = 0.25;
    CHECK_FALSE(test::default_config_problems(dump_config(changed)).empty());
    CHECK_FALSE(test::default_config_problems("wgaf: {t1: 0.001}").empty());
}

TEST_CASE("all stages disabled is the identity") {
    std::mt19937_64 rng(11);
    const ImageBuffer img = test::random_image(rng, 23, 17);
    const EnhanceResult r = enhance(img, all_off());
    CHECK(r.image == img);
    CHECK_FALSE(r.trace.alpha.has_value());
    CHECK_FALSE(r.trace.water_type.has_value());
}

TEST_CASE("SACC alone matches the RCP branch for a pure-RCP table") {
    const ImageBuffer img = scene(32, 32, 5);
    PipelineConfig cfg = all_off();
    cfg.stages.sacc = true;
    cfg.water_types.profiles = {{"only", {1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0, 0.0, 0.0}}};
    const EnhanceResult r = enhance(img, cfg);
    CHECK(r.image == priors::rcp_compensate(img));
    CHECK(r.trace.water_type == std::optional<std::string>("only"));

    cfg.water_type = "only";
    CHECK(enhance(img, cfg).image == priors::rcp_compensate(img));
}

TEST_CASE("stage failures name the stage") {
    const ImageBuffer black(16, 16, ColorSpace::SRGB);
    PipelineConfig cfg = all_off();
    cfg.stages.illumination = true;
    try {
        enhance(black, cfg);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "illumination");
    }
    cfg = all_off();
    cfg.stages.sacc = true;
    try {
        enhance(black, cfg);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "sacc");
    }
}

TEST_CASE("every single-stage ablation runs") {
    const ImageBuffer img = scene(40, 40, 7);
    for (Stage off : kStages) {
        PipelineConfig cfg;
        cfg.stages[off] = false;
        const EnhanceResult r = enhance(img, cfg);
        CHECK(r.image.same_shape(img));
        CHECK(r.image.is_valid());
    }
    const EnhanceResult full = enhance(img, PipelineConfig{});
    CHECK(full.trace.alpha.has_value());
    CHECK(full.trace.water_type.has_value());
    CHECK(full.trace.balance_iterations.has_value());
}

TEST_CASE("reference image switches balance to histogram matching") {
    const ImageBuffer img = scene(32, 32, 8);
    const ImageBuffer ref = scene(24, 24, 9);
    PipelineConfig cfg = all_off();
    cfg.stages.balance = true;
    const EnhanceResult r = enhance(img, cfg, &ref);
    CHECK(r.trace.histogram_matched);
    CHECK(r.image == color::histogram_match(img, ref));
}

TEST_CASE("gray input is expanded to SRGB") {
    ImageBuffer g(12, 10, ColorSpace::GRAY);
    for (double& v : g.samples()) v = 0.4;
    const EnhanceResult r = enhance(g, all_off());
    CHECK(r.image.space() == ColorSpace::SRGB);
    CHECK(r.image.channels() == 3);
}

TEST_CASE("output naming and image listing") {
    CHECK(output_name("x/a.png") == "a.png");
    CHECK(output_name("x/a.PNG") == "a.PNG");
    CHECK(output_name("x/a.jpg") == "a.jpg.png");
    TempDir t("list");
    const fs::path in = make_batch_input(t.path);
    const auto files = list_images(in);
    REQUIRE(files.size() == 4);
    CHECK(files.front().filename() == "a.png");
    CHECK(files.back().filename() == "d_broken.png");
    CHECK_THROWS_AS(list_images(t.path / "missing"), IoError);
}

TEST_CASE("batch records failures and keeps going") {
    TempDir t("batch");
    const fs::path in = make_batch_input(t.path);
    const JobReport rep = run_batch(in, t.path / "out", PipelineConfig{}, 2);
    REQUIRE(rep.entries.size() == 4);
    CHECK(rep.failures() == 1);
    CHECK_FALSE(rep.entries[3].ok);
    CHECK_FALSE(rep.entries[3].error.empty());
    for (int i = 0; i < 3; ++i) {
        CHECK(rep.entries[i].ok);
        CHECK(fs::exists(rep.entries[i].output));
    }
    CHECK_FALSE(fs::exists(t.path / "out" / "d_broken.png"));

    fs::create_directories(t.path / "empty");
    CHECK_THROWS_AS(run_batch(t.path / "empty", t.path / "out2", PipelineConfig{}, 1), IoError);
    CHECK_THROWS_AS(run_batch(t.path / "nope", t.path / "out2", PipelineConfig{}, 1), IoError);
}

TEST_CASE("report deltas match rescored outputs") {
    TempDir t("rescore");
    const fs::path in = make_batch_input(t.path);
    const JobReport rep = run_batch(in, t.path / "out", PipelineConfig{}, 1);
    const nlohmann::json j = to_json(rep);
    CHECK(j.at("images") == 4);
    CHECK(j.at("failures") == 1);
    for (std::size_t i = 0; i < 3; ++i) {
        const JobEntry& e = rep.entries[i];
        const metrics::MetricReport before = metrics::evaluate(load_image(e.input));
        const metrics::MetricReport after = metrics::evaluate(load_image(e.output));
        const auto& d = j.at("entries")[i].at("delta");
        CHECK(std::abs(d.at("uiqm").get<double>() - (after.uiqm - before.uiqm)) <= 1e-9);
        CHECK(std::abs(d.at("uciqe").get<double>() - (after.uciqe - before.uciqe)) <= 1e-9);
        for (int c = 0; c < 3; ++c) {
            const double want = after.channel_proportions[c] - before.channel_proportions[c];
            CHECK(std::abs(d.at("channel_proportions")[c].get<double>() - want) <= 1e-9);
        }
    }
    const auto& broken = j.at("entries")[3];
    CHECK(broken.at("status") == "failed");
    CHECK(broken.at("output").is_null());

    const std::string csv = to_csv(rep, false);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find("wall_ms") == std::string::npos);
}

TEST_CASE("batch output does not depend on the job count") {
    TempDir t("determinism");
    const fs::path in = make_batch_input(t.path);
    const fs::path out = t.path / "out";
    std::vector<std::string> first;
    const JobReport r1 = run_batch(in, out, PipelineConfig{}, 1);
    for (const auto& e : r1.entries)
        if (e.ok) first.push_back(slurp(e.output));
    const JobReport r3 = run_batch(in, out, PipelineConfig{}, 3);
    std::vector<std::string> second;
    for (const auto& e : r3.entries)
        if (e.ok) second.push_back(slurp(e.output));
    CHECK(first == second);
    CHECK(to_json(r1, false).dump() == to_json(r3, false).dump());
    CHECK(to_csv(r1, false) == to_csv(r3, false));
}

TEST_CASE("score and metric report JSON") {
    const ImageBuffer img = scene(32, 32, 4);
    const metrics::MetricReport r = score(img, &img, metrics::MetricCoefficients{});
    REQUIRE(r.ssim.has_value());
    CHECK(*r.ssim == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*r.delta_e76 == 0.0);
    const metrics::MetricReport back = metric_report_from_json(to_json(r));
    CHECK(to_json(back) == to_json(r));
    CHECK(back.uiqm == r.uiqm);
    CHECK_FALSE(score(img, nullptr, {}).ssim.has_value());
}
