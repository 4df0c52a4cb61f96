// Batch property: on a green-cast set, the report's channel proportions end
// up more balanced after enhancement than before on at least 80% of images.

#include <doctest.h>

#include <aquapipe/imgcore/io.hpp>
#include <aquapipe/pipeline/pipeline.hpp>

#include "test_support.hpp"

#include <thread>

using namespace aquapipe;
namespace fs = std::filesystem;

namespace {

double spread(const std::array<double, 3>& p) {
    return *std::max_element(p.begin(), p.end()) - *std::min_element(p.begin(), p.end());
}

}  // namespace

TEST_CASE("green-cast batch becomes more balanced") {
    const fs::path root = fs::temp_directory_path() / ("aquapipe_green_" + std::to_string(std::random_device{}()));
    fs::create_directories(root / "in");
    const auto sources = pipeline::list_images(test::data_dir() / "natural");
    REQUIRE(sources.size() == 10);
    for (const auto& src : sources) {
        ImageBuffer img = load_image(src);
        std::mt19937_64 rng(7);
        std::normal_distribution<double> noise(0.0, 0.02);
        const double gain[3] = {0.5, 0.9, 0.6};
        for (int c = 0; c < 3; ++c)
            for (double& v : img.plane(c)) v = std::clamp(v * gain[c] + noise(rng), 0.0, 1.0);
        save_image(img, root / "in" / src.filename());
    }

    const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const pipeline::JobReport rep = pipeline::run_batch(root / "in", root / "out", pipeline::PipelineConfig{}, jobs);
    REQUIRE(rep.failures() == 0);
    int balanced = 0;
    for (const auto& e : rep.entries) {
        const double before = spread(e.before->channel_proportions), after = spread(e.after->channel_proportions);
        MESSAGE(fs::path(e.input).filename().string() << ": spread " << before << " -> " << after);
        balanced += after < before;
    }
    CHECK(balanced >= 8);
    fs::remove_all(root);
}
