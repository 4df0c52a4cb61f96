#include <doctest.h>

#include <aquapipe/imgcore/border.hpp>
#include <aquapipe/imgcore/color_convert.hpp>
#include <aquapipe/imgcore/io.hpp>
#include <aquapipe/imgcore/stats.hpp>

#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

using namespace aquapipe;
using aquapipe::test::data_dir;

namespace {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "aquapipe_test_imgcore";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("ImageBuffer construction and invariants") {
    ImageBuffer img(4, 3, ColorSpace::SRGB, 0.25);
    CHECK(img.channels() == 3);
    CHECK(img.samples().size() == 4u * 3u * 3u);
    CHECK(img.is_valid());
    img.at(1, 2, 3) = 1.5;
    CHECK_FALSE(img.is_valid());
    CHECK_THROWS_AS(img.require_valid("t"), PreconditionError);
    img.at(1, 2, 3) = std::nan("");
    CHECK_FALSE(img.is_valid());

    ImageBuffer lab(2, 2, ColorSpace::CIELAB, 50.0);
    CHECK(lab.is_valid());
    CHECK_THROWS_AS(ImageBuffer(0, 3, ColorSpace::GRAY), PreconditionError);
    CHECK_THROWS_AS(img.retagged(ColorSpace::GRAY), PreconditionError);
}

TEST_CASE("reflect_index mirrors with half-sample symmetry") {
    CHECK(reflect_index(-1, 5) == 0);
    CHECK(reflect_index(-2, 5) == 1);
    CHECK(reflect_index(5, 5) == 4);
    CHECK(reflect_index(6, 5) == 3);
    CHECK(reflect_index(12, 5) == 2);
    CHECK(reflect_index(-7, 5) == 3);
    CHECK(reflect_index(-3, 1) == 0);
}

TEST_CASE("load_image normalizes 8-bit gray PNG") {
    const ImageBuffer img = load_image(data_dir() / "gray2x2.png");
    REQUIRE(img.channels() == 1);
    CHECK(img.space() == ColorSpace::GRAY);
    CHECK(img.at(0, 0, 0) == 0.0);
    CHECK(img.at(0, 0, 1) == 128.0 / 255.0);
    CHECK(img.at(0, 1, 0) == 1.0);
    CHECK(img.at(0, 1, 1) == 64.0 / 255.0);
}

TEST_CASE("load_image color, alpha and 16-bit handling") {
    const ImageBuffer rgb = load_image(data_dir() / "rgb3x4.png");
    REQUIRE(rgb.channels() == 3);
    CHECK(rgb.space() == ColorSpace::SRGB);
    CHECK(rgb.width() == 4);
    CHECK(rgb.height() == 3);
    CHECK(rgb.at(0, 1, 2) == 70.0 / 255.0);
    CHECK(rgb.at(1, 0, 0) == 200.0 / 255.0);
    CHECK(rgb.at(2, 0, 1) == 1.0);

    const ImageBuffer rgba = load_image(data_dir() / "rgba3x4.png");
    CHECK(rgba == rgb);

    // 0, 257, 32896, 65535 -> 0, 1, 128, 255
    const ImageBuffer g16 = load_image(data_dir() / "gray16.png");
    CHECK(g16.at(0, 0, 0) == 0.0);
    CHECK(g16.at(0, 0, 1) == 1.0 / 255.0);
    CHECK(g16.at(0, 1, 0) == 128.0 / 255.0);
    CHECK(g16.at(0, 1, 1) == 1.0);

    const ImageBuffer jpg = load_image(data_dir() / "gray8x8.jpg");
    CHECK(jpg.channels() == 3);
    CHECK(std::abs(jpg.at(0, 4, 4) - 128.0 / 255.0) <= 2.0 / 255.0);
}

TEST_CASE("load_image error paths") {
    CHECK_THROWS_AS(load_image(data_dir() / "truncated.png"), FormatError);
    CHECK_THROWS_AS(load_image(data_dir() / "not_an_image.png"), FormatError);
    CHECK_THROWS_AS(load_image(data_dir() / "does_not_exist.png"), IoError);
}

TEST_CASE("save_image quantization and preconditions") {
    ImageBuffer img(2, 1, ColorSpace::GRAY);
    img.at(0, 0, 0) = 1.0;
    img.at(0, 0, 1) = 128.0 / 255.0;
    const auto path = temp_path("q.png");
    save_image(img, path);
    const ImageBuffer back = load_image(path);
    CHECK(back.at(0, 0, 0) == 1.0);
    CHECK(back.at(0, 0, 1) == 128.0 / 255.0);
    CHECK(quantize_byte(0.5) == 128);
    CHECK(quantize_byte(127.49 / 255.0) == 127);

    img.at(0, 0, 0) = 1.2;
    CHECK_THROWS_AS(save_image(img, path), PreconditionError);
    CHECK_THROWS_AS(save_image(ImageBuffer(2, 2, ColorSpace::HSV), path), PreconditionError);
    CHECK_THROWS_AS(save_image(ImageBuffer(2, 2, ColorSpace::SRGB), "/nonexistent_dir/x.png"), IoError);
}

TEST_CASE("load after save is byte-identical on 8-bit images") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const ImageBuffer img = test::random_quantized(rng, 17 + trial, 9 + 2 * trial);
        const auto path = temp_path("rt.png");
        save_image(img, path);
        const ImageBuffer back = load_image(path);
        CHECK(back == img);
        const auto first = read_bytes(path);
        save_image(back, path);
        CHECK(read_bytes(path) == first);
    }
}

TEST_CASE("convert: fixed points") {
    const ImageBuffer white = test::constant_image(1, 1, 1, 1, 1);
    const ImageBuffer lab = convert(white, ColorSpace::CIELAB);
    CHECK(std::abs(lab.at(0, 0, 0) - 100.0) <= 0.01);
    CHECK(std::abs(lab.at(1, 0, 0)) <= 0.01);
    CHECK(std::abs(lab.at(2, 0, 0)) <= 0.01);

    const ImageBuffer mid = test::constant_image(1, 1, 0.5, 0.5, 0.5);
    const ImageBuffer hsv = convert(mid, ColorSpace::HSV);
    CHECK(hsv.at(1, 0, 0) == 0.0);
    CHECK(hsv.at(2, 0, 0) == 0.5);

    std::mt19937_64 rng(3);
    const ImageBuffer r = test::random_image(rng, 5, 4);
    CHECK(convert(r, ColorSpace::SRGB) == r);

    ImageBuffer gray(2, 2, ColorSpace::GRAY, 0.3);
    CHECK_THROWS_AS(convert(gray, ColorSpace::CIELAB), PreconditionError);
    const ImageBuffer expanded = convert(gray, ColorSpace::SRGB);
    CHECK(expanded.channels() == 3);
    CHECK(expanded.at(2, 1, 1) == 0.3);
}

TEST_CASE("convert: round trips on 1000 random pixels") {
    std::mt19937_64 rng(11);
    const ImageBuffer img = test::random_image(rng, 40, 25);
    CHECK(test::max_abs_diff(convert(convert(img, ColorSpace::CIELAB), ColorSpace::SRGB), img) <= 1e-4);
    CHECK(test::max_abs_diff(convert(convert(img, ColorSpace::HSV), ColorSpace::SRGB), img) <= 1e-5);
    CHECK(test::max_abs_diff(convert(convert(img, ColorSpace::LINEAR_RGB), ColorSpace::SRGB), img) <= 1e-12);
    CHECK(test::max_abs_diff(convert(convert(img, ColorSpace::HSV), ColorSpace::CIELAB),
                             convert(img, ColorSpace::CIELAB)) <= 1e-6);
}

TEST_CASE("compute_histogram") {
    ImageBuffer c(5, 3, ColorSpace::GRAY, 0.5);
    auto h = compute_histogram(c);
    CHECK(h.total == 15);
    CHECK(h.channels[0][128] == 15);

    ImageBuffer g(2, 2, ColorSpace::GRAY);
    g.at(0, 0, 0) = 0.0;
    g.at(0, 0, 1) = 85.0 / 255.0;
    g.at(0, 1, 0) = 170.0 / 255.0;
    g.at(0, 1, 1) = 1.0;
    h = compute_histogram(g);
    for (int k : {0, 85, 170, 255}) CHECK(h.channels[0][k] == 1);

    std::mt19937_64 rng(5);
    const ImageBuffer r = test::random_image(rng, 31, 17);
    h = compute_histogram(r);
    for (const auto& bins : h.channels) {
        std::uint64_t sum = 0;
        for (auto b : bins) sum += b;
        CHECK(sum == 31u * 17u);
    }
}

TEST_CASE("channel_stats") {
    ImageBuffer c(3, 3, ColorSpace::GRAY, 0.3);
    auto s = channel_stats(c);
    CHECK(s.mean[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(s.variance[0] == 0.0);

    ImageBuffer two(2, 1, ColorSpace::GRAY);
    two.at(0, 0, 1) = 1.0;
    s = channel_stats(two);
    CHECK(s.mean[0] == 0.5);
    CHECK(s.variance[0] == 0.25);

    std::mt19937_64 rng(9);
    const ImageBuffer r = test::random_image(rng, 23, 19);
    s = channel_stats(r);
    for (int ch = 0; ch < 3; ++ch) {
        long double sum = 0;
        for (int y = 0; y < r.height(); ++y)
            for (int x = 0; x < r.width(); ++x) sum += r.at(ch, y, x);
        CHECK(std::abs(s.mean[ch] - static_cast<double>(sum / (23 * 19))) <= 1e-12);
        CHECK(s.min[ch] <= s.mean[ch]);
        CHECK(s.mean[ch] <= s.max[ch]);
        CHECK(s.variance[ch] >= 0.0);
    }
}
