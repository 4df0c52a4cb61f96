/**
 * @file stats.hpp
 * @brief Histograms and per-channel statistics
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <array>
#include <cstdint>
#include <vector>

namespace aquapipe {

inline constexpr int kLevels = 256;

/// Quantized level of a unit-range sample: floor(255*s + 0.5), clamped to [0,255].
int quantize_level(double sample) noexcept;

struct Histogram {
    using Bins = std::array<std::uint64_t, kLevels>;
    std::vector<Bins> channels;  ///< one 256-bin histogram per channel
    std::uint64_t total = 0;     ///< pixel count N
};

Histogram compute_histogram(const ImageBuffer& img);

/// 256-bin histogram of a single plane of samples.
Histogram::Bins histogram_of(std::span<const double> samples);

struct ChannelStats {
    std::vector<double> mean;
    std::vector<double> variance;  ///< population variance (divides by N)
    std::vector<double> min;
    std::vector<double> max;
};

ChannelStats channel_stats(const ImageBuffer& img);

double mean_of(std::span<const double> values) noexcept;

}  // namespace aquapipe
