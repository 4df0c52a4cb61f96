/**
 * @file image.hpp
 * @brief ImageBuffer and RealPlane, the rasters every module works on
 *
 * Samples are stored planar: channel c occupies the contiguous range
 * [c*width*height, (c+1)*width*height), each plane row-major.
 */
#pragma once

#include <aquapipe/imgcore/errors.hpp>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace aquapipe {

enum class ColorSpace { SRGB, LINEAR_RGB, GRAY, HSV, CIELAB };

std::string_view to_string(ColorSpace space);

/// Number of channels a buffer in `space` must have.
int channels_for(ColorSpace space);

/**
 * @brief Single-channel real raster with no range restriction.
 *
 * Used for intermediate fields (reflectance, transmission, noise energy,
 * wavelet bands) whose values leave the unit interval.
 */
struct RealPlane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RealPlane() = default;
    RealPlane(int w, int h, double fill = 0.0);

    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }
    bool same_shape(const RealPlane& o) const { return width == o.width && height == o.height; }
    friend bool operator==(const RealPlane&, const RealPlane&) = default;
};

/**
 * @brief H x W x C raster of real samples tagged with a color space.
 *
 * Unit-range spaces (SRGB, LINEAR_RGB, GRAY, HSV) hold samples in [0,1].
 * CIELAB holds L in [0,100] and a,b in [-128,127]. Operations never mutate
 * their inputs; they return fresh buffers.
 */
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, ColorSpace space, double fill = 0.0);

    /// Builds a buffer from per-channel planes of identical shape.
    static ImageBuffer from_planes(std::span<const RealPlane> planes, ColorSpace space);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    ColorSpace space() const noexcept { return space_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    bool empty() const noexcept { return samples_.empty(); }

    double at(int c, int y, int x) const { return samples_[index(c, y, x)]; }
    double& at(int c, int y, int x) { return samples_[index(c, y, x)]; }

    std::span<const double> plane(int c) const;
    std::span<double> plane(int c);
    std::span<const double> samples() const noexcept { return samples_; }
    std::span<double> samples() noexcept { return samples_; }

    RealPlane plane_copy(int c) const;
    void set_plane(int c, const RealPlane& p);

    /// Same samples with a different tag. Channel count must agree.
    ImageBuffer retagged(ColorSpace space) const;

    /// True when every sample is finite and inside the space's range.
    bool is_valid() const noexcept;
    /// Throws PreconditionError naming `who` when !is_valid().
    void require_valid(std::string_view who) const;
    /// Clamps samples into the space's range in place.
    void clamp_to_range() noexcept;

    bool same_shape(const ImageBuffer& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }
    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t index(int c, int y, int x) const noexcept {
        return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    ColorSpace space_ = ColorSpace::SRGB;
    std::vector<double> samples_;
};

/// Throws PreconditionError unless `img` has 3 channels.
void require_rgb(const ImageBuffer& img, std::string_view who);

/// Applies a RealPlane -> RealPlane function to every channel, clamping the result.
template <typename PlaneFn>
ImageBuffer map_planes(const ImageBuffer& img, PlaneFn&& fn) {
    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) out.set_plane(c, fn(img.plane_copy(c)));
    out.clamp_to_range();
    return out;
}

}  // namespace aquapipe
