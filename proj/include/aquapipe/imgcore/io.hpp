/**
 * @file io.hpp
 * @brief PNG/JPEG decode and 8-bit PNG encode
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace aquapipe {

/**
 * Decodes a PNG or JPEG file. Color files load as 3-channel SRGB, grayscale
 * files as 1-channel GRAY; alpha is dropped. 16-bit PNGs are rounded down
 * to 8 bits before normalization, so every sample is a multiple of 1/255.
 *
 * Throws IoError when the file cannot be read and FormatError when its
 * contents are not a decodable PNG/JPEG.
 */
ImageBuffer load_image(const std::filesystem::path& path);

/// Same as load_image but from an in-memory encoded byte stream.
ImageBuffer decode_image(std::span<const std::uint8_t> bytes);

/**
 * Writes an SRGB or GRAY buffer as 8-bit PNG. Samples map to
 * floor(255*s + 0.5). Out-of-range or non-finite samples are rejected
 * rather than clamped.
 */
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

/// PNG encoding of `img` (same rules as save_image).
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);

/// Byte quantization used at the I/O boundary.
std::uint8_t quantize_byte(double sample) noexcept;

}  // namespace aquapipe
