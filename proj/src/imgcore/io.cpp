/**
 * @file io.cpp
 * @brief Image codecs on top of OpenCV imgcodecs
 */

#include <aquapipe/imgcore/io.hpp>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

namespace aquapipe {

namespace {

bool is_png(std::span<const std::uint8_t> b) {
    static constexpr std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    return b.size() >= 8 && std::equal(sig, sig + 8, b.begin());
}

bool is_jpeg(std::span<const std::uint8_t> b) {
    return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

// 16-bit -> 8-bit with round-half-up: round(v * 255 / 65535).
std::uint8_t down_convert(std::uint16_t v) {
    return static_cast<std::uint8_t>((static_cast<std::uint32_t>(v) * 255u + 32767u) / 65535u);
}

}  // namespace

std::uint8_t quantize_byte(double sample) noexcept {
    const double scaled = std::floor(sample * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

ImageBuffer decode_image(std::span<const std::uint8_t> bytes) {
    const bool png = is_png(bytes);
    if (!png && !is_jpeg(bytes)) throw FormatError("decode_image: not a PNG or JPEG stream");

    // libpng/libjpeg print warnings for damaged streams; the decode result is what matters.
    const cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1,
                      const_cast<std::uint8_t*>(bytes.data()));
    cv::Mat m;
    try {
        m = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw FormatError(std::string("decode_image: ") + e.what());
    }
    if (m.empty()) throw FormatError("decode_image: truncated or corrupt image data");
    if (m.depth() != CV_8U && m.depth() != CV_16U) {
        throw FormatError("decode_image: unsupported sample depth");
    }

    const int cn = m.channels();
    if (cn != 1 && cn != 3 && cn != 4) throw FormatError("decode_image: unsupported channel layout");

    cv::Mat m8;
    if (m.depth() == CV_16U) {
        m8.create(m.rows, m.cols, CV_MAKETYPE(CV_8U, cn));
        for (int y = 0; y < m.rows; ++y) {
            const auto* src = m.ptr<std::uint16_t>(y);
            auto* dst = m8.ptr<std::uint8_t>(y);
            for (int i = 0; i < m.cols * cn; ++i) dst[i] = down_convert(src[i]);
        }
    } else {
        m8 = m;
    }

    const bool gray = cn == 1;
    ImageBuffer img(m8.cols, m8.rows, gray ? ColorSpace::GRAY : ColorSpace::SRGB);
    for (int y = 0; y < m8.rows; ++y) {
        const auto* row = m8.ptr<std::uint8_t>(y);
        for (int x = 0; x < m8.cols; ++x) {
            if (gray) {
                img.at(0, y, x) = row[x] / 255.0;
            } else {
                // OpenCV order is BGR(A).
                const std::uint8_t* px = row + static_cast<std::ptrdiff_t>(x) * cn;
                img.at(0, y, x) = px[2] / 255.0;
                img.at(1, y, x) = px[1] / 255.0;
                img.at(2, y, x) = px[0] / 255.0;
            }
        }
    }
    return img;
}

ImageBuffer load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_image: cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("load_image: read failed for " + path.string());
    try {
        return decode_image(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
    if (img.space() != ColorSpace::SRGB && img.space() != ColorSpace::GRAY) {
        throw PreconditionError("save_image: only SRGB or GRAY buffers are displayable, got " +
                                std::string(to_string(img.space())));
    }
    img.require_valid("save_image");

    const int cn = img.channels();
    cv::Mat m(img.height(), img.width(), CV_MAKETYPE(CV_8U, cn));
    for (int y = 0; y < img.height(); ++y) {
        auto* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width(); ++x) {
            if (cn == 1) {
                row[x] = quantize_byte(img.at(0, y, x));
            } else {
                row[3 * x + 0] = quantize_byte(img.at(2, y, x));
                row[3 * x + 1] = quantize_byte(img.at(1, y, x));
                row[3 * x + 2] = quantize_byte(img.at(0, y, x));
            }
        }
    }
    std::vector<std::uint8_t> out;
    if (!cv::imencode(".png", m, out)) throw IoError("save_image: PNG encoding failed");
    return out;
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
    const auto bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("save_image: cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("save_image: write failed for " + path.string());
}

}  // namespace aquapipe
