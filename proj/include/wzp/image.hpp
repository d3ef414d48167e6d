#pragma once

#include <cstdint>
#include <vector>

#include "wzp/errors.hpp"

namespace wzp {

// Row-major, channel-interleaved 8-bit image.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<std::uint8_t> data;

    Image() = default;
    Image(int h, int w, int c, std::uint8_t fill = 0)
        : height(h),
          width(w),
          channels(c),
          data(static_cast<std::size_t>(h) * static_cast<std::size_t>(w) * static_cast<std::size_t>(c), fill) {}

    std::uint8_t& at(int y, int x, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int y, int x, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    std::uint8_t* row(int y) { return data.data() + static_cast<std::size_t>(y) * width * channels; }
    const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width * channels; }

    std::size_t size_bytes() const { return data.size(); }
    bool same_shape(const Image& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }

    bool operator==(const Image&) const = default;
};

// The binarization output format: single channel, every pixel 0 or 255.
using GrayBinaryImage = Image;

bool image_is_binary(const Image& img);

// Packed stack of same-shape images, contiguous in memory.
struct ImageStack {
    int count = 0;
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<std::uint8_t> data;

    ImageStack() = default;
    ImageStack(int n, int h, int w, int c, std::uint8_t fill = 0)
        : count(n),
          height(h),
          width(w),
          channels(c),
          data(static_cast<std::size_t>(n) * h * w * c, fill) {}

    std::size_t frame_bytes() const {
        return static_cast<std::size_t>(height) * width * channels;
    }
    std::uint8_t* frame(int i) { return data.data() + static_cast<std::size_t>(i) * frame_bytes(); }
    const std::uint8_t* frame(int i) const { return data.data() + static_cast<std::size_t>(i) * frame_bytes(); }

    Image image(int i) const;
    void set_frame(int i, const Image& img);  // throws ShapeError on mismatch

    // Packs a vector of images, all of which must share one shape.
    static ImageStack from_images(const std::vector<Image>& images);
};

}  // namespace wzp
