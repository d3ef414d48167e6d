#include "wzp/digit_masks.hpp"

#include <cstring>

#include "wzp/kernels.hpp"
#include "wzp/pgm.hpp"

namespace wzp {

ImageStack binarize_stack(const ImageStack& stack) {
    ImageStack out(stack.count, stack.height, stack.width, 1);
    const std::size_t pixels =
        static_cast<std::size_t>(stack.count) * stack.height * stack.width;
    if (pixels > 0) {
        kernels::binarize_omp(stack.data.data(), pixels, stack.channels, out.data.data());
    }
    return out;
}

ImageStack binarize_images(const std::vector<Image>& images) {
    return binarize_stack(ImageStack::from_images(images));
}

GrayBinaryImage binarize_image(const Image& image) {
    GrayBinaryImage out(image.height, image.width, 1);
    const std::size_t pixels = static_cast<std::size_t>(image.height) * image.width;
    if (pixels > 0) {
        kernels::binarize_serial(image.data.data(), pixels, image.channels, out.data.data());
    }
    return out;
}

DigitMaskSet::DigitMaskSet(std::vector<std::uint8_t> packed, int height)
    : data_(std::move(packed)), height_(height) {
    if (height_ <= 0) throw AssetError("digit masks must be non-empty");
    const std::size_t mask_bytes = static_cast<std::size_t>(height_) * height_;
    for (int a = 0; a < 10; ++a) {
        for (int b = a + 1; b < 10; ++b) {
            if (std::memcmp(data_.data() + a * mask_bytes, data_.data() + b * mask_bytes,
                            mask_bytes) == 0) {
                throw AmbiguityError("digit masks " + std::to_string(a) + " and " +
                                     std::to_string(b) + " are identical; matching would be ambiguous");
            }
        }
    }
}

DigitMaskSet DigitMaskSet::from_images(const std::vector<Image>& masks) {
    if (masks.size() != 10) {
        throw AssetError("expected exactly 10 digit masks, got " + std::to_string(masks.size()));
    }
    const int h = masks.front().height;
    for (int d = 0; d < 10; ++d) {
        if (masks[d].height != h || masks[d].width != h) {
            throw AssetError("digit mask " + std::to_string(d) + " is not " +
                             std::to_string(h) + "x" + std::to_string(h));
        }
    }
    ImageStack binary = binarize_images(masks);
    return DigitMaskSet(std::move(binary.data), h);
}

namespace {

// Seven-segment layout on a 16 x 16 canvas. Segment order: A (top),
// B (top right), C (bottom right), D (bottom), E (bottom left), F (top left),
// G (middle).
constexpr std::uint16_t kSegmentsByDigit[10] = {
    // bits: A=1, B=2, C=4, D=8, E=16, F=32, G=64
    1 | 2 | 4 | 8 | 16 | 32,       // 0
    2 | 4,                         // 1
    1 | 2 | 64 | 16 | 8,           // 2
    1 | 2 | 64 | 4 | 8,            // 3
    32 | 64 | 2 | 4,               // 4
    1 | 32 | 64 | 4 | 8,           // 5
    1 | 32 | 64 | 16 | 8 | 4,      // 6
    1 | 2 | 4,                     // 7
    1 | 2 | 4 | 8 | 16 | 32 | 64,  // 8
    1 | 2 | 4 | 8 | 32 | 64,       // 9
};

void fill_rect(Image& img, int y0, int y1, int x0, int x1) {
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) img.at(y, x) = 255;
    }
}

Image render_seven_segment(int digit) {
    Image img(16, 16, 1, 0);
    const std::uint16_t segs = kSegmentsByDigit[digit];
    if (segs & 1) fill_rect(img, 0, 1, 2, 13);     // A
    if (segs & 2) fill_rect(img, 1, 7, 14, 15);    // B
    if (segs & 4) fill_rect(img, 8, 14, 14, 15);   // C
    if (segs & 8) fill_rect(img, 14, 15, 2, 13);   // D
    if (segs & 16) fill_rect(img, 8, 14, 0, 1);    // E
    if (segs & 32) fill_rect(img, 1, 7, 0, 1);     // F
    if (segs & 64) fill_rect(img, 7, 8, 2, 13);    // G
    return img;
}

}  // namespace

DigitMaskSet DigitMaskSet::builtin() {
    std::vector<Image> masks;
    masks.reserve(10);
    for (int d = 0; d < 10; ++d) masks.push_back(render_seven_segment(d));
    return from_images(masks);
}

DigitMaskSet DigitMaskSet::load(const std::filesystem::path& dir) {
    std::vector<Image> masks;
    masks.reserve(10);
    for (int d = 0; d < 10; ++d) {
        const std::filesystem::path file = dir / (std::to_string(d) + ".pgm");
        if (!std::filesystem::exists(file)) {
            throw AssetError("mask directory " + dir.string() + " is missing numeral " +
                             std::to_string(d) + " (" + file.filename().string() + ")");
        }
        masks.push_back(read_pgm(file));
    }
    return from_images(masks);
}

void DigitMaskSet::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (int d = 0; d < 10; ++d) {
        write_pgm(dir / (std::to_string(d) + ".pgm"), mask(d));
    }
}

GrayBinaryImage DigitMaskSet::mask(int digit) const {
    GrayBinaryImage out(height_, height_, 1);
    const std::size_t mask_bytes = static_cast<std::size_t>(height_) * height_;
    std::memcpy(out.data.data(), data_.data() + digit * mask_bytes, mask_bytes);
    return out;
}

}  // namespace wzp
