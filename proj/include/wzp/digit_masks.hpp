#pragma once

#include <filesystem>
#include <vector>

#include "wzp/image.hpp"

namespace wzp {

// Binarizes a stack of same-shape images: per pixel, the channel mean is
// thresholded at 128 (>= 128 maps to 255, else 0). An empty input yields an
// empty stack; mismatched shapes raise ShapeError.
ImageStack binarize_images(const std::vector<Image>& images);
ImageStack binarize_stack(const ImageStack& stack);
GrayBinaryImage binarize_image(const Image& image);

// The ten numeral templates used for pixel-exact matching. Immutable after
// construction and safe to share across threads.
class DigitMaskSet {
public:
    // Binarizes the inputs if needed and validates: exactly 10 square masks
    // of one size, pairwise distinct.
    static DigitMaskSet from_images(const std::vector<Image>& masks);

    // Bundled test set: 16 x 16 seven-segment numerals, white on black.
    static DigitMaskSet builtin();

    // Loads `0.pgm` .. `9.pgm` from a directory. Missing numerals raise
    // AssetError; duplicates after binarization raise AmbiguityError.
    static DigitMaskSet load(const std::filesystem::path& dir);

    // Renders the set back to `0.pgm` .. `9.pgm` (round-trips through load()).
    void save(const std::filesystem::path& dir) const;

    int digit_height() const { return height_; }
    GrayBinaryImage mask(int digit) const;

    // Contiguous 10 * h * h buffer for the matching kernel.
    const std::uint8_t* packed() const { return data_.data(); }

private:
    DigitMaskSet(std::vector<std::uint8_t> packed, int height);

    std::vector<std::uint8_t> data_;
    int height_ = 0;
};

}  // namespace wzp
