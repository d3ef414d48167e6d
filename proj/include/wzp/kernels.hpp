#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the pipeline. Each kernel exists twice: a
// plain serial reference used by the tests, and an OpenMP version the
// production paths call. wzp-bench times the pairs against each other.
namespace wzp::kernels {

// Channel-mean threshold binarization: mean >= 128 maps to 255, else 0.
// The comparison is exact in integers (sum >= 128 * channels), so the result
// never depends on floating-point rounding.
void binarize_serial(const std::uint8_t* src, std::size_t pixels, int channels, std::uint8_t* dst);
void binarize_omp(const std::uint8_t* src, std::size_t pixels, int channels, std::uint8_t* dst);

// Pixel-exact digit tile matching. strips holds l binary images of h x w,
// masks holds the ten numeral templates of h x h. truth receives 0/1 bytes in
// row-major (frame, digit, slot) order and must hold l * 10 * (w / h) bytes.
void match_digit_tiles_serial(const std::uint8_t* strips, int l, int h, int w,
                              const std::uint8_t* masks, std::uint8_t* truth);
void match_digit_tiles_omp(const std::uint8_t* strips, int l, int h, int w,
                           const std::uint8_t* masks, std::uint8_t* truth);

// Bilinear rescale of an interleaved 8-bit image. Sample positions use
// half-pixel centers; border samples clamp to the edge.
void resize_bilinear_serial(const std::uint8_t* src, int src_h, int src_w, int channels,
                            std::uint8_t* dst, int dst_h, int dst_w);
void resize_bilinear_omp(const std::uint8_t* src, int src_h, int src_w, int channels,
                         std::uint8_t* dst, int dst_h, int dst_w);

// Windowed weighted mean over rows i-radius..i+radius. The window truncates
// at the sequence edges and the weights are renormalized over the valid span.
// weights holds 2 * radius + 1 positive entries. Each output row is
// accumulated by a single thread in a fixed order, so results do not depend
// on the thread count.
void smooth_rows_serial(const double* in, int rows, int cols, int radius,
                        const double* weights, double* out);
void smooth_rows_omp(const double* in, int rows, int cols, int radius,
                     const double* weights, double* out);

}  // namespace wzp::kernels
