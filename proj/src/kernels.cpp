#include "wzp/kernels.hpp"

#include <cmath>
#include <cstring>

namespace wzp::kernels {

namespace {

inline std::uint8_t binarize_pixel(const std::uint8_t* px, int channels) {
    int sum = 0;
    for (int c = 0; c < channels; ++c) sum += px[c];
    return sum >= 128 * channels ? 255 : 0;
}

inline bool tile_equals_mask(const std::uint8_t* strip, int h, int w, int slot,
                             const std::uint8_t* mask) {
    const std::uint8_t* tile = strip + static_cast<std::size_t>(slot) * h;
    for (int r = 0; r < h; ++r) {
        if (std::memcmp(tile + static_cast<std::size_t>(r) * w,
                        mask + static_cast<std::size_t>(r) * h, h) != 0) {
            return false;
        }
    }
    return true;
}

inline void match_one_frame(const std::uint8_t* strip, int h, int w, int n,
                            const std::uint8_t* masks, std::uint8_t* truth_frame) {
    const std::size_t mask_bytes = static_cast<std::size_t>(h) * h;
    for (int d = 0; d < 10; ++d) {
        const std::uint8_t* mask = masks + d * mask_bytes;
        for (int p = 0; p < n; ++p) {
            truth_frame[static_cast<std::size_t>(d) * n + p] =
                tile_equals_mask(strip, h, w, p, mask) ? 1 : 0;
        }
    }
}

inline void resize_row(const std::uint8_t* src, int src_h, int src_w, int channels,
                       std::uint8_t* dst, int dst_h, int dst_w, int y) {
    const double scale_y = static_cast<double>(src_h) / dst_h;
    const double scale_x = static_cast<double>(src_w) / dst_w;

    double sy = (y + 0.5) * scale_y - 0.5;
    if (sy < 0.0) sy = 0.0;
    int y0 = static_cast<int>(sy);
    if (y0 > src_h - 1) y0 = src_h - 1;
    int y1 = y0 + 1 < src_h ? y0 + 1 : src_h - 1;
    const double fy = sy - y0;

    std::uint8_t* out = dst + static_cast<std::size_t>(y) * dst_w * channels;
    for (int x = 0; x < dst_w; ++x) {
        double sx = (x + 0.5) * scale_x - 0.5;
        if (sx < 0.0) sx = 0.0;
        int x0 = static_cast<int>(sx);
        if (x0 > src_w - 1) x0 = src_w - 1;
        int x1 = x0 + 1 < src_w ? x0 + 1 : src_w - 1;
        const double fx = sx - x0;

        const std::uint8_t* p00 = src + (static_cast<std::size_t>(y0) * src_w + x0) * channels;
        const std::uint8_t* p01 = src + (static_cast<std::size_t>(y0) * src_w + x1) * channels;
        const std::uint8_t* p10 = src + (static_cast<std::size_t>(y1) * src_w + x0) * channels;
        const std::uint8_t* p11 = src + (static_cast<std::size_t>(y1) * src_w + x1) * channels;

        for (int c = 0; c < channels; ++c) {
            const double top = p00[c] + (p01[c] - p00[c]) * fx;
            const double bottom = p10[c] + (p11[c] - p10[c]) * fx;
            const double v = top + (bottom - top) * fy;
            out[static_cast<std::size_t>(x) * channels + c] =
                static_cast<std::uint8_t>(std::lround(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v)));
        }
    }
}

inline void smooth_one_row(const double* in, int rows, int cols, int radius,
                           const double* weights, double* out, int i) {
    const int lo = i - radius > 0 ? i - radius : 0;
    const int hi = i + radius < rows - 1 ? i + radius : rows - 1;
    double norm = 0.0;
    double* out_row = out + static_cast<std::size_t>(i) * cols;
    for (int c = 0; c < cols; ++c) out_row[c] = 0.0;
    for (int j = lo; j <= hi; ++j) {
        const double w = weights[j - i + radius];
        norm += w;
        const double* in_row = in + static_cast<std::size_t>(j) * cols;
        for (int c = 0; c < cols; ++c) out_row[c] += w * in_row[c];
    }
    for (int c = 0; c < cols; ++c) out_row[c] /= norm;
}

}  // namespace

void binarize_serial(const std::uint8_t* src, std::size_t pixels, int channels, std::uint8_t* dst) {
    for (std::size_t i = 0; i < pixels; ++i) {
        dst[i] = binarize_pixel(src + i * channels, channels);
    }
}

void binarize_omp(const std::uint8_t* src, std::size_t pixels, int channels, std::uint8_t* dst) {
    const std::int64_t n = static_cast<std::int64_t>(pixels);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        dst[i] = binarize_pixel(src + static_cast<std::size_t>(i) * channels, channels);
    }
}

void match_digit_tiles_serial(const std::uint8_t* strips, int l, int h, int w,
                              const std::uint8_t* masks, std::uint8_t* truth) {
    const int n = w / h;
    const std::size_t strip_bytes = static_cast<std::size_t>(h) * w;
    const std::size_t truth_bytes = static_cast<std::size_t>(10) * n;
    for (int f = 0; f < l; ++f) {
        match_one_frame(strips + f * strip_bytes, h, w, n, masks, truth + f * truth_bytes);
    }
}

void match_digit_tiles_omp(const std::uint8_t* strips, int l, int h, int w,
                           const std::uint8_t* masks, std::uint8_t* truth) {
    const int n = w / h;
    const std::size_t strip_bytes = static_cast<std::size_t>(h) * w;
    const std::size_t truth_bytes = static_cast<std::size_t>(10) * n;
#pragma omp parallel for schedule(static)
    for (int f = 0; f < l; ++f) {
        match_one_frame(strips + f * strip_bytes, h, w, n, masks, truth + f * truth_bytes);
    }
}

void resize_bilinear_serial(const std::uint8_t* src, int src_h, int src_w, int channels,
                            std::uint8_t* dst, int dst_h, int dst_w) {
    for (int y = 0; y < dst_h; ++y) {
        resize_row(src, src_h, src_w, channels, dst, dst_h, dst_w, y);
    }
}

void resize_bilinear_omp(const std::uint8_t* src, int src_h, int src_w, int channels,
                         std::uint8_t* dst, int dst_h, int dst_w) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < dst_h; ++y) {
        resize_row(src, src_h, src_w, channels, dst, dst_h, dst_w, y);
    }
}

void smooth_rows_serial(const double* in, int rows, int cols, int radius,
                        const double* weights, double* out) {
    for (int i = 0; i < rows; ++i) {
        smooth_one_row(in, rows, cols, radius, weights, out, i);
    }
}

void smooth_rows_omp(const double* in, int rows, int cols, int radius,
                     const double* weights, double* out) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        smooth_one_row(in, rows, cols, radius, weights, out, i);
    }
}

}  // namespace wzp::kernels
