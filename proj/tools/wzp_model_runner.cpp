#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "wzp/image.hpp"
#include "wzp/scene_marker.hpp"

// Reference model runner for the inference IPC seam. Speaks the length-
// prefixed binary protocol on stdin/stdout (request: frame count, height,
// width, channels as little-endian u32 then raw bytes; response: frame count,
// k, then row-major float32 probabilities) and scores frames the same way the
// in-process probe classifier does, so adapter tests have an exact oracle.
// A real CNN runner only has to honor the same byte contract.

namespace {

bool read_exact(std::uint8_t* buf, std::size_t n) {
    return std::fread(buf, 1, n, stdin) == n;
}

std::uint32_t le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probe-equivalent model runner speaking the inference IPC protocol"};
    int num_classes = 2;
    double confidence = 0.95;
    app.add_option("--classes", num_classes, "Class count k");
    app.add_option("--confidence", confidence, "Confidence on the decoded class");
    CLI11_PARSE(app, argc, argv);

    if (num_classes < 2 || confidence <= 1.0 / num_classes || confidence > 1.0) {
        std::cerr << "wzp-model-runner: invalid classes/confidence\n";
        return 2;
    }

    std::uint8_t header[16];
    while (read_exact(header, sizeof(header))) {
        const std::uint32_t count = le32(header);
        const std::uint32_t height = le32(header + 4);
        const std::uint32_t width = le32(header + 8);
        const std::uint32_t channels = le32(header + 12);
        if (count == 0 || height == 0 || width == 0 || channels == 0) {
            std::cerr << "wzp-model-runner: bad request header\n";
            return 2;
        }

        wzp::Image frame(static_cast<int>(height), static_cast<int>(width),
                         static_cast<int>(channels));
        std::vector<std::uint8_t> response;
        response.reserve(8 + static_cast<std::size_t>(count) * num_classes * 4);
        put_le32(response, count);
        put_le32(response, static_cast<std::uint32_t>(num_classes));

        for (std::uint32_t i = 0; i < count; ++i) {
            if (!read_exact(frame.data.data(), frame.size_bytes())) {
                std::cerr << "wzp-model-runner: request truncated\n";
                return 2;
            }
            const int decoded = wzp::marker::decode(wzp::marker::sample_mean(frame), num_classes);
            std::vector<float> row(static_cast<std::size_t>(num_classes));
            if (decoded == num_classes) {
                for (float& v : row) v = 1.0f / num_classes;
            } else {
                const int cls = decoded < 0 ? 0 : decoded;
                for (float& v : row) v = static_cast<float>((1.0 - confidence) / (num_classes - 1));
                row[static_cast<std::size_t>(cls)] = static_cast<float>(confidence);
            }
            for (float v : row) {
                std::uint32_t bits;
                std::memcpy(&bits, &v, 4);
                put_le32(response, bits);
            }
        }

        if (std::fwrite(response.data(), 1, response.size(), stdout) != response.size()) return 2;
        std::fflush(stdout);
    }
    return 0;
}
