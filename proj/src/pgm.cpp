#include "wzp/pgm.hpp"

#include <fstream>
#include <string>

namespace wzp {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

int parse_int(const std::string& tok, const std::filesystem::path& path, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw AssetError(path.string() + ": bad PGM " + what + " field '" + tok + "'");
    }
}

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AssetError("cannot open " + path.string());

    if (next_token(in) != "P5") throw AssetError(path.string() + ": not a binary (P5) PGM file");
    const int width = parse_int(next_token(in), path, "width");
    const int height = parse_int(next_token(in), path, "height");
    const int maxval = parse_int(next_token(in), path, "maxval");
    if (width <= 0 || height <= 0) throw AssetError(path.string() + ": empty PGM");
    if (maxval <= 0 || maxval > 255) {
        throw AssetError(path.string() + ": unsupported PGM maxval " + std::to_string(maxval));
    }

    Image img(height, width, 1);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.size_bytes()));
    if (in.gcount() != static_cast<std::streamsize>(img.size_bytes())) {
        throw AssetError(path.string() + ": truncated PGM pixel data");
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
    if (img.channels != 1) throw ParameterError("write_pgm: image must be single channel");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ExportError("cannot open " + path.string() + " for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.size_bytes()));
    if (!out) throw ExportError("failed writing " + path.string());
}

}  // namespace wzp
