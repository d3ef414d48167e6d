#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wzp/io_util.hpp"
#include "wzp/synthgen.hpp"

// Renders a synthetic test video in the raw RGB24 wire format. With `--out -`
// the frames go to stdout, which lets this tool stand in for the decoder in
// pipeline loopback runs (--decodercmd "wzp-synthgen --spec {input} --out -").
int main(int argc, char** argv) {
    CLI::App app{"Synthetic test video generator with burned-in timestamps and scene markers"};

    std::string spec_path;
    std::string out_path = "-";
    std::string truth_path;
    std::string masks_dir;

    app.add_option("--spec", spec_path, "Video spec JSON file")->required();
    app.add_option("--out", out_path, "Raw RGB24 output file, or - for stdout");
    app.add_option("--truth", truth_path, "Optional ground-truth JSON output");
    app.add_option("--masksdir", masks_dir, "Digit mask directory (default: bundled set)");

    CLI11_PARSE(app, argc, argv);

    try {
        const wzp::SyntheticVideoSpec spec = wzp::SyntheticVideoSpec::load(spec_path);
        const wzp::DigitMaskSet masks =
            masks_dir.empty() ? wzp::DigitMaskSet::builtin() : wzp::DigitMaskSet::load(masks_dir);

        wzp::GroundTruth truth;
        if (out_path == "-") {
            truth = wzp::generate_synthetic_video(spec, masks, std::cout);
        } else {
            truth = wzp::generate_to_file(spec, masks, out_path);
        }
        if (!truth_path.empty()) {
            wzp::atomic_write_file(truth_path, truth.to_json());
        }
    } catch (const std::exception& e) {
        std::cerr << "wzp-synthgen: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
