#pragma once

#include <stdexcept>
#include <string>

namespace wzp {

// Base type for every recoverable error raised by the pipeline.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Image stacks with inconsistent dimensions.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Mask directory missing a numeral, unreadable file, bad PGM.
class AssetError : public Error {
public:
    using Error::Error;
};

// Two digit masks binarize to the same pattern.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

// Rectangle out of bounds, zero-area crop, value too wide for its strip.
class GeometryError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

// Synthetic video spec violates its invariants.
class SpecError : public Error {
public:
    using Error::Error;
};

// Corruption plan references a frame or slot that does not exist.
class PlanError : public Error {
public:
    using Error::Error;
};

class ExportError : public Error {
public:
    using Error::Error;
};

// Decoder (or model runner) process could not be started at all.
class SpawnError : public Error {
public:
    using Error::Error;
};

// Decoder exited nonzero; carries its captured stderr.
class DecoderError : public Error {
public:
    DecoderError(const std::string& msg, int exit_code, std::string diagnostics)
        : Error(msg), exit_code(exit_code), diagnostics(std::move(diagnostics)) {}

    int exit_code;
    std::string diagnostics;
};

// Byte stream ended off a frame boundary.
class StreamCorruptionError : public Error {
public:
    using Error::Error;
};

class InferenceError : public Error {
public:
    using Error::Error;
};

class OracleError : public Error {
public:
    using Error::Error;
};

class PipelineError : public Error {
public:
    using Error::Error;
};

// Batch OCR QC check 1: at least one frame produced zero digit matches.
class TimestampDetectionCountError : public Error {
public:
    using Error::Error;
};

// Batch OCR QC check 2: a shorter timestamp appears after a longer one.
class NonDecreasingTimestampLenError : public Error {
public:
    using Error::Error;
};

// Per-frame fallback found no readable frame to anchor synthesis on.
class UnsynthesizableError : public Error {
public:
    using Error::Error;
};

// Readable timestamp values are not increasing in frame order.
class MonotonicityError : public Error {
public:
    using Error::Error;
};

}  // namespace wzp
