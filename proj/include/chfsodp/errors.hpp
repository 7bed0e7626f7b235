#ifndef CHFSODP_ERRORS_HPP
#define CHFSODP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chfsodp {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- record_io ----

struct MissingFile : Error {
    explicit MissingFile(const std::string& path)
        : Error("missing file: " + path), path(path) {}
    std::string path;
};

struct ParseError : Error {
    ParseError(const std::string& path, std::size_t line, const std::string& detail)
        : Error(path + ":" + std::to_string(line) + ": " + detail),
          path(path), line(line) {}
    std::string path;
    std::size_t line;
};

struct DuplicateSubject : Error {
    explicit DuplicateSubject(const std::string& id)
        : Error("duplicate subject id: " + id), subject_id(id) {}
    std::string subject_id;
};

struct BadLabel : Error {
    explicit BadLabel(const std::string& value)
        : Error("unrecognized label: \"" + value + "\""), value(value) {}
    std::string value;
};

struct NonFiniteSample : Error {
    explicit NonFiniteSample(std::size_t index)
        : Error("non-finite sample at index " + std::to_string(index)), index(index) {}
    std::size_t index;
};

struct TooShort : Error {
    explicit TooShort(std::size_t length)
        : Error("sequence too short: " + std::to_string(length) + " samples"),
          length(length) {}
    std::size_t length;
};

struct IoError : Error {
    using Error::Error;
};

// ---- preprocess ----

struct WidthEven : Error {
    explicit WidthEven(std::size_t width)
        : Error("median filter width must be odd, got " + std::to_string(width)) {}
};

struct WidthTooLarge : Error {
    WidthTooLarge(std::size_t width, std::size_t length)
        : Error("median filter width " + std::to_string(width) +
                " exceeds signal length " + std::to_string(length)) {}
};

struct FrequencyOutOfRange : Error {
    FrequencyOutOfRange(double f, double fs)
        : Error("notch frequency " + std::to_string(f) +
                " Hz outside (0, " + std::to_string(fs / 2.0) + ") Hz") {}
};

struct RecordTooShort : Error {
    RecordTooShort(std::size_t needed, std::size_t have)
        : Error("record too short: need " + std::to_string(needed) +
                " samples, have " + std::to_string(have)),
          needed(needed), have(have) {}
    std::size_t needed;
    std::size_t have;
};

// ---- sodp ----

struct EmptyPointSet : Error {
    EmptyPointSet() : Error("empty SODP point set") {}
};

// ---- classifiers ----

struct TooFewRows : Error {
    explicit TooFewRows(std::size_t n)
        : Error("too few rows: " + std::to_string(n)) {}
};

struct SingularCovariance : Error {
    SingularCovariance() : Error("pooled covariance singular after regularization") {}
};

struct BadHyperparameter : Error {
    using Error::Error;
};

// ---- validation ----

struct EmptyConfusion : Error {
    EmptyConfusion() : Error("confusion counts are all zero") {}
};

struct BadK : Error {
    using Error::Error;
};

struct SingleClassTraining : Error {
    explicit SingleClassTraining(const std::string& id)
        : Error("training remainder has a single class when holding out subject " + id),
          subject_id(id) {}
    std::string subject_id;
};

// ---- synth ----

struct BadSpec : Error {
    using Error::Error;
};

// ---- cli ----

struct ConfigError : Error {
    using Error::Error;
};

struct UnknownSubject : Error {
    explicit UnknownSubject(const std::string& id)
        : Error("unknown subject id: " + id), subject_id(id) {}
    std::string subject_id;
};

struct BadWindowIndex : Error {
    BadWindowIndex(long index, long count)
        : Error("window index " + std::to_string(index) + " out of range [0, " +
                std::to_string(count) + ")") {}
};

}  // namespace chfsodp

#endif
