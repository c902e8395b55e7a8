#pragma once

#include <stdexcept>
#include <string>

namespace rqa {

/// Failure categories surfaced by library operations. Each maps to a stable
/// name used in CLI error summaries and per-window status fields.
enum class Errc {
    EmptySeries,
    LeadingGap,
    InsufficientData,
    DegenerateVariance,
    NoCrossing,
    UndefinedMeasure,
    DegenerateSeries,
    InvalidInput,
    ConfigMismatch,
    ParseError,
    IoError,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace rqa
