#include "rqa/error.hpp"

namespace rqa {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::EmptySeries: return "EmptySeries";
        case Errc::LeadingGap: return "LeadingGap";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::DegenerateVariance: return "DegenerateVariance";
        case Errc::NoCrossing: return "NoCrossing";
        case Errc::UndefinedMeasure: return "UndefinedMeasure";
        case Errc::DegenerateSeries: return "DegenerateSeries";
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::ConfigMismatch: return "ConfigMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace rqa
