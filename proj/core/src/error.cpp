#include "hpsusp/error.hpp"

namespace hpsusp {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::domain: return "domain error";
    case Errc::range: return "range error";
    case Errc::no_dominant_frequency: return "no dominant frequency";
    case Errc::dt_mismatch: return "sampling period mismatch";
    case Errc::coverage: return "insufficient grid coverage";
    case Errc::stroke_violation: return "stroke violation";
    case Errc::instability: return "integration instability";
    case Errc::geometry_singularity: return "geometry singularity";
    case Errc::config: return "configuration error";
    case Errc::bad_magic: return "bad magic";
    case Errc::unsupported_version: return "unsupported version";
    case Errc::bad_dimensions: return "bad dimensions";
    case Errc::truncated_payload: return "truncated payload";
    case Errc::digest_mismatch: return "config digest mismatch";
    case Errc::trailing_data: return "trailing data";
    case Errc::io: return "i/o error";
    case Errc::format: return "input format error";
    }
    return "unknown error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

} // namespace hpsusp
