#pragma once

#include <stdexcept>
#include <string>

namespace hpsusp {

enum class Errc {
    invalid_argument,
    domain,
    range,
    no_dominant_frequency,
    dt_mismatch,
    coverage,
    stroke_violation,
    instability,
    geometry_singularity,
    config,
    bad_magic,
    unsupported_version,
    bad_dimensions,
    truncated_payload,
    digest_mismatch,
    trailing_data,
    io,
    format,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace hpsusp
