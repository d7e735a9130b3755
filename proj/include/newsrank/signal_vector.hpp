#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace newsrank {

/// Unnormalized values behind a SignalVector, kept for reporting.
struct RawSignals {
    double pagerank = 0.0;
    std::optional<double> alexa_mean;
    std::uint64_t entities = 0;
    std::optional<double> gap;
    std::optional<double> bot;
    std::optional<double> ads;

    friend bool operator==(const RawSignals&, const RawSignals&) = default;
};

/// The six quality signals of one source. Continuous signals lie in
/// [0, 1]; f_p is 0 for the most popular source and 1 for the least.
struct SignalVector {
    std::string domain;
    double f_r = 0.0;
    double f_p = 1.0;
    double f_e = 0.0;
    double f_b = 0.0;
    bool f_s = false;
    bool f_a = false;
    RawSignals raw;

    friend bool operator==(const SignalVector&, const SignalVector&) = default;
};

using SignalTable = std::map<std::string, SignalVector>;

} // namespace newsrank
