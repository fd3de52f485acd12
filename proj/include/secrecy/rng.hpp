#pragma once

#include <array>
#include <cstdint>

namespace secrecy {

/// Identifies one independent random substream: trial i of a simulation
/// seeded with `seed` uses stream_id = i.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Stream layout, version 1: key = (seed low word, seed high word),
/// counter = (block index, 0, stream_id low word, stream_id high word).
/// Each block yields two doubles built from 53 random bits. Changing this
/// layout changes every pinned Monte Carlo value, so bump kStreamVersion.
class PhiloxStream {
public:
    static constexpr int kStreamVersion = 1;

    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit PhiloxStream(RngSpec spec);

    /// Raw Philox4x32-10 bijection, exposed for known-answer tests.
    static Block philox(Block counter, Key key);

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    /// Exponential with the given rate via inverse CDF, -ln(1 - U) / rate.
    double exponential(double rate);

private:
    Key key_;
    Block counter_;
    std::array<double, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace secrecy
