#include "secrecy/rng.hpp"

#include <cmath>

namespace secrecy {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

PhiloxStream::PhiloxStream(RngSpec spec)
    : key_{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)},
      counter_{0u, 0u, static_cast<std::uint32_t>(spec.stream_id),
               static_cast<std::uint32_t>(spec.stream_id >> 32)} {}

PhiloxStream::Block PhiloxStream::philox(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double PhiloxStream::uniform() {
    if (buffered_ == 0) {
        const Block out = philox(counter_, key_);
        ++counter_[0];
        buffer_[0] = to_unit(out[0], out[1]);
        buffer_[1] = to_unit(out[2], out[3]);
        buffered_ = 2;
    }
    return buffer_[2 - buffered_--];
}

double PhiloxStream::exponential(double rate) {
    return -std::log1p(-uniform()) / rate;
}

}  // namespace secrecy
