#pragma once

#include <array>
#include <cstdint>

namespace zigzag {

// Philox4x64-10 block cipher, the counter-based generator behind all
// randomness in this library. Streams are keyed by (master seed, stream id),
// so replicate r of an experiment always sees the same numbers no matter
// which thread runs it or in which order replicates execute.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{master_seed, stream_id} {}

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1); never returns 0 or 1, so
    // -log(u) and Box-Muller are always finite.
    double uniform();

    // Standard normal via Box-Muller (pairs cached).
    double normal();

    // Exponential with unit rate.
    double exponential();

    // Gamma(shape, 1) via Marsaglia-Tsang, any shape > 0.
    double gamma(double shape);

    std::uint64_t master_seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> block_{};
    int block_pos_ = 4; // forces refill on first use
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

} // namespace zigzag
