#pragma once

// Counter-based random streams.
//
// Generator: Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3", SC'11). A stream is identified by (seed, stream_id):
//
//   key     = (seed & 0xffffffff, seed >> 32)
//   counter = (block & 0xffffffff, block >> 32, stream_id & 0xffffffff, stream_id >> 32)
//
// Block b = 0, 1, 2, ... yields four 32-bit words (w0, w1, w2, w3), consumed
// as two 64-bit values (w1 << 32 | w0) then (w3 << 32 | w2).
//   uniform01  = ((u64 >> 11) + 0.5) · 2^-53, strictly inside (0, 1)
//   normal     = Box-Muller on two consecutive uniforms u1, u2:
//                r = sqrt(-2 log u1); first r cos(2π u2), then r sin(2π u2)
// Ports reproducing these rules reproduce every stream in this library (up
// to libm differences in log, sin, cos).

#include <array>
#include <cstdint>
#include <limits>
#include <optional>

namespace dirstat::sampling {

/// One Philox4x32-10 block.
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                                         std::array<std::uint32_t, 2> key);

class SeededStream {
public:
    using result_type = std::uint64_t;

    explicit SeededStream(std::uint64_t seed, std::uint64_t stream_id = 0) : seed_(seed), stream_id_(stream_id) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();
    double uniform01();
    double normal();

    /// Independent sub-stream: same seed, stream id mixed with `index`.
    [[nodiscard]] SeededStream substream(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    std::optional<double> spare_normal_;
};

}  // namespace dirstat::sampling
