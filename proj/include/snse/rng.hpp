#pragma once

#include <cmath>
#include <cstdint>

namespace snse {

// Identifies one reproducible random stream. Identical (seed, stream_id)
// pairs reproduce identical sample sequences bit for bit, so per-mode and
// per-trajectory streams can be handed out without coordination.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Stream id layout: purpose tag in the top byte, then two 24-bit slots.
// Keeps trajectory/mode/replica indices from ever colliding across uses.
enum class StreamPurpose : std::uint64_t {
    tensor = 1,
    ou_init = 2,
    ou_jump = 3,
    mc = 4,
    field_gen = 5,
    feller = 6,
    resim = 7,
    calibration = 8,
    check = 9,
};

inline RngStream make_stream(std::uint64_t seed, StreamPurpose purpose,
                             std::uint64_t a = 0, std::uint64_t b = 0) {
    const std::uint64_t id = (static_cast<std::uint64_t>(purpose) << 56) |
                             ((a & 0xFFFFFFu) << 32) | (b & 0xFFFFFFFFu);
    return RngStream{seed, id};
}

namespace detail {
// Stafford mix 13, the finalizer used by SplitMix64.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based generator (SplitMix64). The state is a counter advanced by a
// fixed odd gamma and every output is an avalanche hash of the counter, so
// distinct (seed, stream_id) starting points give statistically independent
// streams. One Rng must be owned by exactly one worker.
class Rng {
  public:
    explicit Rng(RngStream stream)
        : state_(detail::mix64(stream.seed ^ detail::mix64(stream.stream_id + 0x9E3779B97F4A7C15ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(state_);
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so
    // log() and tan() of derived quantities stay finite.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double exponential() { return -std::log(uniform01()); }

    // Box-Muller; stateless on purpose (no cached spare).
    double normal() {
        const double r = std::sqrt(2.0 * exponential());
        return r * std::cos(2.0 * M_PI * uniform01());
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

}  // namespace snse
