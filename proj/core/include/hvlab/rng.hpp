#pragma once

#include <array>
#include <cstdint>

namespace hvlab {

/// One block of the Philox4x32-10 counter-based generator.
/// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream identifiers. Every consumer of randomness draws from its own
/// (stream, domain) substream so that adding a draw in one place never
/// perturbs the sequence seen anywhere else.
enum class StreamDomain : std::uint32_t {
    Generic = 0,
    BellInterval = 1,
    MalusInterval = 2,
    BooleanInterval = 3,
    GramDraw = 4,
    HomInterval = 5,
    SwapDraw = 6,
};

/// Counter-based uniform random stream.
///
/// The key is the 64-bit run seed; the counter encodes (block, stream,
/// domain). Monte Carlo loops open one stream per i-interval, which makes
/// results independent of how intervals are partitioned across threads.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, StreamDomain domain = StreamDomain::Generic)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream),
          domain_(static_cast<std::uint32_t>(domain)) {}

    static Rng for_interval(std::uint64_t seed, std::int64_t interval, StreamDomain domain) {
        return Rng(seed, static_cast<std::uint64_t>(interval), domain);
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buffer_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform direction in [0, pi).
    double uniform_angle() { return uniform() * kPiLocal; }

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next_u64(); }

private:
    static constexpr double kPiLocal = 3.141592653589793238462643383279502884;

    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint32_t domain_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
};

/// Mixes an index into a seed (splitmix64 finalizer); used to derive
/// independent sub-run seeds, e.g. the four runs of a CHSH estimate.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hvlab
