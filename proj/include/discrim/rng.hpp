#pragma once

#include <cstdint>
#include <random>

namespace discrim {

// splitmix64 finalizer; used to derive independent seeds from structured keys.
std::uint64_t mix64(std::uint64_t x);

// Combines a key with an additional word into a new well-mixed key.
std::uint64_t combine_seed(std::uint64_t key, std::uint64_t word);

/// Seeded pseudo-random stream identified by (seed, stream id).
///
/// All draws are produced by code in this project on top of the raw
/// std::mt19937_64 output, so sequences are identical across standard
/// library implementations. A stream is single-owner: parallel workers must
/// each hold their own.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Independent child stream; the parent is not advanced.
    RngStream substream(std::uint64_t index) const;

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform integer in [0, 2^bits).
    std::uint64_t uniform_bits(unsigned bits);

    // Standard normal (Marsaglia polar method).
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace discrim
