#include "discrim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace discrim {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t combine_seed(std::uint64_t key, std::uint64_t word) {
    return mix64(key ^ mix64(word + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(combine_seed(seed, stream_id)),
                      static_cast<std::uint32_t>(combine_seed(seed, stream_id) >> 32),
                      static_cast<std::uint32_t>(mix64(seed)),
                      static_cast<std::uint32_t>(mix64(stream_id))};
    engine_.seed(seq);
}

RngStream RngStream::substream(std::uint64_t index) const {
    return RngStream(combine_seed(seed_, stream_id_), index);
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_bits(unsigned bits) {
    if (bits == 0 || bits > 64) {
        throw std::invalid_argument("uniform_bits: bits must be in [1, 64]");
    }
    return engine_() >> (64 - bits);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

}  // namespace discrim
