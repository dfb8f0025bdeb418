#ifndef PHISHSCAN_RNG_HPP
#define PHISHSCAN_RNG_HPP

#include <cstdint>

namespace phishscan {

// SplitMix64 (Steele, Lea, Flood 2014). Pinned generator so that trained
// models and generated fixtures are byte-identical across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 bits of precision
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); modulo bias is negligible for n << 2^64
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

// Per-stream seed derivation, e.g. one stream per forest tree:
// seed_t = mix_seed(random_state, tree_index).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    SplitMix64 g(base ^ (stream * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
    return g.next();
}

} // namespace phishscan

#endif
