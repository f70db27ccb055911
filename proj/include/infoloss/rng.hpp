#ifndef INFOLOSS_RNG_HPP
#define INFOLOSS_RNG_HPP

#include <cstdint>
#include <random>

namespace infoloss {

/// splitmix64 step; used to derive independent stream seeds from a base seed
/// so that Monte Carlo batches are reproducible regardless of how the sample
/// budget is split across workers.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded uniform generator. Doubles are built from the top 53 bits of
/// mt19937_64 output, so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    std::uint64_t next_u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace infoloss

#endif
