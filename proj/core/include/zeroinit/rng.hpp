#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace zeroinit {

/// SplitMix64 (Steele/Lea/Flood constants). The single pseudo-random stream
/// used by the whole project: random init baselines, synthetic datasets and
/// mini-batch shuffling all derive from it, so every experiment is pinned by
/// one 64-bit seed. Version-pinned by construction: the output sequence is a
/// fixed function of the seed on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1]; 53-bit resolution, never returns exactly 0.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. Deviates are produced in pairs; the
    /// second one is cached, so N draws consume ceil(N/2)*2 uniforms.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Child stream for substream i; used to give each layer / epoch its own
    /// deterministic stream independent of draw counts elsewhere.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t substream) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (substream + 1)));
        return g.next_u64();
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace zeroinit
