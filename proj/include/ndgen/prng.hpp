#pragma once

#include <cstdint>
#include <span>

namespace ndgen {

/// PCG32 (XSH-RR output, 64-bit LCG state) with selectable stream.
///
/// Constants follow the reference PCG implementation, so `Pcg32(42, 54)` reproduces the
/// published demo sequence 0xa15c02b7, 0x7b47f409, ...
class Pcg32 {
public:
    static constexpr std::uint64_t kDefaultSeed = 42;
    static constexpr std::uint64_t kDefaultStream = 54;

    Pcg32() : Pcg32(kDefaultSeed, kDefaultStream) {}
    Pcg32(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next();

    /// 64 bits from two consecutive 32-bit outputs, high word first.
    std::uint64_t next64();

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double canonical();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
};

/// Uniform real in [lo, hi); returns lo when lo == hi. Throws std::invalid_argument if lo > hi.
double uniform_real(Pcg32& rng, double lo, double hi);

/// Unbiased uniform integer in [lo, hi] by threshold rejection. Throws std::invalid_argument if lo > hi.
std::int64_t uniform_int(Pcg32& rng, std::int64_t lo, std::int64_t hi);

/// Fills `out` with independent standard normal draws (Box-Muller, two uniforms per pair).
void fill_standard_normal(Pcg32& rng, std::span<double> out);

} // namespace ndgen
