#include "ndgen/prng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ndgen {

namespace {
constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
}

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream)
{
    state_ = 0;
    inc_ = (stream << 1u) | 1u;
    next();
    state_ += seed;
    next();
}

std::uint32_t Pcg32::next()
{
    const std::uint64_t old = state_;
    state_ = old * kMultiplier + inc_;
    const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

std::uint64_t Pcg32::next64()
{
    const std::uint64_t hi = next();
    const std::uint64_t lo = next();
    return (hi << 32u) | lo;
}

double Pcg32::canonical()
{
    const std::uint64_t a = next() >> 5u; // 27 bits
    const std::uint64_t b = next() >> 6u; // 26 bits
    return static_cast<double>((a << 26u) | b) * 0x1.0p-53;
}

double uniform_real(Pcg32& rng, double lo, double hi)
{
    if (lo > hi)
        throw std::invalid_argument("uniform_real: lo > hi");
    if (lo == hi)
        return lo;
    const double x = lo + (hi - lo) * rng.canonical();
    return x < hi ? x : std::nextafter(hi, lo);
}

std::int64_t uniform_int(Pcg32& rng, std::int64_t lo, std::int64_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1u;
    if (range == 1u)
        return lo;
    if (range == 0u) // full 64-bit span
        return static_cast<std::int64_t>(rng.next64());
    if (range <= (std::uint64_t{1} << 32u)) {
        const std::uint64_t r32 = range;
        const std::uint64_t threshold = ((std::uint64_t{1} << 32u) - r32) % r32;
        for (;;) {
            const std::uint64_t x = rng.next();
            if (x >= threshold)
                return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % r32);
        }
    }
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
        const std::uint64_t x = rng.next64();
        if (x >= threshold)
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
    }
}

void fill_standard_normal(Pcg32& rng, std::span<double> out)
{
    std::size_t i = 0;
    while (i < out.size()) {
        // 1 - u keeps the log argument in (0, 1].
        const double u1 = 1.0 - rng.canonical();
        const double u2 = rng.canonical();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out[i++] = radius * std::cos(angle);
        if (i < out.size())
            out[i++] = radius * std::sin(angle);
    }
}

} // namespace ndgen
