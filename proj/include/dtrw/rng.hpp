#ifndef DTRW_RNG_HPP
#define DTRW_RNG_HPP

#include <cstdint>
#include <limits>

namespace dtrw {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

private:
    std::uint64_t state_;
};

/// Per-path uniform stream on [0, 1). The starting state is a hash of
/// (master seed, path index), so path j sees the same numbers no matter how
/// the ensemble is partitioned across workers.
class PathStream {
public:
    constexpr PathStream(std::uint64_t seed, std::uint64_t path)
        : bits_(splitmix64_mix(seed ^ splitmix64_mix(path + 0x632be59bd9b4e019ULL)))
    {
    }

    /// 53 random bits scaled into [0, 1).
    constexpr double operator()() { return static_cast<double>(bits_() >> 11) * 0x1.0p-53; }

private:
    SplitMix64 bits_;
};

}  // namespace dtrw

#endif  // DTRW_RNG_HPP
