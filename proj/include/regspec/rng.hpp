#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace regspec {

/// splitmix64 finalizer. Used for seeding and for deriving stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stream-splitting rule: the generator for (master, stream) is seeded with
/// splitmix64 applied to master + (stream + 1) * 0x9E3779B97F4A7C15.
/// Every trial of a parallel ensemble uses stream = trial index, so results do
/// not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// xoshiro256** with portable helpers. All distributions are implemented here
/// (no <random> distributions) so that streams are bit-identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t master, std::uint64_t stream) : Rng(derive_seed(master, stream)) {}

    std::uint64_t next_u64();

    /// Uniform integer in [0, bound). bound must be positive. Lemire's method.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Standard complex Gaussian: real and imaginary parts independent N(0, 1/2),
    /// so E|g|^2 = 1. Generated in polar form: |g|^2 ~ Exp(1), arg g ~ U[0, 2pi).
    std::complex<double> complex_gaussian();

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = uniform_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace regspec
