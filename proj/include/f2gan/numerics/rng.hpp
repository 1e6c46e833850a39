#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "f2gan/numerics/types.hpp"

namespace f2gan {

/// Seeded pseudo-random source with a fully specified draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Everything layered on top is implemented here rather than taken
/// from <random> distributions (which are implementation-defined):
///
///   uniform()        (next() >> 11) * 2^-53, in [0, 1)
///   uniform_index(n) rejection sampling on the top bits, unbiased
///   gaussian()       Box-Muller, u1 = 1 - uniform() in (0, 1]; both outputs
///                    of a pair are used, the cosine branch first
///   shuffle()        Fisher-Yates from the back using uniform_index
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t uniform_index(std::uint64_t n);
    double gaussian();

    Matrix gaussian_matrix(Index rows, Index cols);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    std::vector<Index> permutation(Index n);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer; the mixing step used by all seed derivations.
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for a named stage: mix64(seed ^ mix64(fnv1a(stage))).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage);

/// Counter-based sub-seed, used for per-sample substreams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

} // namespace f2gan
