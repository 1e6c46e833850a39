#pragma once

#include <vector>

#include "f2gan/data/dataset.hpp"
#include "f2gan/numerics/rng.hpp"

namespace f2gan {

struct Batch {
    Matrix X;
    std::vector<int> y;
    std::vector<Index> rows;  // source row indices
};

/// One epoch worth of row indices: a fresh permutation cut into chunks of
/// `batch_size`, the last chunk holding the remainder.
std::vector<std::vector<Index>> batch_indices(Index rows, Index batch_size, SeededRng& rng);

std::vector<Batch> make_batches(const Dataset& ds, Index batch_size, SeededRng& rng);

} // namespace f2gan
