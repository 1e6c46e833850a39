#include "f2gan/data/batching.hpp"

#include <algorithm>

#include "f2gan/errors.hpp"

namespace f2gan {

std::vector<std::vector<Index>> batch_indices(Index rows, Index batch_size, SeededRng& rng) {
    if (batch_size < 1) {
        throw ContractError("make_batches: batch size must be >= 1");
    }
    const auto perm = rng.permutation(rows);
    std::vector<std::vector<Index>> out;
    for (Index start = 0; start < rows; start += batch_size) {
        const Index stop = std::min(rows, start + batch_size);
        out.emplace_back(perm.begin() + start, perm.begin() + stop);
    }
    return out;
}

std::vector<Batch> make_batches(const Dataset& ds, Index batch_size, SeededRng& rng) {
    std::vector<Batch> out;
    for (auto& idx : batch_indices(ds.rows(), batch_size, rng)) {
        Batch b;
        b.X.resize(static_cast<Index>(idx.size()), ds.dimension());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            b.X.row(static_cast<Index>(i)) = ds.X.row(idx[i]);
            b.y.push_back(ds.y[static_cast<std::size_t>(idx[i])]);
        }
        b.rows = std::move(idx);
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace f2gan
