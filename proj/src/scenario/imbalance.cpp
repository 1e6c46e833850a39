#include <algorithm>
#include <cmath>

#include "f2gan/errors.hpp"
#include "f2gan/numerics/rng.hpp"
#include "f2gan/scenario/scenario.hpp"

namespace f2gan {

Dataset apply_imbalance(const Dataset& ds, const std::vector<std::string>& minority, double ratio,
                        std::uint64_t seed) {
    ds.validate();
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw ContractError("apply_imbalance: ratio must be in (0, 1]");
    }
    std::vector<bool> keep(static_cast<std::size_t>(ds.rows()), true);
    for (const auto& name : minority) {
        const int c = find_class(ds, name);
        if (c < 0) {
            throw ContractError("apply_imbalance: unknown class '" + name + "'");
        }
        std::vector<Index> rows;
        for (Index i = 0; i < ds.rows(); ++i) {
            if (ds.y[static_cast<std::size_t>(i)] == c) rows.push_back(i);
        }
        const auto target = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(rows.size()) - 1e-9));
        SeededRng rng(derive_seed(seed, name));
        rng.shuffle(std::span<Index>(rows));
        for (std::size_t k = target; k < rows.size(); ++k) {
            keep[static_cast<std::size_t>(rows[k])] = false;
        }
    }
    std::vector<Index> kept;
    for (Index i = 0; i < ds.rows(); ++i) {
        if (keep[static_cast<std::size_t>(i)]) kept.push_back(i);
    }
    return ds.subset(kept);
}

} // namespace f2gan
