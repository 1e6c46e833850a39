#include "doctest.h"

#include <cmath>

#include "f2gan/errors.hpp"
#include "f2gan/fidelity/metrics.hpp"
#include "f2gan/fidelity/report.hpp"
#include "f2gan/numerics/rng.hpp"
#include "support/oracles.hpp"

using namespace f2gan;

namespace {

std::vector<double> v(std::initializer_list<double> xs) { return xs; }

Dataset small_dataset(std::uint64_t seed, Index n) {
    SeededRng rng(seed);
    Dataset ds;
    ds.schema = {{"x", "y", "k"}, "label"};
    ds.class_names = {"a", "b"};
    ds.X.resize(n, 3);
    for (Index i = 0; i < n; ++i) {
        ds.y.push_back(static_cast<int>(i % 2));
        ds.X(i, 0) = rng.gaussian() + 3.0 * ds.y.back();
        ds.X(i, 1) = 10.0 * rng.uniform();
        ds.X(i, 2) = 7.0;
    }
    return ds;
}

} // namespace

TEST_CASE("wasserstein and ks hand cases") {
    CHECK(wasserstein_1d(v({1, 2, 3}), v({1, 2, 3})) == 0.0);
    CHECK(wasserstein_1d(v({1, 2, 3}), v({2, 3, 4})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wasserstein_1d(v({0, 0}), v({1, 1})) == doctest::Approx(1.0));
    CHECK(wasserstein_1d(v({0}), v({0, 3})) == doctest::Approx(1.5));
    CHECK(ks_statistic(v({1, 2}), v({1, 2})) == 0.0);
    CHECK(ks_statistic(v({0, 0}), v({1, 1})) == 1.0);
    CHECK(ks_statistic(v({1, 2}), v({1, 3})) == doctest::Approx(0.5));
    CHECK_THROWS_AS(wasserstein_1d({}, v({1})), ContractError);
    CHECK_THROWS_AS(ks_statistic(v({1}), {}), ContractError);
}

TEST_CASE("1-D metrics agree with the brute-force oracle") {
    SeededRng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto na = 1 + rng.uniform_index(50);
        const auto nb = 1 + rng.uniform_index(50);
        std::vector<double> a(na), b(nb);
        // Mix continuous and heavily tied values.
        for (auto& x : a) x = trial % 3 == 0 ? std::floor(5 * rng.uniform()) : rng.gaussian();
        for (auto& x : b) x = trial % 3 == 0 ? std::floor(5 * rng.uniform()) : 0.5 + 2 * rng.gaussian();
        CHECK(std::abs(wasserstein_1d(a, b) - oracle::wasserstein(a, b)) < 1e-10);
        CHECK(std::abs(ks_statistic(a, b) - oracle::ks(a, b)) < 1e-10);
        CHECK(wasserstein_1d(a, b) == doctest::Approx(wasserstein_1d(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("wasserstein approaches the shift as supports separate") {
    SeededRng rng(5);
    std::vector<double> a(200);
    for (auto& x : a) x = rng.gaussian();
    for (double shift : {10.0, 100.0}) {
        std::vector<double> b(a);
        for (auto& x : b) x += shift;
        CHECK(wasserstein_1d(a, b) == doctest::Approx(shift).epsilon(1e-9));
        CHECK(ks_statistic(a, b) == 1.0);
    }
}

TEST_CASE("mmd hand cases and symmetry") {
    Matrix A(1, 1), B(1, 1);
    A << 0.0;
    B << 1.0;
    CHECK(std::abs(mmd_gaussian(A, B, 1.0) - (2.0 - 2.0 * std::exp(-1.0))) < 1e-12);

    SeededRng rng(9);
    const Matrix P = rng.gaussian_matrix(40, 3);
    const Matrix Q = rng.gaussian_matrix(30, 3).array() + 0.5;
    CHECK(std::abs(mmd_gaussian(P, P)) < 1e-12);
    CHECK(mmd_gaussian(P, Q) == doctest::Approx(mmd_gaussian(Q, P)).epsilon(1e-12));
    CHECK(mmd_gaussian(P, Q) > 0.0);
    CHECK(mmd_gaussian(P, Q, 1e6) < 1e-9);

    const Matrix same = Matrix::Constant(4, 2, 3.0);
    CHECK(median_heuristic_sigma(same, same) == 1.0);
    CHECK_THROWS_AS(mmd_gaussian(P, rng.gaussian_matrix(3, 2)), ContractError);
}

TEST_CASE("delta_stat") {
    Matrix r(2, 1), g(2, 1);
    r << 0, 2;
    g << 0, 0;
    CHECK(delta_stat(r, g) == doctest::Approx(2.0));
    SeededRng rng(4);
    const Matrix X = rng.gaussian_matrix(20, 3);
    const Matrix Y = rng.gaussian_matrix(25, 3);
    CHECK(delta_stat(X, X) == 0.0);
    Matrix Xp = X.colwise().reverse();
    CHECK(delta_stat(Xp, Y) == doctest::Approx(delta_stat(X, Y)).epsilon(1e-12));
    CHECK_THROWS_AS(delta_stat(X.topRows(1), Y), ContractError);
}

TEST_CASE("evaluate_fidelity") {
    const Dataset real = small_dataset(1, 60);
    const auto self = evaluate_fidelity(real, real);
    CHECK(self.avg_wasserstein == 0.0);
    CHECK(self.avg_ks == 0.0);
    CHECK(std::abs(self.mmd) < 1e-12);
    CHECK(self.delta_stat == 0.0);

    const Dataset synth = small_dataset(2, 80);
    const auto r1 = evaluate_fidelity(real, synth);
    const auto r2 = evaluate_fidelity(real, synth);
    CHECK(to_json(r1).dump() == to_json(r2).dump());
    REQUIRE(r1.per_feature.size() == 3);
    double sum = 0;
    for (const auto& f : r1.per_feature) {
        CHECK(f.wasserstein >= 0.0);
        CHECK(f.ks >= 0.0);
        CHECK(f.ks <= 1.0);
        sum += f.wasserstein;
    }
    CHECK(r1.avg_wasserstein == doctest::Approx(sum / 3));
    CHECK(r1.real_count == 60);
    CHECK(r1.synthetic_count == 80);

    Dataset renamed = synth;
    renamed.schema.feature_names[1] = "z";
    CHECK_THROWS_AS(evaluate_fidelity(real, renamed), ContractError);
}

TEST_CASE("histogram export") {
    const Dataset real = small_dataset(1, 60);
    const Dataset synth = small_dataset(3, 50);
    const auto h = export_histograms(real, synth, 16);
    CHECK(h.series.size() == 3 * 3);
    for (const auto& s : h.series) {
        REQUIRE(s.bin_edges.size() == 17);
        const double width = s.bin_edges[1] - s.bin_edges[0];
        double mr = 0, ms = 0;
        for (std::size_t k = 0; k < 16; ++k) {
            mr += s.real_density[k] * width;
            ms += s.synthetic_density[k] * width;
        }
        CHECK(std::abs(mr - 1.0) < 1e-9);
        CHECK(std::abs(ms - 1.0) < 1e-9);
        if (s.feature_name == "k") {
            int occupied = 0;
            for (double d : s.real_density) occupied += d > 0 ? 1 : 0;
            CHECK(occupied == 1);
        }
    }
    const auto same = export_histograms(real, real, 8);
    for (const auto& s : same.series) CHECK(s.real_density == s.synthetic_density);
    CHECK_THROWS_AS(export_histograms(real, synth, 1), ContractError);
}
