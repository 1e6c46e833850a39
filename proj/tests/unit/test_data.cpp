#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "f2gan/data/batching.hpp"
#include "f2gan/data/csv.hpp"
#include "f2gan/data/scaler.hpp"
#include "f2gan/errors.hpp"

using namespace f2gan;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& contents) {
    const auto path = fs::temp_directory_path() / ("f2gan_test_data_" + name);
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

Dataset random_dataset(std::uint64_t seed, Index n, Index d, int classes) {
    SeededRng rng(seed);
    Dataset ds;
    for (Index j = 0; j < d; ++j) ds.schema.feature_names.push_back("f" + std::to_string(j));
    ds.schema.label_column = "label";
    for (int c = 0; c < classes; ++c) ds.class_names.push_back("class " + std::to_string(c));
    ds.X = rng.gaussian_matrix(n, d) * 250.0;
    for (Index i = 0; i < n; ++i) ds.y.push_back(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(classes))));
    return ds;
}

} // namespace

TEST_CASE("load_csv: first-appearance label encoding") {
    const auto p = temp_file("labels.csv", "x,y,label\n1,2,A\n3,4,B\n5,6,A\n");
    const auto ds = load_csv(p, FeatureSchema{{"x", "y"}, "label"});
    CHECK(ds.y == std::vector<int>{0, 1, 0});
    CHECK(ds.class_names == std::vector<std::string>{"A", "B"});
    CHECK(ds.X(2, 1) == 6.0);
    const auto inferred = load_csv(p);
    CHECK(inferred.schema.feature_names == std::vector<std::string>{"x", "y"});
}

TEST_CASE("load_csv: error paths carry coordinates") {
    const auto bad = temp_file("bad.csv", "V12a,I12a,fault\n230.1,abc,LG\n");
    FeatureSchema schema{{"V12a", "I12a"}, "fault"};
    CHECK_THROWS_WITH_AS(load_csv(bad, schema), doctest::Contains("row 2, column \"I12a\""), ParseError);

    const auto missing = temp_file("missing.csv", "V12a,fault\n1,LG\n");
    CHECK_THROWS_WITH_AS(load_csv(missing, schema), doctest::Contains("missing column \"I12a\""), ParseError);

    const auto empty = temp_file("empty.csv", "");
    CHECK_THROWS_AS(load_csv(empty, schema), ParseError);

    const auto header_only = temp_file("header.csv", "V12a,I12a,fault\n");
    CHECK_THROWS_AS(load_csv(header_only, schema), ParseError);

    const auto nan = temp_file("nan.csv", "V12a,I12a,fault\n1,nan,LG\n");
    CHECK_THROWS_AS(load_csv(nan, schema), ParseError);
}

TEST_CASE("csv round trip keeps numeric content and label encoding") {
    auto ds = random_dataset(11, 40, 4, 3);
    ds.class_names[1] = "needs, \"quoting\"";
    const auto path = fs::temp_directory_path() / "f2gan_test_roundtrip.csv";
    write_csv(ds, path);
    const auto back = load_csv(path, ds.schema);
    for (Index i = 0; i < ds.rows(); ++i) {
        for (Index j = 0; j < ds.dimension(); ++j) {
            const double a = ds.X(i, j), b = back.X(i, j);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
    // Re-encoding an encoded dataset is the identity up to first-appearance order.
    for (Index i = 0; i < ds.rows(); ++i) {
        CHECK(back.class_names[static_cast<std::size_t>(back.y[static_cast<std::size_t>(i)])] ==
              ds.class_names[static_cast<std::size_t>(ds.y[static_cast<std::size_t>(i)])]);
    }
    const auto path2 = fs::temp_directory_path() / "f2gan_test_roundtrip2.csv";
    write_csv(back, path2);
    const auto again = load_csv(path2, ds.schema);
    CHECK(again.y == back.y);
    CHECK(again.class_names == back.class_names);
    CHECK(again.X == back.X);
}

TEST_CASE("scaler") {
    Dataset ds;
    ds.schema = {{"a", "c"}, "label"};
    ds.class_names = {"x"};
    ds.X.resize(3, 2);
    ds.X << 0, 7, 5, 7, 10, 7;
    ds.y = {0, 0, 0};
    const auto sp = fit_scaler(ds);
    const auto scaled = apply_scale(ds, sp);
    CHECK(scaled.X(0, 0) == -1.0);
    CHECK(scaled.X(1, 0) == 0.0);
    CHECK(scaled.X(2, 0) == 1.0);
    CHECK(scaled.X.col(1).isZero());
    const auto back = inverse_scale(scaled, sp);
    CHECK((back.X.col(1).array() == 7.0).all());

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = random_dataset(seed, 30, 5, 2);
        const auto s = fit_scaler(r);
        const auto sc = apply_scale(r, s);
        CHECK(sc.X.maxCoeff() <= 1.0);
        CHECK(sc.X.minCoeff() >= -1.0);
        CHECK((inverse_scale(sc, s).X - r.X).cwiseAbs().maxCoeff() < 1e-9);
        // order-preserving per feature
        for (Index j = 0; j < r.dimension(); ++j) {
            for (Index i = 1; i < r.rows(); ++i) {
                CHECK((r.X(i, j) < r.X(i - 1, j)) == (sc.X(i, j) < sc.X(i - 1, j)));
            }
        }
    }
    CHECK_THROWS_AS(apply_scale(Matrix::Zero(2, 3), sp), DimensionError);
}

TEST_CASE("make_batches") {
    const auto ds = random_dataset(2, 10, 2, 2);
    SeededRng rng(1);
    const auto batches = make_batches(ds, 4, rng);
    REQUIRE(batches.size() == 3);
    CHECK(batches[0].X.rows() == 4);
    CHECK(batches[1].X.rows() == 4);
    CHECK(batches[2].X.rows() == 2);

    std::multiset<Index> seen;
    for (const auto& b : batches) {
        for (std::size_t i = 0; i < b.rows.size(); ++i) {
            seen.insert(b.rows[i]);
            CHECK(b.X.row(static_cast<Index>(i)) == ds.X.row(b.rows[i]));
            CHECK(b.y[i] == ds.y[static_cast<std::size_t>(b.rows[i])]);
        }
    }
    CHECK(seen.size() == 10);
    CHECK(std::set<Index>(seen.begin(), seen.end()).size() == 10);

    SeededRng one(1);
    const auto whole = make_batches(ds, 25, one);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].X.rows() == 10);

    SeededRng a(77), b(77);
    CHECK(make_batches(ds, 3, a)[0].rows == make_batches(ds, 3, b)[0].rows);
    CHECK_THROWS_AS(make_batches(ds, 0, a), ContractError);
}

TEST_CASE("class_stats") {
    Dataset ds;
    ds.class_names = {"a", "b"};
    ds.y = {0, 0, 1};
    auto s = class_stats(ds);
    CHECK(s.counts == std::vector<Index>{2, 1});
    CHECK(s.majority == 2);
    CHECK(s.ratios == std::vector<double>{1.0, 0.5});

    ds.class_names = {"a", "b", "c"};
    ds.y = {0, 1, 2};
    s = class_stats(ds);
    CHECK(s.ratios == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("align_classes and split") {
    auto ds = random_dataset(5, 50, 3, 3);
    const auto aligned = align_classes(ds, {"class 2", "class 0", "class 1"});
    for (std::size_t i = 0; i < ds.y.size(); ++i) {
        CHECK(aligned.class_names[static_cast<std::size_t>(aligned.y[i])] == ds.class_names[static_cast<std::size_t>(ds.y[i])]);
    }
    CHECK_THROWS_AS(align_classes(ds, {"class 0", "class 1", "other"}), ContractError);

    const auto [train, test] = split(ds, 0.2, 9);
    CHECK(test.rows() == 10);
    CHECK(train.rows() == 40);
}
