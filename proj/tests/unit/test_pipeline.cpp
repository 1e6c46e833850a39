#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "f2gan/data/csv.hpp"
#include "f2gan/errors.hpp"
#include "f2gan/genmodels/model_io.hpp"
#include "f2gan/pipeline/commands.hpp"
#include "f2gan/pipeline/output_files.hpp"

using namespace f2gan;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "f2gan");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("f2gan_test_pipeline_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& s) const { return path / s; }
};

fs::path write_config(const TempDir& dir, const std::string& name, const std::string& json) {
    const auto p = dir / name;
    std::ofstream(p) << json;
    return p;
}

const char* kSmallGan = R"("gan": {"epochs": 2, "batch_size": 32, "latent_dim": 8, "gen_hidden": [16], "disc_hidden": [16, 8]})";

} // namespace

TEST_CASE("run config") {
    const RunConfig d = default_run_config();
    REQUIRE(d.scenario.external.has_value());
    CHECK(d.scenario.external->samples_total == 6000);
    CHECK(d.scenario.internal->samples_total == 2000);
    CHECK(d.gan.seed == stage_seed(0, "train"));
    CHECK(d.scenario.external->seed == stage_seed(0, "fixture.external"));
    CHECK(d.scenario.external->seed != d.scenario.internal->seed);

    const auto j = to_json(d);
    CHECK(to_json(run_config_from_json(j)) == j);
    CHECK(to_json(run_config_from_json(nlohmann::json::object())) == j);

    const auto c = run_config_from_json(nlohmann::json::parse(R"({"seed": 9, "scenario": {"internal": null},
        "tstr": {"classifiers": ["knn"], "k": 3}, "fidelity": {"bins": 10}, "paths": {"out_dir": "x"}})"));
    CHECK(c.gan.seed == stage_seed(9, "train"));
    CHECK_FALSE(c.scenario.internal.has_value());
    CHECK(c.tstr.classifiers == std::vector<ClassifierKind>{ClassifierKind::knn});
    CHECK(c.tstr.params.k == 3);
    CHECK(c.fidelity.bins == 10);
    CHECK(c.out_dir == "x");

    for (const char* bad : {R"({"sead": 1})", R"({"scenario": {"external": {"foo": 1}}})", R"({"gan": {"epoch": 1}})",
                            R"({"fidelity": {"bins": 1}})", R"({"tstr": {"classifiers": ["svm"]}})",
                            R"({"paths": {"out": "x"}})", R"({"scenario": {"holdout_fraction": 2}})"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(bad)), ConfigError);
    }
}

TEST_CASE("output transaction") {
    TempDir dir("tx");
    {
        OutputTransaction tx(dir.path);
        tx.write_text("a.txt", "a");
        std::ofstream(tx.stage("b.txt")) << "b";
    }
    CHECK(fs::is_empty(dir.path));
    {
        OutputTransaction tx(dir.path);
        tx.write_text("a.txt", "a");
        tx.commit();
    }
    CHECK(slurp(dir / "a.txt") == "a");
    CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator{}) == 1);
}

TEST_CASE("fixture command") {
    TempDir dir("fixture");
    const auto r = cli({"fixture", "--out", (dir / "a").string()});
    REQUIRE(r.code == 0);
    const auto ext = lines(slurp(dir / "a/external.csv"));
    CHECK(ext.size() == 6001);
    CHECK(std::count(ext[0].begin(), ext[0].end(), ',') == 18);
    CHECK(lines(slurp(dir / "a/internal.csv")).size() == 2001);
    CHECK(lines(slurp(dir / "a/external_holdout.csv")).size() == 1201);
    const auto manifest = nlohmann::json::parse(slurp(dir / "a/manifest.json"));
    CHECK(manifest["files"][0]["rows"] == 6000);
    CHECK(manifest["files"][0]["class_counts"]["L12_LG_a"] == 200);
    CHECK(fs::exists(dir / "a/fixture_config.json"));

    REQUIRE(cli({"fixture", "--out", (dir / "b").string()}).code == 0);
    for (const char* f : {"external.csv", "internal.csv", "external_holdout.csv", "manifest.json"}) {
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    REQUIRE(cli({"fixture", "--out", (dir / "c").string(), "--seed", "5"}).code == 0);
    CHECK(slurp(dir / "a/external.csv") != slurp(dir / "c/external.csv"));
}

TEST_CASE("train, synth, eval and tstr commands") {
    TempDir dir("flow");
    const auto cfg = write_config(dir, "cfg.json",
                                  std::string(R"({"seed": 4, "scenario": {"external": {"samples_total": 300}, "internal": null},
        "tstr": {"nn_epochs": 3, "svm_epochs": 3, "k": 1}, )") + kSmallGan + "}");
    REQUIRE(cli({"fixture", "--config", cfg.string(), "--out", (dir / "fx").string()}).code == 0);
    const std::string real = (dir / "fx/external.csv").string();

    SUBCASE("training log and model") {
        REQUIRE(cli({"train", "--config", cfg.string(), "--data", real, "--out", (dir / "m").string()}).code == 0);
        const auto log = lines(slurp(dir / "m/train_log.csv"));
        CHECK(log.size() == 3);
        CHECK(log[0] == "epoch,L_D,L_adv,L_MV,L_corr,L_G");
        CHECK(load_model(dir / "m/model.json").config.epochs == 2);

        REQUIRE(cli({"train", "--config", cfg.string(), "--data", real, "--out", (dir / "z").string(), "--epochs", "0"})
                    .code == 0);
        CHECK(lines(slurp(dir / "z/train_log.csv")).size() == 1);
        CHECK(fs::exists(dir / "z/model.json"));
    }
    SUBCASE("cgan and f2gan with zero feedback write identical models") {
        const auto zero = write_config(dir, "zero.json",
                                       std::string(R"({"seed": 4, "gan": {"variant": "f2gan", "lambda_mv": 0, "lambda_corr": 0,
            "epochs": 2, "batch_size": 32, "latent_dim": 8, "gen_hidden": [16], "disc_hidden": [16, 8]}})"));
        REQUIRE(cli({"train", "--config", zero.string(), "--data", real, "--out", (dir / "f").string()}).code == 0);
        REQUIRE(cli({"train", "--config", cfg.string(), "--variant", "cgan", "--data", real, "--out",
                     (dir / "c").string()})
                    .code == 0);
        CHECK(slurp(dir / "f/model.json") == slurp(dir / "c/model.json"));
    }
    SUBCASE("synthesis, evaluation and tstr") {
        REQUIRE(cli({"train", "--config", cfg.string(), "--data", real, "--out", (dir / "m").string()}).code == 0);
        const std::string model = (dir / "m/model.json").string();
        REQUIRE(cli({"synth", "--config", cfg.string(), "--model", model, "--per-class", "200", "--out",
                     (dir / "s1").string()})
                    .code == 0);
        REQUIRE(cli({"synth", "--config", cfg.string(), "--model", model, "--per-class", "200", "--out",
                     (dir / "s2").string()})
                    .code == 0);
        const auto synth = lines(slurp(dir / "s1/synthetic.csv"));
        CHECK(synth.size() == 6001);
        CHECK(synth[0] == lines(slurp(real))[0]);
        CHECK(slurp(dir / "s1/synthetic.csv") == slurp(dir / "s2/synthetic.csv"));

        const auto self = cli({"eval", "--real", real, "--synth", real, "--out", (dir / "e0").string()});
        REQUIRE(self.code == 0);
        const auto table = lines(self.out);
        REQUIRE(table.size() == 2);
        CHECK(table[1].find("0.0000") != std::string::npos);
        CHECK(nlohmann::json::parse(slurp(dir / "e0/fidelity.json"))["averages"]["wasserstein"] == 0.0);
        CHECK(fs::exists(dir / "e0/histograms.json"));

        const auto two = cli({"eval", "--real", real, "--synth", "gan=" + (dir / "s1/synthetic.csv").string(),
                              "--synth", "self=" + real, "--out", (dir / "e1").string()});
        REQUIRE(two.code == 0);
        CHECK(lines(two.out).size() == 3);
        CHECK(fs::exists(dir / "e1/fidelity_gan.json"));
        CHECK(fs::exists(dir / "e1/histograms_self.json"));

        const auto t = cli({"tstr", "--config", cfg.string(), "--synth", real, "--real-test", real, "--out",
                            (dir / "t").string()});
        REQUIRE(t.code == 0);
        const auto rows = lines(t.out);
        REQUIRE(rows.size() == 7);  // title, header, 4 classifiers, average
        CHECK(rows[3].rfind("knn", 0) == 0);
        CHECK(rows[3].find("1.000") != std::string::npos);
        const auto j = nlohmann::json::parse(slurp(dir / "t/tstr.json"));
        char expect[32];
        std::snprintf(expect, sizeof expect, "%9.3f", j["average"]["accuracy"].get<double>());
        CHECK(rows[6].rfind("average", 0) == 0);
        CHECK(rows[6].find(expect) != std::string::npos);
    }
}

TEST_CASE("failures exit nonzero and leave no partial outputs") {
    TempDir dir("fail");
    const auto bad = write_config(dir, "bad.json", R"({"gan": {"lamda": 1}})");
    auto r = cli({"fixture", "--config", bad.string(), "--out", (dir / "o").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("lamda") != std::string::npos);

    CHECK(cli({"synth", "--model", (dir / "missing.json").string(), "--out", (dir / "o").string()}).code == 1);
    CHECK(cli({"nonsense"}).code == 2);
    CHECK(cli({"train", "--out", (dir / "o").string()}).code == 2);

    // Second synthetic file has a different schema: the first report must not survive.
    const auto cfg = write_config(dir, "cfg.json", R"({"scenario": {"external": {"samples_total": 60}, "internal": {"samples_total": 24}}})");
    REQUIRE(cli({"fixture", "--config", cfg.string(), "--out", (dir / "fx").string()}).code == 0);
    fs::create_directories(dir / "e");
    r = cli({"eval", "--real", (dir / "fx/external.csv").string(), "--synth", "a=" + (dir / "fx/external.csv").string(),
             "--synth", "b=" + (dir / "fx/internal.csv").string(), "--out", (dir / "e").string()});
    CHECK(r.code == 1);
    CHECK(fs::is_empty(dir / "e"));

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{\"format_version\": 1";
    CHECK(cli({"synth", "--model", broken.string(), "--out", (dir / "s").string()}).code == 1);
    CHECK((!fs::exists(dir / "s") || fs::is_empty(dir / "s")));
}
