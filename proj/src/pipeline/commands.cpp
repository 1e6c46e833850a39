#include "f2gan/pipeline/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "f2gan/data/csv.hpp"
#include "f2gan/errors.hpp"
#include "f2gan/genmodels/model_io.hpp"
#include "f2gan/genmodels/train.hpp"
#include "f2gan/pipeline/output_files.hpp"
#include "f2gan/tstr/tstr.hpp"

namespace f2gan {
namespace {

std::string dump(const nlohmann::json& j) { return j.dump(1) + "\n"; }

void echo_config(OutputTransaction& tx, const std::string& command, const RunConfig& config) {
    tx.write_text(command + "_config.json", dump(to_json(config)));
}

nlohmann::json manifest_entry(const std::string& file, const std::string& kind, const Dataset& ds,
                              std::uint64_t seed) {
    nlohmann::json counts = nlohmann::json::object();
    const auto st = class_stats(ds);
    for (std::size_t c = 0; c < ds.class_names.size(); ++c) counts[ds.class_names[c]] = st.counts[c];
    return {{"file", file},    {"kind", kind},          {"rows", ds.rows()},
            {"columns", ds.dimension() + 1}, {"seed", seed}, {"class_counts", counts}};
}

std::string format_log(const TrainingLog& log) {
    std::string s = "epoch,L_D,L_adv,L_MV,L_corr,L_G\n";
    for (const auto& e : log) {
        s += std::to_string(e.epoch) + "," + format_double(e.loss_d) + "," + format_double(e.loss_adv) + "," +
             format_double(e.loss_mv) + "," + format_double(e.loss_corr) + "," + format_double(e.loss_g) + "\n";
    }
    return s;
}

std::string safe_name(const std::string& s) {
    std::string out;
    for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' ? ch : '_';
    return out;
}

} // namespace

void cmd_fixture(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
    OutputTransaction tx(out_dir);
    nlohmann::json files = nlohmann::json::array();
    auto emit = [&](const std::optional<ScenarioConfig>& sc, const std::string& kind) {
        if (!sc) return;
        const Dataset ds = generate_scenario(*sc);
        write_csv(ds, tx.stage(kind + ".csv"));
        files.push_back(manifest_entry(kind + ".csv", kind, ds, sc->seed));
        out << kind << ".csv: " << ds.rows() << " rows, " << ds.dimension() << " features, "
            << ds.class_count() << " classes\n";

        const auto holdout_rows =
            static_cast<Index>(std::llround(config.scenario.holdout_fraction * static_cast<double>(sc->samples_total)));
        if (holdout_rows > 0) {
            ScenarioConfig hc = *sc;
            hc.samples_total = holdout_rows;
            hc.imbalance.reset();
            hc.seed = stage_seed(config.seed, "fixture." + kind + "_holdout");
            const Dataset hd = generate_scenario(hc);
            write_csv(hd, tx.stage(kind + "_holdout.csv"));
            files.push_back(manifest_entry(kind + "_holdout.csv", kind + "_holdout", hd, hc.seed));
            out << kind << "_holdout.csv: " << hd.rows() << " rows\n";
        }
    };
    emit(config.scenario.external, "external");
    emit(config.scenario.internal, "internal");
    if (files.empty()) {
        throw ConfigError("fixture: both scenario.external and scenario.internal are null");
    }
    tx.write_text("manifest.json", dump({{"seed", config.seed}, {"files", files}}));
    echo_config(tx, "fixture", config);
    tx.commit();
}

void cmd_train(const RunConfig& config, const fs::path& data, const fs::path& out_dir, std::ostream& out) {
    const Dataset raw = load_csv(data);
    OutputTransaction tx(out_dir);
    TrainOptions opts;
    const Index T = config.gan.epochs;
    opts.on_epoch = [&](const EpochLosses& e) {
        if (T <= 20 || e.epoch % (T / 10) == 0 || e.epoch == T) {
            out << "epoch " << e.epoch << "/" << T << "  L_D " << format_double(e.loss_d) << "  L_G "
                << format_double(e.loss_g) << "\n"
                << std::flush;
        }
    };
    const TrainedGan model = train(raw, config.gan, opts);
    save_model(model, tx.stage("model.json"));
    tx.write_text("train_log.csv", format_log(model.log));
    echo_config(tx, "train", config);
    tx.commit();
    out << "trained " << to_string(model.config.variant) << " on " << raw.rows() << " rows, " << T << " epochs\n";
}

void cmd_synth(const RunConfig& config, const fs::path& model_path, Index per_class, const fs::path& out_dir,
               std::ostream& out) {
    if (per_class < 1) {
        throw ConfigError("synth: --per-class must be >= 1");
    }
    const TrainedGan model = load_model(model_path);
    OutputTransaction tx(out_dir);
    const Dataset ds = synthesize_balanced(model, per_class, stage_seed(config.seed, "synth"));
    write_csv(ds, tx.stage("synthetic.csv"));
    echo_config(tx, "synth", config);
    tx.commit();
    out << "synthetic.csv: " << ds.rows() << " rows (" << per_class << " per class, " << ds.class_count()
        << " classes)\n";
}

std::string render_fidelity_table(const std::vector<std::pair<std::string, FidelityReport>>& rows) {
    std::ostringstream s;
    char line[200];
    std::snprintf(line, sizeof line, "%-20s %14s %12s %10s %14s\n", "model", "wasserstein", "mmd", "ks", "delta_stat");
    s << line;
    for (const auto& [name, r] : rows) {
        std::snprintf(line, sizeof line, "%-20s %14.4f %12.6f %10.4f %14.4f\n", name.c_str(), r.avg_wasserstein, r.mmd,
                      r.avg_ks, r.delta_stat);
        s << line;
    }
    return s.str();
}

void cmd_eval(const RunConfig& config, const fs::path& real_path, const std::vector<NamedPath>& synths,
              const fs::path& out_dir, std::ostream& out) {
    if (synths.empty()) {
        throw ConfigError("eval: at least one --synth file is required");
    }
    const Dataset real = load_csv(real_path);
    OutputTransaction tx(out_dir);
    std::vector<std::pair<std::string, FidelityReport>> rows;
    for (const auto& s : synths) {
        const Dataset synth = load_csv(s.path, real.schema);
        FidelityOptions opts;
        opts.mmd_sigma = config.fidelity.mmd_sigma;
        const auto report = evaluate_fidelity(real, synth, opts);
        const auto hist = export_histograms(real, synth, config.fidelity.bins);
        const std::string suffix = synths.size() == 1 ? "" : "_" + safe_name(s.name);
        tx.write_text("fidelity" + suffix + ".json", dump(to_json(report)));
        tx.write_text("histograms" + suffix + ".json", dump(to_json(hist)));
        rows.emplace_back(s.name, report);
    }
    echo_config(tx, "eval", config);
    tx.commit();
    out << render_fidelity_table(rows);
}

void cmd_tstr(const RunConfig& config, const fs::path& synth_path, const fs::path& real_path,
              const fs::path& out_dir, std::ostream& out) {
    const Dataset real = load_csv(real_path);
    const Dataset synth = load_csv(synth_path, real.schema);
    OutputTransaction tx(out_dir);
    const auto report = run_tstr(synth, real, config.tstr.classifiers, config.tstr.params,
                                 stage_seed(config.seed, "tstr"));
    tx.write_text("tstr.json", dump(to_json(report)));
    echo_config(tx, "tstr", config);
    tx.commit();
    out << render_tstr_table(report, "TSTR  train: " + synth_path.filename().string() +
                                         "  test: " + real_path.filename().string());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"F2GAN tabular fault-data synthesis and evaluation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    auto shared = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration JSON")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides paths.out_dir)");
        sub->add_option("--seed", seed, "top-level seed (overrides the config)");
    };

    auto* fixture = app.add_subcommand("fixture", "generate surrogate fault datasets");
    shared(fixture);

    std::string data;
    std::optional<std::string> variant;
    std::optional<Index> epochs;
    auto* trainc = app.add_subcommand("train", "train a generative model on a dataset CSV");
    shared(trainc);
    trainc->add_option("--data", data, "training CSV")->required()->check(CLI::ExistingFile);
    trainc->add_option("--variant", variant, "override gan.variant (f2gan, cgan, wgan_gp)");
    trainc->add_option("--epochs", epochs, "override gan.epochs");

    std::string model;
    Index per_class = 200;
    auto* synth = app.add_subcommand("synth", "balanced synthesis from a trained model");
    shared(synth);
    synth->add_option("--model", model, "model JSON")->required();
    synth->add_option("--per-class", per_class, "rows per class")->capture_default_str();

    std::string real;
    std::vector<std::string> synth_files;
    auto* eval = app.add_subcommand("eval", "distributional fidelity of synthetic against real data");
    shared(eval);
    eval->add_option("--real", real, "real dataset CSV")->required()->check(CLI::ExistingFile);
    eval->add_option("--synth", synth_files, "synthetic CSV, optionally NAME=PATH; repeatable")->required();

    std::string synth_train;
    std::string real_test;
    auto* tstr = app.add_subcommand("tstr", "train classifiers on synthetic data, test on real data");
    shared(tstr);
    tstr->add_option("--synth", synth_train, "synthetic training CSV")->required()->check(CLI::ExistingFile);
    tstr->add_option("--real-test", real_test, "real test CSV")->required()->check(CLI::ExistingFile);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = config_path.empty() ? default_run_config() : load_run_config(config_path);
        if (seed) config.apply_seed(*seed);
        if (!out_dir.empty()) config.out_dir = out_dir;

        if (fixture->parsed()) {
            cmd_fixture(config, config.out_dir, out);
        } else if (trainc->parsed()) {
            if (variant || epochs) {
                nlohmann::json g = to_json(config.gan);
                if (variant && gan_variant_from_string(*variant) != config.gan.variant) {
                    // Switching variant resets the variant-specific defaults.
                    const GanConfig base = default_gan_config(gan_variant_from_string(*variant));
                    g["variant"] = *variant;
                    g["lambda_mv"] = base.lambda_mv;
                    g["lambda_corr"] = base.lambda_corr;
                }
                if (epochs) g["epochs"] = *epochs;
                config.gan = gan_config_from_json(g);
            }
            cmd_train(config, data, config.out_dir, out);
        } else if (synth->parsed()) {
            cmd_synth(config, model, per_class, config.out_dir, out);
        } else if (eval->parsed()) {
            std::vector<NamedPath> named;
            for (const auto& s : synth_files) {
                const auto eq = s.find('=');
                if (eq == std::string::npos) {
                    named.push_back({fs::path(s).stem().string(), s});
                } else {
                    named.push_back({s.substr(0, eq), s.substr(eq + 1)});
                }
            }
            cmd_eval(config, real, named, config.out_dir, out);
        } else if (tstr->parsed()) {
            cmd_tstr(config, synth_train, real_test, config.out_dir, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace f2gan
