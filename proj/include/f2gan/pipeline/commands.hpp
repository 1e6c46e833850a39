#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "f2gan/fidelity/report.hpp"
#include "f2gan/pipeline/run_config.hpp"

namespace f2gan {

namespace fs = std::filesystem;

// Each command writes its outputs all-or-nothing (see OutputTransaction) and
// echoes its effective configuration as <command>_config.json.

/// external.csv / internal.csv, their independently drawn *_holdout.csv
/// files and manifest.json.
void cmd_fixture(const RunConfig& config, const fs::path& out_dir, std::ostream& out);

/// model.json and train_log.csv.
void cmd_train(const RunConfig& config, const fs::path& data, const fs::path& out_dir, std::ostream& out);

/// synthetic.csv with `per_class` rows per class.
void cmd_synth(const RunConfig& config, const fs::path& model, Index per_class, const fs::path& out_dir,
               std::ostream& out);

struct NamedPath {
    std::string name;
    fs::path path;
};

/// fidelity.json and histograms.json, or fidelity_<name>.json and
/// histograms_<name>.json when several synthetic sets are compared. Prints
/// one table row per synthetic set.
void cmd_eval(const RunConfig& config, const fs::path& real, const std::vector<NamedPath>& synths,
              const fs::path& out_dir, std::ostream& out);

/// tstr.json; prints the per-classifier table.
void cmd_tstr(const RunConfig& config, const fs::path& synth, const fs::path& real_test, const fs::path& out_dir,
              std::ostream& out);

std::string render_fidelity_table(const std::vector<std::pair<std::string, FidelityReport>>& rows);

/// Full command line (args[0] is the program name). Returns the exit code:
/// 0 on success, 1 on a runtime failure, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace f2gan
