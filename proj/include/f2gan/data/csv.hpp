#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "f2gan/data/dataset.hpp"

namespace f2gan {

/// Read a dataset. Every schema name must be present in the header; other
/// columns are ignored. Labels are encoded in first-appearance order.
Dataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema);

/// Schema from a file's header: `label_column` (default: the last column) is
/// the label, every other column a feature, in header order.
FeatureSchema infer_schema(const std::filesystem::path& path,
                           const std::optional<std::string>& label_column = std::nullopt);

/// Convenience: infer_schema + load_csv.
Dataset load_csv(const std::filesystem::path& path);

/// Header = feature names, then the label column. Numbers use the shortest
/// representation that reads back to the identical double.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

std::string format_double(double v);

} // namespace f2gan
