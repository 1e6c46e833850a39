#pragma once

#include <filesystem>

#include "json.hpp"

#include "f2gan/genmodels/networks.hpp"

namespace f2gan {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json to_json(const TrainedGan& model);

/// Throws LoadError on version mismatch or any missing/malformed field.
TrainedGan trained_gan_from_json(const nlohmann::json& j);

/// Canonical serialization: sorted keys, shortest round-trip numbers, so
/// save -> load -> save reproduces the file byte for byte.
std::string dump_model(const TrainedGan& model);

void save_model(const TrainedGan& model, const std::filesystem::path& path);
TrainedGan load_model(const std::filesystem::path& path);

} // namespace f2gan
