#include "f2gan/genmodels/model_io.hpp"

#include <fstream>
#include <sstream>

#include "f2gan/errors.hpp"

namespace f2gan {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Vector vector_from_json(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Matrix matrix_from_json(const json& j, Index rows, Index cols) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
        throw LoadError("weight matrix: expected " + std::to_string(rows) + " rows");
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto row = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
        if (static_cast<Index>(row.size()) != cols) {
            throw LoadError("weight matrix: row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        }
        for (Index c = 0; c < cols; ++c) {
            m(i, c) = row[static_cast<std::size_t>(c)];
        }
    }
    return m;
}

json network_to_json(const MlpSpec& spec, const MlpParams<double>& params) {
    json layers = json::array();
    for (const auto& l : params.layers) {
        layers.push_back({{"w", matrix_to_json(l.weight)}, {"b", vector_to_json(l.bias)}});
    }
    return {{"layer_sizes", spec.layer_sizes},
            {"leaky_slope", spec.leaky_slope},
            {"output", to_string(spec.output)},
            {"layers", std::move(layers)}};
}

void network_from_json(const json& j, MlpSpec& spec, MlpParams<double>& params) {
    spec.layer_sizes = j.at("layer_sizes").get<std::vector<Index>>();
    spec.leaky_slope = j.at("leaky_slope").get<double>();
    spec.output = output_activation_from_string(j.at("output").get<std::string>());
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw LoadError(e.what());
    }
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != spec.layer_count()) {
        throw LoadError("network: layer count does not match layer_sizes");
    }
    params.layers.clear();
    for (std::size_t k = 0; k < spec.layer_count(); ++k) {
        const Index in = spec.layer_sizes[k];
        const Index out = spec.layer_sizes[k + 1];
        DenseLayer<double> l;
        l.weight = matrix_from_json(layers.at(k).at("w"), out, in);
        l.bias = vector_from_json(layers.at(k).at("b"));
        if (l.bias.size() != out) {
            throw LoadError("network: bias of layer " + std::to_string(k) + " has wrong length");
        }
        if (!l.weight.allFinite() || !l.bias.allFinite()) {
            throw LoadError("network: non-finite parameter in layer " + std::to_string(k));
        }
        params.layers.push_back(std::move(l));
    }
}

} // namespace

json to_json(const TrainedGan& model) {
    json log = json::array();
    for (const auto& e : model.log) {
        log.push_back({{"epoch", e.epoch},
                       {"L_D", e.loss_d},
                       {"L_adv", e.loss_adv},
                       {"L_MV", e.loss_mv},
                       {"L_corr", e.loss_corr},
                       {"L_G", e.loss_g}});
    }
    json generator = network_to_json(model.generator.spec, model.generator.params);
    generator["latent_dim"] = model.generator.latent_dim;
    return {
        {"format_version", kModelFormatVersion},
        {"config", to_json(model.config)},
        {"schema", {{"feature_names", model.schema.feature_names}, {"label_column", model.schema.label_column}}},
        {"class_names", model.class_names},
        {"scaler", {{"min", vector_to_json(model.scaler.min)}, {"max", vector_to_json(model.scaler.max)}}},
        {"generator", std::move(generator)},
        {"discriminator", network_to_json(model.discriminator.spec, model.discriminator.params)},
        {"log", std::move(log)},
    };
}

TrainedGan trained_gan_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("format_version")) {
            throw LoadError("model: missing format_version");
        }
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw LoadError("model: format_version " + std::to_string(version) + " is not supported (expected " +
                            std::to_string(kModelFormatVersion) + ")");
        }
        TrainedGan m;
        try {
            m.config = gan_config_from_json(j.at("config"));
        } catch (const ConfigError& e) {
            throw LoadError(std::string("model config: ") + e.what());
        }
        m.schema.feature_names = j.at("schema").at("feature_names").get<std::vector<std::string>>();
        m.schema.label_column = j.at("schema").at("label_column").get<std::string>();
        m.class_names = j.at("class_names").get<std::vector<std::string>>();
        m.scaler.min = vector_from_json(j.at("scaler").at("min"));
        m.scaler.max = vector_from_json(j.at("scaler").at("max"));

        const int classes = static_cast<int>(m.class_names.size());
        const Index d = m.schema.dimension();
        if (classes < 1 || m.scaler.min.size() != d || m.scaler.max.size() != d) {
            throw LoadError("model: scaler/schema/class dimensions disagree");
        }

        const auto& g = j.at("generator");
        network_from_json(g, m.generator.spec, m.generator.params);
        m.generator.latent_dim = g.at("latent_dim").get<Index>();
        m.generator.classes = classes;
        if (m.generator.spec.input_size() != m.generator.latent_dim + classes ||
            m.generator.spec.output_size() != d) {
            throw LoadError("model: generator shape does not match schema");
        }
        network_from_json(j.at("discriminator"), m.discriminator.spec, m.discriminator.params);
        m.discriminator.classes = classes;
        if (m.discriminator.spec.input_size() != d + classes || m.discriminator.spec.output_size() != 1) {
            throw LoadError("model: discriminator shape does not match schema");
        }

        for (const auto& e : j.at("log")) {
            m.log.push_back({e.at("epoch").get<Index>(), e.at("L_D").get<double>(), e.at("L_adv").get<double>(),
                             e.at("L_MV").get<double>(), e.at("L_corr").get<double>(), e.at("L_G").get<double>()});
        }
        return m;
    } catch (const json::exception& e) {
        throw LoadError(std::string("model: malformed document: ") + e.what());
    }
}

std::string dump_model(const TrainedGan& model) {
    return to_json(model).dump(1) + "\n";
}

void save_model(const TrainedGan& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write model to '" + path.string() + "'");
    }
    out << dump_model(model);
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

TrainedGan load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LoadError("cannot open model '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw LoadError("model '" + path.string() + "' is truncated or not JSON: " + e.what());
    }
    return trained_gan_from_json(j);
}

} // namespace f2gan
