#include "f2gan/data/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "f2gan/errors.hpp"

namespace f2gan {
namespace {

// Splits one record. Quoted fields ("a,b", "say ""hi""") are accepted so
// arbitrary label strings survive a round trip.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return in;
}

std::vector<std::string> read_header(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    if (!read_line(in, line) || line.empty()) {
        throw ParseError("'" + path.string() + "': empty file (row 1)");
    }
    auto header = split_record(line);
    // Tolerate a UTF-8 byte-order mark.
    if (header[0].starts_with("\xEF\xBB\xBF")) {
        header[0].erase(0, 3);
    }
    return header;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

FeatureSchema infer_schema(const std::filesystem::path& path,
                           const std::optional<std::string>& label_column) {
    auto in = open_input(path);
    const auto header = read_header(in, path);
    FeatureSchema schema;
    schema.label_column = label_column.value_or(header.back());
    bool found = false;
    for (const auto& name : header) {
        if (name == schema.label_column) {
            found = true;
        } else {
            schema.feature_names.push_back(name);
        }
    }
    if (!found) {
        throw ParseError("'" + path.string() + "': row 1: missing label column \"" +
                         schema.label_column + "\"");
    }
    schema.validate();
    return schema;
}

Dataset load_csv(const std::filesystem::path& path) {
    return load_csv(path, infer_schema(path));
}

Dataset load_csv(const std::filesystem::path& path, const FeatureSchema& schema) {
    schema.validate();
    auto in = open_input(path);
    const auto header = read_header(in, path);
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) {
        position.emplace(header[i], i);
    }
    auto column_of = [&](const std::string& name) {
        const auto it = position.find(name);
        if (it == position.end()) {
            throw ParseError("'" + path.string() + "': row 1: missing column \"" + name + "\"");
        }
        return it->second;
    };
    std::vector<std::size_t> feature_col;
    for (const auto& name : schema.feature_names) {
        feature_col.push_back(column_of(name));
    }
    const std::size_t label_col = column_of(schema.label_column);

    Dataset ds;
    ds.schema = schema;
    std::unordered_map<std::string, int> label_index;
    std::vector<double> values;
    const auto d = feature_col.size();
    std::string line;
    std::size_t row = 1;
    while (read_line(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_record(line);
        if (fields.size() != header.size()) {
            throw ParseError("'" + path.string() + "': row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " fields, found " +
                             std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < d; ++j) {
            const std::string& cell = fields[feature_col[j]];
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') {
                ++first;
            }
            const auto res = std::from_chars(first, last, v);
            if (cell.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
                throw ParseError("'" + path.string() + "': row " + std::to_string(row) +
                                 ", column \"" + schema.feature_names[j] +
                                 "\": not a finite number: '" + cell + "'");
            }
            values.push_back(v);
        }
        const std::string& label = fields[label_col];
        auto [it, inserted] = label_index.emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted) {
            ds.class_names.push_back(label);
        }
        ds.y.push_back(it->second);
    }
    if (ds.y.empty()) {
        throw ParseError("'" + path.string() + "': no data rows");
    }
    const auto n = static_cast<Index>(ds.y.size());
    ds.X = Eigen::Map<const Matrix>(values.data(), n, static_cast<Index>(d));
    return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    std::string buffer;
    for (const auto& name : ds.schema.feature_names) {
        buffer += quote_if_needed(name);
        buffer += ',';
    }
    buffer += quote_if_needed(ds.schema.label_column);
    buffer += '\n';
    for (Index i = 0; i < ds.rows(); ++i) {
        for (Index j = 0; j < ds.dimension(); ++j) {
            buffer += format_double(ds.X(i, j));
            buffer += ',';
        }
        buffer += quote_if_needed(ds.class_names[static_cast<std::size_t>(ds.y[static_cast<std::size_t>(i)])]);
        buffer += '\n';
    }
    out << buffer;
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

} // namespace f2gan
