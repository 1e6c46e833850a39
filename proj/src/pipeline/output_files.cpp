#include "f2gan/pipeline/output_files.hpp"

#include <fstream>

#include "f2gan/errors.hpp"

namespace f2gan {

namespace fs = std::filesystem;

OutputTransaction::OutputTransaction(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
        throw Error("cannot create output directory '" + dir_.string() + "'");
    }
}

OutputTransaction::~OutputTransaction() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& e : entries_) fs::remove(e.temp, ec);
}

fs::path OutputTransaction::stage(const std::string& name) {
    Entry e{dir_ / ("." + name + ".partial"), dir_ / name};
    entries_.push_back(e);
    return e.temp;
}

void OutputTransaction::write_text(const std::string& name, const std::string& contents) {
    const auto path = stage(name);
    std::ofstream out(path, std::ios::binary);
    out << contents;
    out.close();
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
}

void OutputTransaction::commit() {
    for (const auto& e : entries_) {
        if (!fs::exists(e.temp)) {
            throw Error("output '" + e.final.string() + "' was staged but never written");
        }
    }
    std::size_t done = 0;
    std::error_code ec;
    for (; done < entries_.size(); ++done) {
        fs::rename(entries_[done].temp, entries_[done].final, ec);
        if (ec) break;
    }
    if (ec) {
        for (std::size_t k = 0; k < done; ++k) fs::remove(entries_[k].final, ec);
        throw Error("cannot move output into '" + entries_[done].final.string() + "'");
    }
    committed_ = true;
}

} // namespace f2gan
