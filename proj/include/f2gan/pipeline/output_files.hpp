#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace f2gan {

/// All-or-nothing set of output files. Each file is written to a temporary
/// sibling; commit() renames them into place. Destroying an uncommitted
/// transaction removes every temporary, and commit() failing midway removes
/// the files it had already moved.
class OutputTransaction {
public:
    explicit OutputTransaction(std::filesystem::path dir);
    ~OutputTransaction();

    OutputTransaction(const OutputTransaction&) = delete;
    OutputTransaction& operator=(const OutputTransaction&) = delete;

    const std::filesystem::path& dir() const { return dir_; }

    /// Temporary path to write `name` to.
    std::filesystem::path stage(const std::string& name);

    void write_text(const std::string& name, const std::string& contents);

    void commit();

private:
    struct Entry {
        std::filesystem::path temp;
        std::filesystem::path final;
    };
    std::filesystem::path dir_;
    std::vector<Entry> entries_;
    bool committed_ = false;
};

} // namespace f2gan
