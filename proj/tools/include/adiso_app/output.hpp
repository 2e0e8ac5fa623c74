#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace adiso::app {

/// Scientific notation with 10 significant digits, '.' decimal.
std::string format_number(double v);

class CsvTable {
public:
    using Cell = std::variant<double, std::string>;

    explicit CsvTable(std::vector<std::string> columns);

    void add(std::initializer_list<Cell> cells);
    void add(const std::vector<Cell>& cells);
    std::string str() const;

private:
    std::size_t width_;
    std::string text_;
};

/// Files written during one command. Each file is written to a temporary
/// name and renamed into place; unless commit() is called, the destructor
/// removes everything written so far.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path dir);
    ~OutputDir();
    OutputDir(const OutputDir&) = delete;
    OutputDir& operator=(const OutputDir&) = delete;

    std::filesystem::path write(const std::string& name, const std::string& content);
    void commit() { committed_ = true; }
    const std::vector<std::filesystem::path>& written() const { return written_; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

} // namespace adiso::app
