#include "adiso_app/output.hpp"

#include <fmt/format.h>

#include <fstream>
#include <stdexcept>
#include <system_error>

namespace adiso::app {

namespace fs = std::filesystem;

std::string format_number(double v)
{
    return fmt::format("{:.9e}", v == 0.0 ? 0.0 : v);
}

CsvTable::CsvTable(std::vector<std::string> columns) : width_(columns.size())
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        text_ += (i ? "," : "") + columns[i];
    text_ += '\n';
}

void CsvTable::add(std::initializer_list<Cell> cells)
{
    add(std::vector<Cell>(cells));
}

void CsvTable::add(const std::vector<Cell>& cells)
{
    if (cells.size() != width_)
        throw std::logic_error("csv row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            text_ += ',';
        if (const auto* d = std::get_if<double>(&cells[i]))
            text_ += format_number(*d);
        else
            text_ += std::get<std::string>(cells[i]);
    }
    text_ += '\n';
}

std::string CsvTable::str() const
{
    return text_;
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir))
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
}

OutputDir::~OutputDir()
{
    if (committed_)
        return;
    std::error_code ec;
    for (const auto& p : written_)
        fs::remove(p, ec);
}

fs::path OutputDir::write(const std::string& name, const std::string& content)
{
    const fs::path target = dir_ / name;
    const fs::path tmp = dir_ / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move " + tmp.string() + " into place");
    }
    written_.push_back(target);
    return target;
}

} // namespace adiso::app
