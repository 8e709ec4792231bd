#include "frlab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace frlab {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("csv: ragged row in " + path);
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            cells.push_back(line.substr(
                start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(),
                                       v, std::chars_format::general);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
                std::ostringstream msg;
                msg << path << ":" << line_no << ": bad number '" << cell << "'";
                throw std::runtime_error(msg.str());
            }
            row.push_back(v);
        }
        if (row.size() != table.header.size()) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": expected "
                << table.header.size() << " fields, got " << row.size();
            throw std::runtime_error(msg.str());
        }
        table.rows.push_back(std::move(row));
    }
    if (first) throw std::runtime_error(path + ": missing header row");
    return table;
}

}  // namespace frlab
