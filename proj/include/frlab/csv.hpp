#pragma once

#include <string>
#include <vector>

namespace frlab {

// 17 significant digits, '.' decimal point regardless of locale
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Comma-separated, header row, LF endings. Writes are atomic: the content
// lands in a temp file that is renamed over the target.
void write_csv(const std::string& path, const CsvTable& table);

CsvTable read_csv(const std::string& path);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace frlab
