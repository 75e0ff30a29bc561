#pragma once

#include <string>
#include <vector>

namespace nexus {

struct CsvRow {
    int line = 0;  // 1-based line in the source file
    std::vector<std::string> fields;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

// Reads a comma-separated file with a mandatory header row. Handles
// double-quoted fields and a leading UTF-8 BOM; rejects ragged rows
// with the offending line number. Throws io_error.
CsvTable read_csv(const std::string& path);

// Joins fields with commas, quoting only when a field contains a comma,
// quote or newline. Rows end with '\n'.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace nexus
