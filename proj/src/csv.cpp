#include "ggbessel/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ggb::csv {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

IngestResult ingest_csv(const std::string& path, const std::string& column, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw DataError("file not found: " + path);

    std::string line;
    std::size_t row = 0;
    long col_index = -1;
    bool header_consumed = false;

    // Resolve the column: header name first, 0-based index as fallback.
    if (skip_header) {
        if (std::getline(in, line)) {
            ++row;
            header_consumed = true;
            const auto header = split_fields(line);
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == column) {
                    col_index = long(i);
                    break;
                }
        }
    }
    if (col_index < 0) {
        try {
            std::size_t pos = 0;
            const long idx = std::stol(column, &pos);
            if (pos == column.size() && idx >= 0) col_index = idx;
        } catch (const std::exception&) {
        }
    }
    if (col_index < 0)
        throw DataError("column '" + column + "' not found in header and not a valid index");
    if (!header_consumed && skip_header) {
        // header line was unreadable; nothing to skip
    }

    std::vector<double> values;
    std::vector<std::string> diagnostics;
    while (std::getline(in, line)) {
        ++row;
        const auto fields = split_fields(line);
        if (std::size_t(col_index) >= fields.size()) {
            diagnostics.push_back("row " + std::to_string(row) + ": missing column " +
                                  std::to_string(col_index) + " in '" + line + "'");
            continue;
        }
        double v = 0.0;
        if (!parse_real(fields[col_index], v)) {
            diagnostics.push_back("row " + std::to_string(row) + ": non-numeric field '" +
                                  fields[col_index] + "'");
            continue;
        }
        values.push_back(v);
    }
    if (values.empty()) throw DataError("no usable rows in " + path);

    auto ds = infer::Dataset::from_values(std::move(values),
                                          path + ":" + column + " (" + std::to_string(row) + " rows read)");
    return IngestResult{std::move(ds), std::move(diagnostics)};
}

}  // namespace ggb::csv
