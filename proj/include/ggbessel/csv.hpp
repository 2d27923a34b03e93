#ifndef GGBESSEL_CSV_HPP
#define GGBESSEL_CSV_HPP

#include <string>
#include <vector>

#include "ggbessel/inference.hpp"

namespace ggb::csv {

/// Column selector: a header name, or a 0-based index when the text parses as
/// an integer and no header matches. Header name wins on ambiguity.
struct IngestResult {
    infer::Dataset dataset;
    std::vector<std::string> diagnostics;  // one row-numbered line per rejected row
};

/// Reads a comma-delimited UTF-8 file. Rows whose selected field is empty or
/// non-numeric are rejected with a row-numbered diagnostic; throws DataError
/// on a missing file or when no usable rows remain.
IngestResult ingest_csv(const std::string& path, const std::string& column, bool skip_header);

}  // namespace ggb::csv

#endif
