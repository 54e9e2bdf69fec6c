#ifndef SQCAT_INTERCHANGE_HPP
#define SQCAT_INTERCHANGE_HPP

#include <optional>
#include <string>

#include "sqcat/double.hpp"

namespace sqcat::io {

/// Raised on schema violations; `path` points at the offending field.
struct ParseError : std::runtime_error {
    std::string path;
    ParseError(std::string p, const std::string& msg)
        : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

struct Document {
    dbl::SquaresCat cat;
    std::optional<dbl::CompletionData> completions;
};

/// Parses the JSON interchange format. Unknown keys are rejected; all
/// references must resolve.
Document parse_squares_cat(const std::string& json_text);
Document load_squares_cat(const std::string& path);

std::string write_squares_cat(const dbl::SquaresCat& d, const dbl::CompletionData* comp);

}  // namespace sqcat::io

#endif
