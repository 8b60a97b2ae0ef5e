#pragma once

#include <stdexcept>
#include <string>

namespace qhist {

/// Domain or contract violation on numeric inputs (CLI exit code 3).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax or semantic error in a history-spec document, with a 1-based
/// source position (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Filesystem failure (CLI exit code 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qhist
