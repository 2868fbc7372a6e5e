#pragma once

#include <stdexcept>
#include <string>

namespace spanparse {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (treebank text, tagged sentences, model files).
struct DataError : Error {
  explicit DataError(const std::string& msg) : Error(msg) {}
};

/// Treebank text that cannot be parsed; carries line/column of the offense.
struct TreeParseError : DataError {
  TreeParseError(const std::string& msg, int line, int column)
      : DataError(msg + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Non-finite loss or activations during training.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

}  // namespace spanparse
