#pragma once

#include <stdexcept>
#include <string>

namespace qstar {

/// Bad or unsupported input: malformed files, non-manifold or non-convex meshes,
/// invalid loops. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A geometric construction failed (search caps, degenerate slicing, a
/// simplicity certificate). Maps to CLI exit code 3.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qstar
