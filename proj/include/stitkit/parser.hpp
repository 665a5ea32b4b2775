#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stitkit/formula.hpp"

namespace stitkit {

// Syntax error with the byte offset of the offending token and the set of
// token spellings that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Grammar (ASCII):
//   binary, increasing precedence: "<->", "->", "|", "&"; "->" and "<->"
//   associate to the right, "|" and "&" to the left
//   unary (binds tightest): "~" f | "box" f | "dia" f | "[" AGENT "]" f |
//     "[E:" AGENT "]" f | "<E:" AGENT ">" f | "[stit:" AGENT "]" f |
//     "<stit:" AGENT ">" f
//   literals "true"/"false"; atoms and agents are identifiers
Formula parse(const std::string& text);

}  // namespace stitkit
