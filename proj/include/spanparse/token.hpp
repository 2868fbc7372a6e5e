#pragma once

#include <string>
#include <vector>

namespace spanparse {

/// A terminal: surface form plus part-of-speech tag. Extra categorical
/// features (e.g. morphology columns) are optional and ordered.
struct Token {
  std::string word;
  std::string tag;
  std::vector<std::string> extras;

  bool operator==(const Token& o) const {
    return word == o.word && tag == o.tag && extras == o.extras;
  }
};

/// Parses one "word_TAG word_TAG ..." line. The last underscore splits,
/// so words may themselves contain underscores.
/// Throws DataError naming the 1-based line number on malformed tokens.
std::vector<Token> parse_tagged_line(const std::string& line, int line_no);

}  // namespace spanparse
