#include "spanparse/token.hpp"

#include <sstream>

#include "spanparse/error.hpp"

namespace spanparse {

std::vector<Token> parse_tagged_line(const std::string& line, int line_no) {
  std::vector<Token> tokens;
  std::istringstream in(line);
  std::string item;
  while (in >> item) {
    std::size_t cut = item.rfind('_');
    if (cut == std::string::npos || cut == 0 || cut + 1 == item.size())
      throw DataError("line " + std::to_string(line_no) +
                      ": token '" + item + "' is not of the form word_TAG");
    tokens.push_back(Token{item.substr(0, cut), item.substr(cut + 1), {}});
  }
  return tokens;
}

}  // namespace spanparse
