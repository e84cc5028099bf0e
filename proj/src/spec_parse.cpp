#include "gorbit/spec_parse.hpp"

#include <charconv>
#include <numeric>
#include <optional>
#include <string>

#include "gorbit/error.hpp"

namespace gorbit {

namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line, column = 1, ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++column, ++i;
    } else {
      const std::size_t start = i;
      const int start_col = column;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' && text[i] != '\n') ++i, ++column;
      out.push_back({text.substr(start, i - start), line, start_col});
    }
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

SpaceSpec parse_spec(std::string_view text) {
  SpaceSpec spec;
  std::optional<Token> family_tok, n_tok, blocks_tok;
  for (const Token& tok : tokenize(text)) {
    const std::size_t eq = tok.text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected key=value, got '" + std::string(tok.text) + "'", tok.line, tok.column);
    }
    const std::string_view key = tok.text.substr(0, eq);
    const std::string_view value = tok.text.substr(eq + 1);
    const int value_col = tok.column + static_cast<int>(eq) + 1;
    if (key == "family") {
      try {
        spec.family = family_from_string(value);
      } catch (const InvalidSpec&) {
        throw ParseError("unknown family '" + std::string(value) + "'", tok.line, value_col);
      }
      family_tok = tok;
    } else if (key == "n") {
      const auto n = to_int(value);
      if (!n) throw ParseError("n must be an integer, got '" + std::string(value) + "'", tok.line, value_col);
      spec.n = *n;
      n_tok = tok;
    } else if (key == "blocks") {
      spec.blocks.clear();
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = value.find(',', pos);
        const std::string_view item = value.substr(pos, comma == std::string_view::npos ? value.npos : comma - pos);
        const auto b = to_int(item);
        if (!b) {
          throw ParseError("block must be an integer, got '" + std::string(item) + "'", tok.line,
                           value_col + static_cast<int>(pos));
        }
        if (*b < 1) throw ParseError("block sizes must be >= 1", tok.line, value_col + static_cast<int>(pos));
        spec.blocks.push_back(*b);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      blocks_tok = tok;
    } else if (key == "det_one") {
      if (value == "true" || value == "1") {
        spec.det_one = true;
      } else if (value == "false" || value == "0") {
        spec.det_one = false;
      } else {
        throw ParseError("det_one must be true or false", tok.line, value_col);
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", tok.line, tok.column);
    }
  }
  if (!family_tok) throw ParseError("missing key 'family'", 1, 1);
  if (!n_tok) throw ParseError("missing key 'n'", 1, 1);
  if (!blocks_tok) throw ParseError("missing key 'blocks'", 1, 1);

  const int sum = std::accumulate(spec.blocks.begin(), spec.blocks.end(), 0);
  if (sum > spec.n) {
    throw ParseError("sum of blocks " + std::to_string(sum) + " exceeds n = " + std::to_string(spec.n),
                     blocks_tok->line, blocks_tok->column);
  }
  try {
    validate(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidSpec& e) {
    throw ParseError(e.what(), n_tok->line, n_tok->column);
  }
  return spec;
}

}  // namespace gorbit
