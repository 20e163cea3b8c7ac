#pragma once
// Shared tokenizer for the line-oriented config dialects (culture packs,
// scenario scripts, advisor inputs).  Numbers are fixed-point with two
// decimals, carried as integer hundredths.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "facework/errors.hpp"

namespace facework::detail {

using facework::ParseError;
using facework::SourceLoc;

enum class TokKind { ident, number, string, punct, newline, eof };

struct Token {
  TokKind kind = TokKind::eof;
  std::string text;          // ident text, punct text ("=", "->", ".."), raw
  std::string str;           // decoded string literal
  long long hundredths = 0;  // numeric value * 100
  bool had_decimal = false;
  SourceLoc loc;
};

std::vector<Token> tokenize(const std::string& text);

// Cursor over a token stream with the usual expect/accept helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == TokKind::eof; }

  bool accept_punct(const std::string& p);
  bool accept_ident(const std::string& word);
  void skip_newlines();
  // at least one newline (or eof) must follow a statement
  void expect_end_of_line();

  std::string expect_ident(const std::string& what);
  std::string expect_string(const std::string& what);
  void expect_punct(const std::string& p);
  long long expect_hundredths(const std::string& what);  // number * 100
  long long expect_int(const std::string& what);         // whole number only

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

std::string escape_string(const std::string& s);   // adds quotes
std::string format_hundredths(long long v);        // 150 -> "1.50", 700 -> "7"

}  // namespace facework::detail
