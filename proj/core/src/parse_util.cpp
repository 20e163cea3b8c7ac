#include "parse_util.hpp"

namespace facework::detail {

namespace {
bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }
}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  SourceLoc loc;
  size_t i = 0;
  const size_t n = text.size();

  auto push = [&](Token t) { out.push_back(std::move(t)); };

  while (i < n) {
    char c = text[i];
    if (c == '#') {  // comment to end of line
      while (i < n && text[i] != '\n') ++i, ++loc.col;
      continue;
    }
    if (c == '\n') {
      if (!out.empty() && out.back().kind != TokKind::newline)
        push({TokKind::newline, "\n", "", 0, false, loc});
      ++i;
      ++loc.line;
      loc.col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++loc.col;
      continue;
    }
    SourceLoc start = loc;
    if (ident_start(c)) {
      size_t j = i;
      while (j < n && ident_char(text[j])) ++j;
      Token t{TokKind::ident, text.substr(i, j - i), "", 0, false, start};
      loc.col += static_cast<int>(j - i);
      i = j;
      push(std::move(t));
      continue;
    }
    if (digit(c) || (c == '-' && i + 1 < n && digit(text[i + 1]))) {
      size_t j = i;
      bool neg = false;
      if (text[j] == '-') { neg = true; ++j; }
      long long whole = 0;
      while (j < n && digit(text[j])) whole = whole * 10 + (text[j++] - '0');
      long long frac = 0;
      bool has_frac = false;
      if (j < n && text[j] == '.' && j + 1 < n && digit(text[j + 1])) {
        has_frac = true;
        ++j;
        int places = 0;
        while (j < n && digit(text[j])) {
          if (places < 2) frac = frac * 10 + (text[j] - '0'), ++places;
          else if (text[j] != '0')
            throw ParseError(start, "at most two decimal places");
          ++j;
        }
        if (places == 1) frac *= 10;
      }
      long long v = whole * 100 + frac;
      if (neg) v = -v;
      Token t{TokKind::number, text.substr(i, j - i), "", v, has_frac, start};
      loc.col += static_cast<int>(j - i);
      i = j;
      push(std::move(t));
      continue;
    }
    if (c == '"') {
      std::string s;
      size_t j = i + 1;
      int cols = 1;
      while (j < n && text[j] != '"') {
        if (text[j] == '\n') throw ParseError(start, "closing quote");
        if (text[j] == '\\') {
          if (j + 1 >= n) throw ParseError(start, "escape sequence");
          char e = text[j + 1];
          if (e == '"') s += '"';
          else if (e == '\\') s += '\\';
          else if (e == 'n') s += '\n';
          else if (e == 't') s += '\t';
          else throw ParseError(start, "valid escape (\\\" \\\\ \\n \\t)");
          j += 2;
          cols += 2;
          continue;
        }
        s += text[j++];
        ++cols;
      }
      if (j >= n) throw ParseError(start, "closing quote");
      Token t{TokKind::string, "", s, 0, false, start};
      loc.col += cols + 1;
      i = j + 1;
      push(std::move(t));
      continue;
    }
    // multi-char punctuation first
    if (c == '-' && i + 1 < n && text[i + 1] == '>') {
      push({TokKind::punct, "->", "", 0, false, start});
      i += 2;
      loc.col += 2;
      continue;
    }
    if (c == '.' && i + 1 < n && text[i + 1] == '.') {
      push({TokKind::punct, "..", "", 0, false, start});
      i += 2;
      loc.col += 2;
      continue;
    }
    static const std::string singles = "=[]{}(),.:@";
    if (singles.find(c) != std::string::npos) {
      push({TokKind::punct, std::string(1, c), "", 0, false, start});
      ++i;
      ++loc.col;
      continue;
    }
    throw ParseError(start, "recognizable token");
  }
  push({TokKind::eof, "", "", 0, false, loc});
  return out;
}

bool TokenCursor::accept_punct(const std::string& p) {
  if (peek().kind == TokKind::punct && peek().text == p) {
    get();
    return true;
  }
  return false;
}

bool TokenCursor::accept_ident(const std::string& word) {
  if (peek().kind == TokKind::ident && peek().text == word) {
    get();
    return true;
  }
  return false;
}

void TokenCursor::skip_newlines() {
  while (peek().kind == TokKind::newline) get();
}

void TokenCursor::expect_end_of_line() {
  if (peek().kind == TokKind::eof) return;
  if (peek().kind != TokKind::newline)
    throw ParseError(peek().loc, "end of line");
  skip_newlines();
}

std::string TokenCursor::expect_ident(const std::string& what) {
  if (peek().kind != TokKind::ident) throw ParseError(peek().loc, what);
  return get().text;
}

std::string TokenCursor::expect_string(const std::string& what) {
  if (peek().kind != TokKind::string) throw ParseError(peek().loc, what);
  return get().str;
}

void TokenCursor::expect_punct(const std::string& p) {
  if (!accept_punct(p)) throw ParseError(peek().loc, "'" + p + "'");
}

long long TokenCursor::expect_hundredths(const std::string& what) {
  if (peek().kind != TokKind::number) throw ParseError(peek().loc, what);
  return get().hundredths;
}

long long TokenCursor::expect_int(const std::string& what) {
  if (peek().kind != TokKind::number) throw ParseError(peek().loc, what);
  const Token& t = get();
  if (t.hundredths % 100 != 0) throw ParseError(t.loc, "whole number");
  return t.hundredths / 100;
}

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\\\"";
    else if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_hundredths(long long v) {
  bool neg = v < 0;
  long long a = neg ? -v : v;
  std::string out = neg ? "-" : "";
  out += std::to_string(a / 100);
  long long frac = a % 100;
  if (frac != 0) {
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    if (frac % 10 != 0) out += static_cast<char>('0' + frac % 10);
  }
  return out;
}

}  // namespace facework::detail
