#pragma once
// Error types shared across the parsers and renderers.

#include <stdexcept>
#include <string>

namespace facework {

struct SourceLoc {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& expected)
      : std::runtime_error("parse error at " + std::to_string(loc.line) + ":" +
                           std::to_string(loc.col) + ": expected " + expected),
        loc_(loc),
        expected_(expected) {}
  SourceLoc loc() const { return loc_; }
  const std::string& expected() const { return expected_; }

 private:
  SourceLoc loc_;
  std::string expected_;
};

// A structurally well-formed input that breaks the closed schema
// (unknown key, bad range, contradictory topic sets, ...).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& key, const std::string& message)
      : std::runtime_error("schema error (" + key + "): " + message),
        key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class UnknownItem : public std::out_of_range {
 public:
  explicit UnknownItem(const std::string& item)
      : std::out_of_range("unknown item: " + item), item_(item) {}
  const std::string& item() const { return item_; }

 private:
  std::string item_;
};

class NoTemplate : public std::runtime_error {
 public:
  explicit NoTemplate(const std::string& strategy)
      : std::runtime_error("no template for strategy: " + strategy) {}
};

class MissingSlot : public std::runtime_error {
 public:
  explicit MissingSlot(const std::string& slot)
      : std::runtime_error("missing slot value: {" + slot + "}"), slot_(slot) {}
  const std::string& slot() const { return slot_; }

 private:
  std::string slot_;
};

}  // namespace facework
