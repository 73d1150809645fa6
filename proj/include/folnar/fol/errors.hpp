#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folnar::fol {

// Base for frontend diagnostics that point into the normalized source.
class FrontendError : public std::runtime_error {
 public:
  FrontendError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class LexError : public FrontendError {
 public:
  LexError(std::size_t offset, std::string snippet)
      : FrontendError("lex error at offset " + std::to_string(offset) +
                          " near '" + snippet + "'",
                      offset),
        snippet_(std::move(snippet)) {}
  const std::string& snippet() const { return snippet_; }

 private:
  std::string snippet_;
};

class ParseError : public FrontendError {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found)
      : FrontendError("parse error at offset " + std::to_string(offset) +
                          ": expected " + expected + ", found " + found,
                      offset),
        expected_(std::move(expected)),
        found_(std::move(found)) {}
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

// Existential quantifiers are outside the accepted fragment.
class UnsupportedQuantifier : public FrontendError {
 public:
  explicit UnsupportedQuantifier(std::size_t offset)
      : FrontendError("existential quantifier at offset " +
                          std::to_string(offset) +
                          " is not supported",
                      offset) {}
};

// A Variable term escaped every enclosing quantifier. The parser cannot
// produce this (unbound names are constants); it guards hand-built trees.
class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(std::string name)
      : std::runtime_error("unbound variable '" + name + "'"),
        name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace folnar::fol
