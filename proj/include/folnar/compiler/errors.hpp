#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace folnar::compiler {

// A premise outside the supported conversion patterns. `node` holds the
// canonical print of the offending subformula; `premise_index` is filled
// by compile_unit.
class UnsupportedPattern : public std::runtime_error {
 public:
  UnsupportedPattern(std::string reason, std::string node,
                     std::optional<std::size_t> premise_index = std::nullopt)
      : std::runtime_error(
            (premise_index ? "premise " + std::to_string(*premise_index) +
                                 ": "
                           : std::string()) +
            reason + " (in '" + node + "')"),
        reason_(std::move(reason)),
        node_(std::move(node)),
        premise_index_(premise_index) {}

  const std::string& reason() const { return reason_; }
  const std::string& node() const { return node_; }
  std::optional<std::size_t> premise_index() const { return premise_index_; }

 private:
  std::string reason_;
  std::string node_;
  std::optional<std::size_t> premise_index_;
};

class UnsupportedArity : public std::runtime_error {
 public:
  UnsupportedArity(std::string predicate, std::size_t arity)
      : std::runtime_error("predicate '" + predicate + "' has arity " +
                           std::to_string(arity) + "; only 1 and 2 convert"),
        predicate_(std::move(predicate)),
        arity_(arity) {}

  const std::string& predicate() const { return predicate_; }
  std::size_t arity() const { return arity_; }

 private:
  std::string predicate_;
  std::size_t arity_;
};

class NoQueryableSubformula : public std::runtime_error {
 public:
  NoQueryableSubformula()
      : std::runtime_error(
            "conclusion has no atomic or negated atomic subformula that "
            "compiles") {}
};

}  // namespace folnar::compiler
