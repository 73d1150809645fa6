#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folnar::oracle {

// Model enumeration is capped to keep the oracle exhaustive but bounded.
class DomainTooLarge : public std::runtime_error {
 public:
  DomainTooLarge(std::size_t atoms, std::size_t limit)
      : std::runtime_error("grounding produced " + std::to_string(atoms) +
                           " atoms; the enumeration cap is " +
                           std::to_string(limit)),
        atoms_(atoms),
        limit_(limit) {}
  std::size_t atoms() const { return atoms_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t atoms_;
  std::size_t limit_;
};

class ContradictoryPremises : public std::runtime_error {
 public:
  ContradictoryPremises()
      : std::runtime_error("premises have no satisfying assignment") {}
};

class ContradictoryDerivation : public std::runtime_error {
 public:
  explicit ContradictoryDerivation(std::string atom)
      : std::runtime_error("chase derived both signs of " + atom),
        atom_(std::move(atom)) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

}  // namespace folnar::oracle
