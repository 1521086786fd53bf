// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "fopw/graph.hpp"

namespace fopw {

/// A variable (by name) or the constant l_i (1-based label index).
struct Term {
  enum class Kind { kVariable, kConstant };

  Kind kind = Kind::kConstant;
  std::string name;
  int label = 0;

  static Term variable(std::string name) { return {Kind::kVariable, std::move(name), 0}; }
  static Term constant(int label) { return {Kind::kConstant, {}, label}; }

  bool operator==(const Term&) const = default;
};

/// First-order formula over the core connectives: exists, not, or, adjacency
/// and equality atoms. Forall and and exist only as parser sugar. Nodes are
/// shared and immutable, so copies are cheap.
class Formula {
 public:
  enum class Kind { kExists, kNot, kOr, kAdj, kEq };

  static Formula exists(std::string variable, Formula body);
  static Formula negation(Formula body);
  static Formula disjunction(Formula left, Formula right);
  static Formula adjacent(Term lhs, Term rhs);
  static Formula equal(Term lhs, Term rhs);

  Kind kind() const { return node_->kind; }
  const std::string& variable() const { return node_->variable; }
  const Formula& body() const { return *node_->left; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  const Term& lhs() const { return node_->lhs; }
  const Term& rhs() const { return node_->rhs; }

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    std::string variable;
    std::shared_ptr<const Formula> left, right;
    Term lhs, rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses the ASCII grammar
///   phi  := 'E' ident '.' phi | 'A' ident '.' phi | '!' phi
///         | '(' phi '|' phi ')' | '(' phi '&' phi ')'
///         | '(' term '~' term ')' | '(' term '=' term ')'
///   term := ident | 'L' digits
/// as a sentence over the constants l_1..l_k. Forall and conjunction are
/// rewritten into exists/not/or. Throws ParseError on malformed input, free
/// variables, shadowed bindings or constants outside 1..k.
Formula parse_formula(std::string_view text, int k);

/// Canonical text in the same grammar; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& phi);

/// Number of exists nodes (every forall contributes one).
int quantifier_count(const Formula& phi);

/// Largest constant label referenced, 0 when none.
int max_constant(const Formula& phi);

/// Brute-force evaluation of a sentence; each existential ranges over all
/// vertices, terminals included.
bool model_check(const Graph& g, const Formula& phi);

}  // namespace fopw
