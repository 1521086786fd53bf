// SPDX-License-Identifier: Apache-2.0

#include "fopw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "fopw/errors.hpp"

namespace fopw {

Formula Formula::exists(std::string variable, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kExists, std::move(variable), std::make_shared<const Formula>(std::move(body)),
           nullptr, {}, {}}));
}

Formula Formula::negation(Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kNot, {}, std::make_shared<const Formula>(std::move(body)), nullptr, {}, {}}));
}

Formula Formula::disjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kOr, {}, std::make_shared<const Formula>(std::move(left)),
           std::make_shared<const Formula>(std::move(right)), {}, {}}));
}

Formula Formula::adjacent(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAdj, {}, nullptr, nullptr, std::move(lhs), std::move(rhs)}));
}

Formula Formula::equal(Term lhs, Term rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kEq, {}, nullptr, nullptr, std::move(lhs), std::move(rhs)}));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::kExists:
      return variable() == other.variable() && body() == other.body();
    case Kind::kNot:
      return body() == other.body();
    case Kind::kOr:
      return left() == other.left() && right() == other.right();
    case Kind::kAdj:
    case Kind::kEq:
      return lhs() == other.lhs() && rhs() == other.rhs();
  }
  return false;
}

namespace {

enum class Tok { kEnd, kLParen, kRParen, kDot, kBang, kBar, kAmp, kTilde, kEquals, kIdent };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // 1-based column
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t at = i + 1;
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, text[i]), at});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::kLParen); continue;
      case ')': single(Tok::kRParen); continue;
      case '.': single(Tok::kDot); continue;
      case '!': single(Tok::kBang); continue;
      case '|': single(Tok::kBar); continue;
      case '&': single(Tok::kAmp); continue;
      case '~': single(Tok::kTilde); continue;
      case '=': single(Tok::kEquals); continue;
      default: break;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), at});
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + text[i] + "'", at);
  }
  out.push_back({Tok::kEnd, "", text.size() + 1});
  return out;
}

bool is_constant_name(const std::string& s) {
  return s.size() >= 2 && s[0] == 'L' &&
         std::all_of(s.begin() + 1, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

bool is_quantifier(const Token& t) { return t.kind == Tok::kIdent && (t.text == "E" || t.text == "A"); }

class Parser {
 public:
  Parser(std::string_view text, int k) : tokens_(tokenize(text)), k_(k) {}

  Formula parse() {
    Formula phi = formula();
    if (peek().kind != Tok::kEnd) fail("trailing input");
    return phi;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(t.kind == Tok::kEnd ? what + " (unexpected end of input)" : what,
                     t.offset);
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  Formula formula() {
    const Token& t = peek();
    if (is_quantifier(t)) {
      bool universal = t.text == "A";
      next();
      if (peek().kind != Tok::kIdent || is_quantifier(peek()) || is_constant_name(peek().text)) {
        fail("expected variable name");
      }
      std::string name = peek().text;
      if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) {
        fail("variable '" + name + "' shadows an outer binding");
      }
      next();
      expect(Tok::kDot, "'.'");
      scope_.push_back(name);
      Formula body = formula();
      scope_.pop_back();
      if (universal) {
        return Formula::negation(Formula::exists(name, Formula::negation(std::move(body))));
      }
      return Formula::exists(name, std::move(body));
    }
    if (t.kind == Tok::kBang) {
      next();
      return Formula::negation(formula());
    }
    if (t.kind == Tok::kLParen) {
      next();
      const Token& inner = peek();
      if (inner.kind == Tok::kLParen || inner.kind == Tok::kBang || is_quantifier(inner)) {
        Formula left = formula();
        Tok op = peek().kind;
        if (op != Tok::kBar && op != Tok::kAmp) fail("expected '|' or '&'");
        next();
        Formula right = formula();
        expect(Tok::kRParen, "')'");
        if (op == Tok::kBar) return Formula::disjunction(std::move(left), std::move(right));
        return Formula::negation(Formula::disjunction(Formula::negation(std::move(left)),
                                                      Formula::negation(std::move(right))));
      }
      Term lhs = term();
      Tok op = peek().kind;
      if (op != Tok::kTilde && op != Tok::kEquals) fail("expected '~' or '='");
      next();
      Term rhs = term();
      expect(Tok::kRParen, "')'");
      if (op == Tok::kTilde) return Formula::adjacent(std::move(lhs), std::move(rhs));
      return Formula::equal(std::move(lhs), std::move(rhs));
    }
    fail("expected formula");
  }

  Term term() {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || is_quantifier(t)) fail("expected term");
    if (is_constant_name(t.text)) {
      long label = 0;
      try {
        label = std::stol(t.text.substr(1));
      } catch (const std::out_of_range&) {
        fail("constant index too large");
      }
      if (label < 1) fail("constant index must be at least 1");
      if (label > k_) fail("constant " + t.text + " exceeds k=" + std::to_string(k_));
      next();
      return Term::constant(static_cast<int>(label));
    }
    if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end()) {
      fail("free variable '" + t.text + "'");
    }
    std::string name = t.text;
    next();
    return Term::variable(std::move(name));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int k_;
  std::vector<std::string> scope_;
};

std::string term_text(const Term& t) {
  return t.kind == Term::Kind::kConstant ? "L" + std::to_string(t.label) : t.name;
}

class Evaluator {
 public:
  explicit Evaluator(const Graph& g) : g_(g) {}

  bool eval(const Formula& phi) {
    switch (phi.kind()) {
      case Formula::Kind::kExists: {
        binding_.emplace_back(phi.variable(), 0);
        bool found = false;
        for (Vertex v = 0; v < g_.vertex_count() && !found; ++v) {
          binding_.back().second = v;
          found = eval(phi.body());
        }
        binding_.pop_back();
        return found;
      }
      case Formula::Kind::kNot:
        return !eval(phi.body());
      case Formula::Kind::kOr:
        return eval(phi.left()) || eval(phi.right());
      case Formula::Kind::kAdj:
        return g_.adjacent(resolve(phi.lhs()), resolve(phi.rhs()));
      case Formula::Kind::kEq:
        return resolve(phi.lhs()) == resolve(phi.rhs());
    }
    return false;
  }

 private:
  Vertex resolve(const Term& t) const {
    if (t.kind == Term::Kind::kConstant) {
      if (t.label < 1 || t.label > g_.terminal_count()) {
        throw PreconditionError("constant L" + std::to_string(t.label) +
                                " exceeds the graph's labels");
      }
      return g_.terminal(t.label);
    }
    for (auto it = binding_.rbegin(); it != binding_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    throw PreconditionError("free variable '" + t.name + "'");
  }

  const Graph& g_;
  std::vector<std::pair<std::string, Vertex>> binding_;
};

}  // namespace

Formula parse_formula(std::string_view text, int k) { return Parser(text, k).parse(); }

std::string to_string(const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::kExists:
      return "E " + phi.variable() + ". " + to_string(phi.body());
    case Formula::Kind::kNot:
      return "!" + to_string(phi.body());
    case Formula::Kind::kOr:
      return "(" + to_string(phi.left()) + " | " + to_string(phi.right()) + ")";
    case Formula::Kind::kAdj:
      return "(" + term_text(phi.lhs()) + " ~ " + term_text(phi.rhs()) + ")";
    case Formula::Kind::kEq:
      return "(" + term_text(phi.lhs()) + " = " + term_text(phi.rhs()) + ")";
  }
  return {};
}

int quantifier_count(const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::kExists:
      return 1 + quantifier_count(phi.body());
    case Formula::Kind::kNot:
      return quantifier_count(phi.body());
    case Formula::Kind::kOr:
      return quantifier_count(phi.left()) + quantifier_count(phi.right());
    default:
      return 0;
  }
}

int max_constant(const Formula& phi) {
  auto of = [](const Term& t) { return t.kind == Term::Kind::kConstant ? t.label : 0; };
  switch (phi.kind()) {
    case Formula::Kind::kExists:
    case Formula::Kind::kNot:
      return max_constant(phi.body());
    case Formula::Kind::kOr:
      return std::max(max_constant(phi.left()), max_constant(phi.right()));
    default:
      return std::max(of(phi.lhs()), of(phi.rhs()));
  }
}

bool model_check(const Graph& g, const Formula& phi) {
  if (max_constant(phi) > g.terminal_count()) {
    throw PreconditionError("formula references a constant beyond the graph's labels");
  }
  return Evaluator(g).eval(phi);
}

}  // namespace fopw
