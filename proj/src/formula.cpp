#include "rpmc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace rpmc {

std::string_view to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Equal: return "=";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Greater: return ">";
  }
  return "?";
}

bool compare(const Rational& lhs, Comparison cmp, const Rational& rhs) {
  switch (cmp) {
    case Comparison::Less: return lhs < rhs;
    case Comparison::LessEqual: return lhs <= rhs;
    case Comparison::Equal: return lhs == rhs;
    case Comparison::GreaterEqual: return lhs >= rhs;
    case Comparison::Greater: return lhs > rhs;
  }
  return false;
}

std::string_view to_string(LogicMode mode) {
  switch (mode) {
    case LogicMode::Rpctl: return "rpctl";
    case LogicMode::RpctlStar: return "rpctl-star";
    case LogicMode::Pctl: return "pctl";
    case LogicMode::PctlStar: return "pctl-star";
  }
  return "?";
}

std::optional<LogicMode> parse_logic_mode(std::string_view text) {
  if (text == "rpctl") return LogicMode::Rpctl;
  if (text == "rpctl-star" || text == "rpctl_star") return LogicMode::RpctlStar;
  if (text == "pctl") return LogicMode::Pctl;
  if (text == "pctl-star" || text == "pctl_star") return LogicMode::PctlStar;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Nodes

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula::Formula(NodeKind kind, std::string atom, Comparison cmp, Rational threshold, std::vector<FormulaPtr> children)
    : kind_(kind), atom_(std::move(atom)), cmp_(cmp), threshold_(std::move(threshold)), children_(std::move(children)) {
  hash_ = mix(0, static_cast<std::size_t>(kind_));
  switch (kind_) {
    case NodeKind::Atom:
      hash_ = mix(hash_, std::hash<std::string>{}(atom_));
      break;
    case NodeKind::Prob:
      hash_ = mix(hash_, static_cast<std::size_t>(cmp_));
      hash_ = mix(hash_, std::hash<std::string>{}(to_string(threshold_)));
      break;
    default:
      break;
  }
  for (const auto& c : children_) {
    hash_ = mix(hash_, c->hash());
  }

  if (is_temporal()) {
    is_state_ = false;
  } else if (kind_ != NodeKind::Prob) {
    is_state_ = std::all_of(children_.begin(), children_.end(), [](const FormulaPtr& c) { return c->is_state(); });
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.hash_ != b.hash_ || a.kind_ != b.kind_ || a.children_.size() != b.children_.size()) return false;
  if (a.kind_ == NodeKind::Atom && a.atom_ != b.atom_) return false;
  if (a.kind_ == NodeKind::Prob && (a.cmp_ != b.cmp_ || a.threshold_ != b.threshold_)) return false;
  for (std::size_t i = 0; i < a.children_.size(); ++i) {
    if (a.children_[i] != b.children_[i] && !(*a.children_[i] == *b.children_[i])) return false;
  }
  return true;
}

namespace {

FormulaPtr make(NodeKind kind, std::vector<FormulaPtr> children) {
  return std::make_shared<const Formula>(kind, std::string{}, Comparison::GreaterEqual, Rational{}, std::move(children));
}

}  // namespace

FormulaPtr Formula::make_true() {
  static const FormulaPtr instance = make(NodeKind::True, {});
  return instance;
}

FormulaPtr Formula::make_false() {
  static const FormulaPtr instance = make(NodeKind::False, {});
  return instance;
}

FormulaPtr Formula::atom(std::string name) {
  return std::make_shared<const Formula>(NodeKind::Atom, std::move(name), Comparison::GreaterEqual, Rational{},
                                         std::vector<FormulaPtr>{});
}

FormulaPtr Formula::negation(FormulaPtr operand) { return make(NodeKind::Not, {std::move(operand)}); }
FormulaPtr Formula::conjunction(FormulaPtr lhs, FormulaPtr rhs) { return make(NodeKind::And, {std::move(lhs), std::move(rhs)}); }
FormulaPtr Formula::disjunction(FormulaPtr lhs, FormulaPtr rhs) { return make(NodeKind::Or, {std::move(lhs), std::move(rhs)}); }
FormulaPtr Formula::implication(FormulaPtr lhs, FormulaPtr rhs) {
  return make(NodeKind::Implies, {std::move(lhs), std::move(rhs)});
}
FormulaPtr Formula::next(FormulaPtr operand) { return make(NodeKind::Next, {std::move(operand)}); }
FormulaPtr Formula::eventually(FormulaPtr operand) { return make(NodeKind::Eventually, {std::move(operand)}); }
FormulaPtr Formula::always(FormulaPtr operand) { return make(NodeKind::Always, {std::move(operand)}); }

FormulaPtr Formula::probability(Comparison cmp, Rational threshold, FormulaPtr body) {
  return std::make_shared<const Formula>(NodeKind::Prob, std::string{}, cmp, std::move(threshold),
                                         std::vector<FormulaPtr>{std::move(body)});
}

FormulaPtr Formula::with_children(const Formula& like, std::vector<FormulaPtr> children) {
  return std::make_shared<const Formula>(like.kind_, like.atom_, like.cmp_, like.threshold_, std::move(children));
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Number, Slash, LParen, RParen, LBrack, RBrack, Not, And, Or, Arrow, Cmp, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t line = line_, col = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = text_[pos_];
      auto single = [&](Tok t) {
        advance();
        out.push_back({t, std::string(1, c), line, col});
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::Ident, std::string(text_.substr(start, pos_ - start)), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
          advance();
        }
        out.push_back({Tok::Number, std::string(text_.substr(start, pos_ - start)), line, col});
      } else if (c == '-' && peek(1) == '>') {
        advance();
        advance();
        out.push_back({Tok::Arrow, "->", line, col});
      } else if (c == '<' || c == '>') {
        advance();
        std::string op(1, c);
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          op += '=';
        }
        out.push_back({Tok::Cmp, op, line, col});
      } else if (c == '=') {
        single(Tok::Cmp);
      } else if (c == '/') {
        single(Tok::Slash);
      } else if (c == '(') {
        single(Tok::LParen);
      } else if (c == ')') {
        single(Tok::RParen);
      } else if (c == '[') {
        single(Tok::LBrack);
      } else if (c == ']') {
        single(Tok::RBrack);
      } else if (c == '!') {
        single(Tok::Not);
      } else if (c == '&') {
        single(Tok::And);
      } else if (c == '|') {
        single(Tok::Or);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
  }

 private:
  char peek(std::size_t ahead) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_keyword(const std::string& s) {
  return s == "P" || s == "X" || s == "F" || s == "G" || s == "true" || s == "false";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FormulaPtr parse_all() {
    FormulaPtr f = implication();
    if (current().type != Tok::End) {
      fail("unexpected '" + current().text + "'");
    }
    return f;
  }

 private:
  const Token& current() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, current().line, current().column);
  }

  void expect(Tok type, const char* what) {
    if (current().type != type) {
      fail(std::string("expected ") + what + (current().type == Tok::End ? " at end of input" : " before '" + current().text + "'"));
    }
    ++pos_;
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (current().type == Tok::Arrow) {
      ++pos_;
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr lhs = conjunction();
    while (current().type == Tok::Or) {
      ++pos_;
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    FormulaPtr lhs = unary();
    while (current().type == Tok::And) {
      ++pos_;
      lhs = Formula::conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  FormulaPtr unary() {
    const Token& t = current();
    if (t.type == Tok::Not) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (t.type == Tok::Ident && (t.text == "X" || t.text == "F" || t.text == "G")) {
      char op = t.text[0];
      ++pos_;
      FormulaPtr operand = unary();
      if (op == 'X') return Formula::next(std::move(operand));
      if (op == 'F') return Formula::eventually(std::move(operand));
      return Formula::always(std::move(operand));
    }
    return primary();
  }

  FormulaPtr primary() {
    const Token t = current();
    switch (t.type) {
      case Tok::LParen: {
        ++pos_;
        FormulaPtr inner = implication();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        if (t.text == "true") {
          ++pos_;
          return Formula::make_true();
        }
        if (t.text == "false") {
          ++pos_;
          return Formula::make_false();
        }
        if (t.text == "P") {
          return probability();
        }
        if (is_keyword(t.text)) {
          fail("unexpected keyword '" + t.text + "'");
        }
        ++pos_;
        return Formula::atom(t.text);
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  FormulaPtr probability() {
    ++pos_;  // P
    if (current().type != Tok::Cmp) {
      fail("expected comparison after 'P'");
    }
    const std::string op = current().text;
    Comparison cmp = op == "<"    ? Comparison::Less
                     : op == "<=" ? Comparison::LessEqual
                     : op == "="  ? Comparison::Equal
                     : op == ">=" ? Comparison::GreaterEqual
                                  : Comparison::Greater;
    ++pos_;

    const Token number = current();
    if (number.type != Tok::Number) {
      fail("expected probability threshold");
    }
    std::string text = number.text;
    ++pos_;
    if (current().type == Tok::Slash) {
      ++pos_;
      if (current().type != Tok::Number) {
        fail("expected denominator");
      }
      text += "/" + current().text;
      ++pos_;
    }
    Rational threshold;
    try {
      threshold = parse_rational(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), number.line, number.column);
    }
    if (threshold < 0 || threshold > 1) {
      throw ParseError("threshold " + text + " outside [0,1]", number.line, number.column);
    }

    expect(Tok::LBrack, "'['");
    FormulaPtr body = implication();
    expect(Tok::RBrack, "']'");
    return Formula::probability(cmp, std::move(threshold), std::move(body));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void check_node(const FormulaPtr& f, LogicMode mode) {
  if (f->kind() == NodeKind::Prob) {
    const FormulaPtr& body = f->child(0);
    if (!is_star(mode) && !(body->is_temporal() && body->child(0)->is_state())) {
      throw FormulaError(std::string(to_string(mode)) +
                         ": the body of P must be a single X, F or G applied to a state formula, got '" +
                         print_formula(*body) + "'");
    }
  }
  for (const auto& c : f->children()) {
    check_node(c, mode);
  }
}

}  // namespace

void check_well_formed(const FormulaPtr& f, LogicMode mode) {
  if (!f->is_state()) {
    throw FormulaError("temporal operator outside P in '" + print_formula(*f) + "'");
  }
  check_node(f, mode);
}

TaggedFormula parse_formula(std::string_view text, LogicMode mode) {
  FormulaPtr f = Parser(Lexer(text).run()).parse_all();
  check_well_formed(f, mode);
  return {mode, std::move(f)};
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::Implies: return 1;
    case NodeKind::Or: return 2;
    case NodeKind::And: return 3;
    case NodeKind::Not:
    case NodeKind::Next:
    case NodeKind::Eventually:
    case NodeKind::Always: return 4;
    default: return 5;
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  const int prec = precedence(f.kind());
  switch (f.kind()) {
    case NodeKind::True: out += "true"; return;
    case NodeKind::False: out += "false"; return;
    case NodeKind::Atom: out += f.atom_name(); return;
    case NodeKind::Not:
      out += '!';
      print_operand(*f.child(0), precedence(f.child(0)->kind()) < prec, out);
      return;
    case NodeKind::Next:
    case NodeKind::Eventually:
    case NodeKind::Always:
      out += f.kind() == NodeKind::Next ? "X " : f.kind() == NodeKind::Eventually ? "F " : "G ";
      print_operand(*f.child(0), precedence(f.child(0)->kind()) < prec, out);
      return;
    case NodeKind::And:
    case NodeKind::Or:
      print_operand(*f.child(0), precedence(f.child(0)->kind()) < prec, out);
      out += f.kind() == NodeKind::And ? " & " : " | ";
      print_operand(*f.child(1), precedence(f.child(1)->kind()) <= prec, out);
      return;
    case NodeKind::Implies:
      print_operand(*f.child(0), precedence(f.child(0)->kind()) <= prec, out);
      out += " -> ";
      print_operand(*f.child(1), precedence(f.child(1)->kind()) < prec, out);
      return;
    case NodeKind::Prob:
      out += 'P';
      out += to_string(f.comparison());
      out += to_string(f.threshold());
      out += " [ ";
      print(*f.child(0), out);
      out += " ]";
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural queries

std::vector<FormulaPtr> closure(const FormulaPtr& f) {
  std::vector<FormulaPtr> order;
  std::unordered_set<FormulaPtr, FormulaHash, FormulaEqual> seen;
  std::function<void(const FormulaPtr&)> visit = [&](const FormulaPtr& node) {
    if (seen.contains(node)) return;
    for (const auto& c : node->children()) {
      visit(c);
    }
    seen.insert(node);
    order.push_back(node);
  };
  visit(f);
  return order;
}

bool is_implication_free(const FormulaPtr& f) {
  if (f->kind() == NodeKind::Implies) return false;
  return std::all_of(f->children().begin(), f->children().end(), [](const FormulaPtr& c) { return is_implication_free(c); });
}

namespace {

FormulaPtr rewrite(const FormulaPtr& f) {
  if (f->children().empty()) return f;
  std::vector<FormulaPtr> kids;
  kids.reserve(f->children().size());
  for (const auto& c : f->children()) kids.push_back(rewrite(c));
  if (f->kind() == NodeKind::Implies) {
    return Formula::disjunction(Formula::negation(kids[0]), kids[1]);
  }
  return Formula::with_children(*f, std::move(kids));
}

}  // namespace

TaggedFormula rewrite_implications(const TaggedFormula& f) {
  if (is_robust(f.mode)) {
    throw FormulaError("implication rewriting is only sound in classical logics, not " + std::string(to_string(f.mode)));
  }
  return {f.mode, rewrite(f.formula)};
}

std::size_t formula_size(const FormulaPtr& f) {
  auto nodes = closure(f);
  std::size_t longest = 0;
  for (const auto& n : nodes) {
    if (n->kind() == NodeKind::Prob) longest = std::max(longest, encoding_length(n->threshold()));
  }
  return nodes.size() + longest;
}

std::size_t distinct_node_count(const FormulaPtr& f) { return closure(f).size(); }

}  // namespace rpmc
