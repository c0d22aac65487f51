#include "rpmc/ltl.hpp"

#include <algorithm>
#include <functional>

namespace rpmc::ltl {
namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

LtlPtr make(LtlKind kind, std::vector<LtlPtr> children) {
  return std::make_shared<const Ltl>(kind, 0, std::move(children));
}

bool same(const LtlPtr& a, const LtlPtr& b) { return a == b || *a == *b; }

}  // namespace

Ltl::Ltl(LtlKind kind, std::size_t atom, std::vector<LtlPtr> children)
    : kind_(kind), atom_(atom), children_(std::move(children)) {
  hash_ = mix(static_cast<std::size_t>(kind_) + 1, atom_);
  for (const auto& c : children_) hash_ = mix(hash_, c->hash());
}

bool operator==(const Ltl& a, const Ltl& b) {
  if (&a == &b) return true;
  if (a.hash_ != b.hash_ || a.kind_ != b.kind_ || a.atom_ != b.atom_ || a.children_.size() != b.children_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children_.size(); ++i) {
    if (!same(a.children_[i], b.children_[i])) return false;
  }
  return true;
}

LtlPtr Ltl::make_true() {
  static const LtlPtr instance = make(LtlKind::True, {});
  return instance;
}

LtlPtr Ltl::make_false() {
  static const LtlPtr instance = make(LtlKind::False, {});
  return instance;
}

LtlPtr Ltl::atom(std::size_t index) { return std::make_shared<const Ltl>(LtlKind::Atom, index, std::vector<LtlPtr>{}); }

LtlPtr Ltl::negation(LtlPtr operand) {
  switch (operand->kind()) {
    case LtlKind::True: return make_false();
    case LtlKind::False: return make_true();
    case LtlKind::Not: return operand->child(0);
    default: return make(LtlKind::Not, {std::move(operand)});
  }
}

bool Ltl::complementary(const LtlPtr& a, const LtlPtr& b) {
  return (a->kind() == LtlKind::Not && same(a->child(0), b)) || (b->kind() == LtlKind::Not && same(b->child(0), a));
}

namespace {

// G F x and F G x hold on a word iff they hold on every suffix.
bool suffix_invariant(const LtlPtr& f) {
  if (f->kind() == LtlKind::True || f->kind() == LtlKind::False) return true;
  return (f->kind() == LtlKind::Always && f->child(0)->kind() == LtlKind::Eventually) ||
         (f->kind() == LtlKind::Eventually && f->child(0)->kind() == LtlKind::Always);
}

// Sound, incomplete check that every word satisfying a satisfies b. The
// depth bound keeps it cheap on large formulas.
bool implies(const LtlPtr& a, const LtlPtr& b, int depth = 6) {
  if (same(a, b) || a->kind() == LtlKind::False || b->kind() == LtlKind::True) return true;
  if (depth == 0) return false;
  --depth;
  switch (b->kind()) {
    case LtlKind::And:
      return implies(a, b->child(0), depth) && implies(a, b->child(1), depth);
    case LtlKind::Or:
      if (implies(a, b->child(0), depth) || implies(a, b->child(1), depth)) return true;
      break;
    default:
      break;
  }
  switch (a->kind()) {
    case LtlKind::Or:
      return implies(a->child(0), b, depth) && implies(a->child(1), b, depth);
    case LtlKind::And:
      if (implies(a->child(0), b, depth) || implies(a->child(1), b, depth)) return true;
      break;
    case LtlKind::Not:
      if (b->kind() == LtlKind::Not && implies(b->child(0), a->child(0), depth)) return true;
      break;
    case LtlKind::Always:
      // G x implies x
      if (implies(a->child(0), b, depth)) return true;
      break;
    default:
      break;
  }
  switch (b->kind()) {
    case LtlKind::Eventually:
      // x implies F x
      if (implies(a, b->child(0), depth)) return true;
      break;
    case LtlKind::Always:
      // a suffix-invariant formula implying x implies G x
      if (suffix_invariant(a) && implies(a, b->child(0), depth)) return true;
      break;
    default:
      break;
  }
  if (a->kind() == b->kind() && (a->kind() == LtlKind::Next || a->kind() == LtlKind::Eventually ||
                                 a->kind() == LtlKind::Always)) {
    return implies(a->child(0), b->child(0), depth);
  }
  // F x implies b when b is suffix-invariant and x implies b
  if (a->kind() == LtlKind::Eventually && suffix_invariant(b)) return implies(a->child(0), b, depth);
  return false;
}

// Shared operand of two binary nodes of the given kind, and the other two.
bool factor(const LtlPtr& l, const LtlPtr& r, LtlKind kind, LtlPtr& common, LtlPtr& x, LtlPtr& y) {
  if (l->kind() != kind || r->kind() != kind) return false;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (same(l->child(i), r->child(j))) {
        common = l->child(i);
        x = l->child(1 - i);
        y = r->child(1 - j);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

LtlPtr Ltl::conjunction(LtlPtr lhs, LtlPtr rhs) {
  if (lhs->kind() == LtlKind::False || rhs->kind() == LtlKind::False) return make_false();
  if (lhs->kind() == LtlKind::True) return rhs;
  if (rhs->kind() == LtlKind::True || same(lhs, rhs)) return lhs;
  if (complementary(lhs, rhs)) return make_false();
  if (implies(lhs, rhs)) return lhs;
  if (implies(rhs, lhs)) return rhs;
  // (z | x) & (z | y) = z | (x & y)
  if (LtlPtr z, x, y; factor(lhs, rhs, LtlKind::Or, z, x, y)) return disjunction(z, conjunction(x, y));
  // X x & X y = X (x & y), G x & G y = G (x & y), F G x & F G y = F G (x & y)
  if (lhs->kind() == rhs->kind()) {
    if (lhs->kind() == LtlKind::Next || lhs->kind() == LtlKind::Always) {
      auto inner = conjunction(lhs->child(0), rhs->child(0));
      return lhs->kind() == LtlKind::Next ? next(inner) : always(inner);
    }
    if (lhs->kind() == LtlKind::Eventually && lhs->child(0)->kind() == LtlKind::Always &&
        rhs->child(0)->kind() == LtlKind::Always) {
      return eventually(always(conjunction(lhs->child(0)->child(0), rhs->child(0)->child(0))));
    }
  }
  return make(LtlKind::And, {std::move(lhs), std::move(rhs)});
}

LtlPtr Ltl::disjunction(LtlPtr lhs, LtlPtr rhs) {
  if (lhs->kind() == LtlKind::True || rhs->kind() == LtlKind::True) return make_true();
  if (lhs->kind() == LtlKind::False) return rhs;
  if (rhs->kind() == LtlKind::False || same(lhs, rhs)) return lhs;
  if (complementary(lhs, rhs)) return make_true();
  if (implies(lhs, rhs)) return rhs;
  if (implies(rhs, lhs)) return lhs;
  // (z & x) | (z & y) = z & (x | y)
  if (LtlPtr z, x, y; factor(lhs, rhs, LtlKind::And, z, x, y)) return conjunction(z, disjunction(x, y));
  // X x | X y = X (x | y), F x | F y = F (x | y), G F x | G F y = G F (x | y)
  if (lhs->kind() == rhs->kind()) {
    if (lhs->kind() == LtlKind::Next) return next(disjunction(lhs->child(0), rhs->child(0)));
    if (lhs->kind() == LtlKind::Always && lhs->child(0)->kind() == LtlKind::Eventually &&
        rhs->child(0)->kind() == LtlKind::Eventually) {
      return always(eventually(disjunction(lhs->child(0)->child(0), rhs->child(0)->child(0))));
    }
    if (lhs->kind() == LtlKind::Eventually && !suffix_invariant(lhs) && !suffix_invariant(rhs)) {
      return eventually(disjunction(lhs->child(0), rhs->child(0)));
    }
  }
  return make(LtlKind::Or, {std::move(lhs), std::move(rhs)});
}

LtlPtr Ltl::next(LtlPtr operand) {
  if (suffix_invariant(operand)) return operand;
  return make(LtlKind::Next, {std::move(operand)});
}

// F X x = X F x; F G F x = G F x.
LtlPtr Ltl::eventually(LtlPtr operand) {
  if (suffix_invariant(operand) || operand->kind() == LtlKind::Eventually) return operand;
  if (operand->kind() == LtlKind::Next) return next(eventually(operand->child(0)));
  return make(LtlKind::Eventually, {std::move(operand)});
}

// G X x = X G x; G F G x = F G x.
LtlPtr Ltl::always(LtlPtr operand) {
  if (suffix_invariant(operand) || operand->kind() == LtlKind::Always) return operand;
  if (operand->kind() == LtlKind::Next) return next(always(operand->child(0)));
  return make(LtlKind::Always, {std::move(operand)});
}

namespace {

LtlPtr nnf(const LtlPtr& f, bool negated) {
  switch (f->kind()) {
    case LtlKind::True: return negated ? Ltl::make_false() : f;
    case LtlKind::False: return negated ? Ltl::make_true() : f;
    case LtlKind::Atom: return negated ? Ltl::negation(f) : f;
    case LtlKind::Not: return nnf(f->child(0), !negated);
    case LtlKind::And:
    case LtlKind::Or: {
      auto l = nnf(f->child(0), negated);
      auto r = nnf(f->child(1), negated);
      bool conj = (f->kind() == LtlKind::And) != negated;
      return conj ? Ltl::conjunction(std::move(l), std::move(r)) : Ltl::disjunction(std::move(l), std::move(r));
    }
    case LtlKind::Next: return Ltl::next(nnf(f->child(0), negated));
    case LtlKind::Eventually: {
      auto inner = nnf(f->child(0), negated);
      return negated ? Ltl::always(std::move(inner)) : Ltl::eventually(std::move(inner));
    }
    case LtlKind::Always: {
      auto inner = nnf(f->child(0), negated);
      return negated ? Ltl::eventually(std::move(inner)) : Ltl::always(std::move(inner));
    }
  }
  return f;
}

void print(const Ltl& f, std::string& out) {
  switch (f.kind()) {
    case LtlKind::True: out += "true"; return;
    case LtlKind::False: out += "false"; return;
    case LtlKind::Atom: out += "a" + std::to_string(f.atom_index()); return;
    case LtlKind::Not: out += "!"; break;
    case LtlKind::Next: out += "X "; break;
    case LtlKind::Eventually: out += "F "; break;
    case LtlKind::Always: out += "G "; break;
    case LtlKind::And:
    case LtlKind::Or:
      out += "(";
      print(*f.child(0), out);
      out += f.kind() == LtlKind::And ? " & " : " | ";
      print(*f.child(1), out);
      out += ")";
      return;
  }
  const auto& c = *f.child(0);
  bool wrap = c.kind() != LtlKind::Atom && c.kind() != LtlKind::True && c.kind() != LtlKind::False &&
              c.kind() != LtlKind::And && c.kind() != LtlKind::Or;
  if (wrap) out += "(";
  print(c, out);
  if (wrap) out += ")";
}

}  // namespace

LtlPtr to_nnf(const LtlPtr& f) { return nnf(f, false); }

std::string to_string(const Ltl& f) {
  std::string out;
  print(f, out);
  return out;
}

std::size_t atom_bound(const Ltl& f) {
  std::size_t bound = f.kind() == LtlKind::Atom ? f.atom_index() + 1 : 0;
  for (const auto& c : f.children()) bound = std::max(bound, atom_bound(*c));
  return bound;
}

std::size_t node_count(const Ltl& f) {
  std::size_t n = 1;
  for (const auto& c : f.children()) n += node_count(*c);
  return n;
}

}  // namespace rpmc::ltl
