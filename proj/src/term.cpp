#include "algcsp/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace algcsp {

Term Term::variable(int index, int arity) {
  if (index < 0 || index >= arity)
    throw std::invalid_argument("variable index outside declared arity");
  Term t;
  t.var_ = index;
  t.arity_ = arity;
  return t;
}

Term Term::apply(std::string op, std::vector<Term> children) {
  if (op.empty()) throw std::invalid_argument("empty operation symbol");
  Term t;
  t.op_ = std::move(op);
  t.children_ = std::move(children);
  int arity = 0;
  for (const Term& c : t.children_) arity = std::max(arity, c.arity());
  t.arity_ = arity;
  return t;
}

Term Term::with_arity(int arity) const {
  Term t = *this;
  if (arity < t.arity_)
    throw std::invalid_argument("declared arity does not cover variables");
  t.arity_ = arity;
  if (!t.children_.empty())
    for (Term& c : t.children_) c = c.with_arity(arity);
  return t;
}

Term Term::shift_variables(int offset, int new_arity) const {
  if (is_variable()) return variable(var_ + offset, new_arity);
  std::vector<Term> shifted;
  shifted.reserve(children_.size());
  for (const Term& c : children_)
    shifted.push_back(c.shift_variables(offset, new_arity));
  Term t = apply(op_, std::move(shifted));
  t.arity_ = new_arity;
  return t;
}

int Term::depth() const {
  if (is_variable()) return 0;
  int d = 0;
  for (const Term& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

std::string Term::str() const {
  if (is_variable()) return "x" + std::to_string(var_);
  std::string s = op_ + "(";
  for (size_t i = 0; i < children_.size(); ++i) {
    if (i) s += ",";
    s += children_[i].str();
  }
  return s + ")";
}

Term star_compose(const Term& f, const Term& g) {
  const int l = f.arity(), m = g.arity();
  if (l < 1 || m < 1) throw std::invalid_argument("star of nullary term");
  const int arity = l * m;
  // Substitute g (with block-shifted variables) for each variable of f.
  auto subst = [&](auto&& self, const Term& node) -> Term {
    if (node.is_variable())
      return g.shift_variables(node.var() * m, arity);
    std::vector<Term> children;
    children.reserve(node.children().size());
    for (const Term& c : node.children()) children.push_back(self(self, c));
    Term t = Term::apply(node.op(), std::move(children));
    return t.with_arity(arity);
  };
  return subst(subst, f);
}

}  // namespace algcsp
