#include "prm/term.hpp"

#include <algorithm>
#include <functional>

namespace prm {

struct Term::Node {
  TermKind kind;
  std::size_t a = 0;  // Zero: arity; Proj: index
  std::size_t b = 0;  // Proj: arity
  std::vector<Term> children;  // Comp: outer, inners...; PrimRec: base, step

  // Bottom-up well-formedness. arity == 0 means malformed.
  std::size_t arity = 0;
  std::string error_path;
  std::string error_message;

  std::size_t size = 1;
  std::size_t depth = 1;
  std::size_t hash = 0;
};

namespace {

std::string join_path(const std::string& head, const std::string& tail) {
  return tail.empty() ? head : head + "/" + tail;
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::zero(std::size_t arity) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Zero;
  n->a = arity;
  n->arity = arity;
  if (arity == 0) n->error_message = "Z requires arity >= 1";
  n->hash = mix(mix(1, arity), 0);
  return Term(std::move(n));
}

Term Term::succ() {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Succ;
  n->arity = 1;
  n->hash = mix(2, 0);
  return Term(std::move(n));
}

Term Term::proj(std::size_t index, std::size_t arity) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Proj;
  n->a = index;
  n->b = arity;
  if (arity == 0 || index == 0 || index > arity) {
    n->error_message = "projection P(" + std::to_string(index) + "," + std::to_string(arity) +
                       ") requires 1 <= i <= n";
  } else {
    n->arity = arity;
  }
  n->hash = mix(mix(3, index), arity);
  return Term(std::move(n));
}

Term Term::comp(Term outer, std::vector<Term> inners) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Comp;
  n->children.reserve(inners.size() + 1);
  n->children.push_back(std::move(outer));
  for (auto& t : inners) n->children.push_back(std::move(t));

  const Node& o = *n->children[0].node_;
  std::size_t h = mix(4, n->children.size());
  for (const Term& c : n->children) {
    n->size += c.node_->size;
    n->depth = std::max(n->depth, c.node_->depth + 1);
    h = mix(h, c.node_->hash);
  }
  n->hash = h;

  if (o.arity == 0) {
    n->error_path = join_path("outer", o.error_path);
    n->error_message = o.error_message;
  } else if (n->children.size() == 1) {
    n->error_message = "composition needs at least one inner term";
  } else if (n->children.size() - 1 != o.arity) {
    n->error_message = "composition outer arity " + std::to_string(o.arity) + " but " +
                       std::to_string(n->children.size() - 1) + " inner terms";
  } else {
    std::size_t shared = 0;
    for (std::size_t k = 1; k < n->children.size(); ++k) {
      const Node& c = *n->children[k].node_;
      const std::string here = "inner[" + std::to_string(k - 1) + "]";
      if (c.arity == 0) {
        n->error_path = join_path(here, c.error_path);
        n->error_message = c.error_message;
        return Term(std::move(n));
      }
      if (shared == 0) {
        shared = c.arity;
      } else if (c.arity != shared) {
        n->error_path = here;
        n->error_message = "inner arity " + std::to_string(c.arity) +
                           " differs from first inner arity " + std::to_string(shared);
        return Term(std::move(n));
      }
    }
    n->arity = shared;
  }
  return Term(std::move(n));
}

Term Term::prim_rec(Term base, Term step) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::PrimRec;
  n->children = {std::move(base), std::move(step)};
  const Node& b = *n->children[0].node_;
  const Node& s = *n->children[1].node_;
  n->size = 1 + b.size + s.size;
  n->depth = 1 + std::max(b.depth, s.depth);
  n->hash = mix(mix(5, b.hash), s.hash);

  if (b.arity == 0) {
    n->error_path = join_path("base", b.error_path);
    n->error_message = b.error_message;
  } else if (s.arity == 0) {
    n->error_path = join_path("step", s.error_path);
    n->error_message = s.error_message;
  } else if (s.arity != b.arity + 2) {
    n->error_message = "recursion step arity " + std::to_string(s.arity) +
                       " must equal base arity " + std::to_string(b.arity) + " + 2";
  } else {
    n->arity = b.arity + 1;
  }
  return Term(std::move(n));
}

TermKind Term::kind() const noexcept { return node_->kind; }

std::size_t Term::arity() const {
  validate();
  return node_->arity;
}

bool Term::well_formed() const noexcept { return node_->arity != 0; }

void Term::validate() const {
  if (node_->arity == 0) throw ValidationError(node_->error_path, node_->error_message);
}

std::size_t Term::declared_arity() const noexcept {
  return node_->kind == TermKind::Proj ? node_->b : node_->a;
}

std::size_t Term::proj_index() const noexcept { return node_->a; }

const Term& Term::outer() const {
  if (node_->kind != TermKind::Comp) throw std::logic_error("outer() on non-composition");
  return node_->children[0];
}

std::span<const Term> Term::inners() const {
  if (node_->kind != TermKind::Comp) throw std::logic_error("inners() on non-composition");
  return std::span<const Term>(node_->children).subspan(1);
}

const Term& Term::base() const {
  if (node_->kind != TermKind::PrimRec) throw std::logic_error("base() on non-recursion");
  return node_->children[0];
}

const Term& Term::step() const {
  if (node_->kind != TermKind::PrimRec) throw std::logic_error("step() on non-recursion");
  return node_->children[1];
}

std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::depth() const noexcept { return node_->depth; }
std::size_t Term::hash() const noexcept { return node_->hash; }

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind || a.hash != b.hash || a.size != b.size || a.a != b.a || a.b != b.b ||
      a.children.size() != b.children.size()) {
    return false;
  }
  return std::equal(a.children.begin(), a.children.end(), b.children.begin());
}

std::string to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Zero: return "Z";
    case TermKind::Succ: return "S";
    case TermKind::Proj: return "P";
    case TermKind::Comp: return "C";
    case TermKind::PrimRec: return "R";
  }
  return "?";
}

}  // namespace prm
