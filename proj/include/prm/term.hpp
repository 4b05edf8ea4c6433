#ifndef PRM_TERM_HPP
#define PRM_TERM_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prm {

enum class TermKind { Zero, Succ, Proj, Comp, PrimRec };

// Raised when a term violates an arity invariant. path() names the offending
// subterm, e.g. "inner[1]/step".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& message)
      : std::runtime_error(message + " at " + (path.empty() ? "<root>" : path)),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Immutable abstract syntax tree of a primitive recursive function.
//
// Terms are cheap to copy (shared structure). Construction never throws on
// arity mismatches: well-formedness is computed bottom-up when the node is
// built, and reported by arity() / validate(). This lets malformed terms be
// represented (the parser, decoders and tests need that) while keeping every
// evaluator entry point behind a validation check.
//
// Primitive recursion convention: for R(base; step) of arity n+1,
//   R(x1..xn, 0)   = base(x1..xn)
//   R(x1..xn, y+1) = step(x1..xn, y, R(x1..xn, y))
class Term {
 public:
  static Term zero(std::size_t arity);
  static Term succ();
  static Term proj(std::size_t index, std::size_t arity);
  static Term comp(Term outer, std::vector<Term> inners);
  static Term prim_rec(Term base, Term step);

  TermKind kind() const noexcept;

  // Arity of a well-formed term. Throws ValidationError otherwise.
  std::size_t arity() const;
  bool well_formed() const noexcept;
  void validate() const;

  // Zero: declared arity. Proj: (index, arity). Undefined for other kinds.
  std::size_t declared_arity() const noexcept;
  std::size_t proj_index() const noexcept;

  // Comp: outer + inners. PrimRec: base + step.
  const Term& outer() const;
  std::span<const Term> inners() const;
  const Term& base() const;
  const Term& step() const;

  // Number of AST nodes.
  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  // Stable structural hash (used by caches and tests).
  std::size_t hash() const noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(TermKind kind);

}  // namespace prm

template <>
struct std::hash<prm::Term> {
  std::size_t operator()(const prm::Term& t) const noexcept { return t.hash(); }
};

#endif  // PRM_TERM_HPP
