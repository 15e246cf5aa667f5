#pragma once

// Torifications and constructible torifications as expression trees.
//
// A TorifExpr is built from tori G_m^d by disjoint unions, products and
// complements. Its atomic pieces are the tori it is ultimately made of: a
// product's pieces are tuples of factor pieces (first factor most
// significant), a complement has the pieces of its ambient expression.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f1kit/motive.hpp"
#include "f1kit/treeop.hpp"

namespace f1kit {

class TorifExpr {
 public:
  enum class Kind { Torus, DisjointUnion, Product, Complement };

  static TorifExpr torus(int dim);
  static TorifExpr disjoint_union(std::vector<TorifExpr> parts);
  static TorifExpr product(std::vector<TorifExpr> factors);
  /// assignment[i] is the ambient atomic piece receiving removed atomic piece i.
  static TorifExpr complement(TorifExpr ambient, TorifExpr removed, std::vector<std::size_t> assignment);
  /// Assigns every removed piece to the first ambient piece of maximal dimension.
  static TorifExpr complement(TorifExpr ambient, TorifExpr removed);

  Kind kind() const;
  /// Torus only.
  int torus_dim() const;
  /// Parts of a union or factors of a product.
  const std::vector<TorifExpr>& operands() const;
  /// Complement only.
  const TorifExpr& ambient() const;
  const TorifExpr& removed() const;
  const std::vector<std::size_t>& assignment() const;

  /// Maximal atomic piece dimension; -1 for an empty union.
  int dimension() const;
  std::uint64_t atom_count() const;
  int atom_dim(std::uint64_t index) const;
  /// Number of atomic pieces of each dimension, index = dimension.
  const std::vector<std::uint64_t>& dim_signature() const;

  friend bool operator==(const TorifExpr& a, const TorifExpr& b);

 private:
  struct Node;
  explicit TorifExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Validation {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

/// Recursively checks that every complement assigns each removed piece to an
/// existing ambient piece of strictly larger dimension.
Validation validate(const TorifExpr& e);

/// Throws std::invalid_argument if e is not valid.
MotClass eval_class(const TorifExpr& e);

struct Piece {
  std::string label;
  TorifExpr expr;

  friend bool operator==(const Piece&, const Piece&) = default;
};

class ConstructibleTorification {
 public:
  /// Every piece must be valid.
  explicit ConstructibleTorification(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const MotClass& total_class() const { return total_class_; }
  bool is_f1_constructible() const { return is_effective_torus_class(total_class_); }
  /// Sum of eval_class over the pieces, bypassing the cache.
  MotClass recompute_class() const;

 private:
  std::vector<Piece> pieces_;
  MotClass total_class_;
};

/// One item of a selection: a whole piece, or a sub-expression `part` of it.
struct SelectionItem {
  std::size_t piece;
  std::optional<TorifExpr> part;
};
using PieceSelection = std::vector<SelectionItem>;

/// True iff the selection is a set of whole pieces. Throws
/// std::invalid_argument if an item does not lie within ct.
bool is_strongly_complemented(const ConstructibleTorification& ct, const PieceSelection& sub);
MotClass selection_class(const ConstructibleTorification& ct, const PieceSelection& sub);

/// Cells A^k, k = 0..d, each split into the C(k,j) coordinate tori of dim j.
ConstructibleTorification torify_proj_space(int d);

/// Tree of P^1's: the root gives {pt, pt, G_m}, every other vertex {pt, G_m}.
ConstructibleTorification torify_tree_curve(const RootedTree& tau);

/// Single piece modelling the open stratum as a product of a torification of
/// P^{d-1} (d >= 2) and the factors (A^d minus two points) minus k points,
/// k = 0..n-3. Its class is open_stratum_class(d, n).
ConstructibleTorification constructible_open_stratum(int d, int n);

/// Replaces each center piece Y by Y x P^{codim-1}. Throws
/// std::invalid_argument unless the center is strongly complemented.
ConstructibleTorification blowup_decomposition(const ConstructibleTorification& ct, const PieceSelection& center,
                                               int codim);

enum class EquivLevel { Strong, Weak };

/// Strong: identical labeled pieces. Weak: equal class and equal numbers of
/// atomic pieces in every dimension.
bool equiv_shadow(const ConstructibleTorification& a, const ConstructibleTorification& b, EquivLevel level);

// {"op":"torus","dim":d} | {"op":"union","parts":[...]} | {"op":"product","factors":[...]}
// | {"op":"complement","ambient":e,"removed":e,"assignment":[...]}
nlohmann::ordered_json to_json(const TorifExpr& e);
TorifExpr torif_expr_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ConstructibleTorification& ct, Basis basis = Basis::T);

}  // namespace f1kit
