#pragma once

// Oriented rooted trees with labeled input tails, the operad they form under
// grafting and edge contraction, and the classes of the strata of T_{d,n}
// (and M̄_{0,n+1} = T_{1,n}) that stable trees index.
//
// A tree is stored as raw graph data: flags, vertices, the boundary map
// flag -> vertex, and an involution on flags whose 2-cycles are edges and
// whose fixed points are tails. One tail is the root (output); the others
// are inputs carrying distinct integer markings. Orientation toward the
// root is derived on construction.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "f1kit/motive.hpp"
#include "f1kit/permutation.hpp"

namespace f1kit {

enum class FlagId : std::uint32_t {};
enum class VertexId : std::uint32_t {};
using Marking = int;

constexpr std::size_t index_of(FlagId f) { return static_cast<std::size_t>(f); }
constexpr std::size_t index_of(VertexId v) { return static_cast<std::size_t>(v); }

/// Canonical nested form: input labels at a vertex and the subtrees hanging
/// off it, both sorted. Two trees are isomorphic (respecting root and
/// markings) iff their shapes are equal.
struct TreeShape {
  std::vector<Marking> inputs;
  std::vector<TreeShape> children;

  void canonicalize();
  friend bool operator==(const TreeShape& a, const TreeShape& b);
  friend std::strong_ordering operator<=>(const TreeShape& a, const TreeShape& b);
};

class RootedTree {
 public:
  /// Validates every structural invariant; throws std::invalid_argument.
  RootedTree(std::size_t vertex_count, std::vector<VertexId> boundary, std::vector<FlagId> involution,
             FlagId root_tail, std::map<Marking, FlagId> inputs);

  /// Single vertex with the given input markings.
  static RootedTree corolla(const std::vector<Marking>& markings);
  /// Corolla with markings 1..n; corolla(1) is the operad unit.
  static RootedTree corolla(int n);
  static RootedTree from_shape(const TreeShape& shape);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t flag_count() const { return boundary_.size(); }
  std::size_t edge_count() const { return vertex_count_ - 1; }
  std::size_t input_count() const { return inputs_.size(); }

  VertexId boundary(FlagId f) const { return boundary_.at(index_of(f)); }
  FlagId involution(FlagId f) const { return involution_.at(index_of(f)); }
  bool is_tail(FlagId f) const { return involution(f) == f; }
  FlagId root_tail() const { return root_tail_; }
  VertexId root_vertex() const { return boundary(root_tail_); }

  const std::map<Marking, FlagId>& inputs() const { return inputs_; }
  std::vector<Marking> markings() const;
  std::optional<Marking> marking_of(FlagId f) const;
  FlagId input_flag(Marking s) const;

  /// Flags attached to v, ascending.
  const std::vector<FlagId>& flags_at(VertexId v) const { return flags_at_.at(index_of(v)); }
  /// The flag at v pointing toward the root (the root tail at the root vertex).
  FlagId outgoing_flag(VertexId v) const { return outgoing_.at(index_of(v)); }
  std::optional<VertexId> mother(VertexId v) const;
  /// Incoming flags at v: input tails plus edges from children.
  std::size_t in_degree(VertexId v) const { return flags_at(v).size() - 1; }
  /// One flag per edge, the one on the mother's side, ascending.
  std::vector<FlagId> edges() const;

  TreeShape shape() const;

  /// Equality up to isomorphism respecting root and markings.
  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.shape() == b.shape(); }

 private:
  std::size_t vertex_count_;
  std::vector<VertexId> boundary_;
  std::vector<FlagId> involution_;
  FlagId root_tail_;
  std::map<Marking, FlagId> inputs_;

  std::vector<std::vector<FlagId>> flags_at_;
  std::vector<FlagId> outgoing_;
};

/// Matches the root tail of tau with the input tail `input` of sigma. Marking
/// sets (minus the consumed input) must be disjoint.
RootedTree graft(const RootedTree& tau, const RootedTree& sigma, FlagId input);
RootedTree graft_at(const RootedTree& tau, const RootedTree& sigma, Marking input);

/// Contracts the edge containing flag e. Surviving flags keep their relative
/// order, so flag f maps to f minus the number of removed flags below it.
RootedTree contract_edge(const RootedTree& tau, FlagId e);
/// Contracts several edges at once (each given by either of its flags).
RootedTree contract_edges(const RootedTree& tau, const std::vector<FlagId>& edges);

struct GraftedTree {
  RootedTree tree;
  std::vector<FlagId> new_edges;
};

/// Grafts args[k] into the k-th input of tau (inputs ordered by marking) and
/// relabels so the result carries markings 1..sum of arities, block by block.
GraftedTree graft_all(const RootedTree& tau, const std::vector<RootedTree>& args);

/// Operad composition: graft_all followed by contraction of every new edge.
/// Composing corollas yields a corolla.
RootedTree compose(const RootedTree& tau, const std::vector<RootedTree>& args);

/// Stratum composition T_{d,k} x T_{d,n_1} x ... -> T_{d,n_1+...+n_k}:
/// graft_all, contracting only new edges that touch an operad unit.
RootedTree graft_compose(const RootedTree& tau, const std::vector<RootedTree>& args);

/// Every vertex has at least two incoming flags.
bool is_stable(const RootedTree& tau);

/// Class of the rooted tree of P^d's modeled by tau, built root to leaves by
/// blowing up a point and gluing the next P^d along the exceptional divisor.
/// Equals N [P^d] - (N - 1) for N vertices.
MotClass tree_class(const RootedTree& tau, int d);
BigInt tree_points(const RootedTree& tau, int d, const BigInt& m);

/// Relabels markings through an injective map defined on all markings.
RootedTree relabel_markings(const RootedTree& tau, const std::map<Marking, Marking>& relabel);
/// pi must be a bijection of the marking set onto itself.
RootedTree permute_markings(const RootedTree& tau, const std::map<Marking, Marking>& pi);
/// Marking set must be {1..n} with n = pi.size().
RootedTree permute_markings(const RootedTree& tau, const Permutation& pi);
/// Relabels to 1..n preserving the order of markings.
RootedTree standardize_markings(const RootedTree& tau);

/// Removes the input tail marked s, then contracts every vertex left with a
/// single incoming flag. A lone unit corolla is left as is.
RootedTree forget_marking(const RootedTree& tau, Marking s);

/// All stable trees with markings 1..n, one per isomorphism class, sorted by
/// shape. Supported for 2 <= n <= 8.
std::vector<TreeShape> enumerate_stable_shapes(int n);
std::vector<RootedTree> enumerate_stable_trees(int n);

struct Stratum {
  RootedTree tree;
  MotClass open_class;  ///< product of open_stratum_class over vertices
};

std::vector<Stratum> strata(int d, int n);
/// Sum of the open-stratum classes over all stable trees with n inputs.
MotClass strata_sum(int d, int n);

/// "(1,2,(3,4))": inputs first, then children.
std::string to_string(const TreeShape& shape);
nlohmann::ordered_json to_json(const TreeShape& shape);
TreeShape tree_shape_from_json(const nlohmann::ordered_json& j);

}  // namespace f1kit
