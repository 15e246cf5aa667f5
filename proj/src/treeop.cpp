#include "f1kit/treeop.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "f1kit/genseries.hpp"

namespace f1kit {

// ---------------------------------------------------------------------------
// TreeShape

void TreeShape::canonicalize() {
  std::sort(inputs.begin(), inputs.end());
  for (auto& c : children) c.canonicalize();
  std::sort(children.begin(), children.end());
}

bool operator==(const TreeShape& a, const TreeShape& b) {
  return a.inputs == b.inputs && a.children == b.children;
}

std::strong_ordering operator<=>(const TreeShape& a, const TreeShape& b) {
  if (auto c = a.inputs <=> b.inputs; c != 0) return c;
  const std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.children[i] <=> b.children[i]; c != 0) return c;
  }
  return a.children.size() <=> b.children.size();
}

// ---------------------------------------------------------------------------
// RootedTree

RootedTree::RootedTree(std::size_t vertex_count, std::vector<VertexId> boundary, std::vector<FlagId> involution,
                       FlagId root_tail, std::map<Marking, FlagId> inputs)
    : vertex_count_(vertex_count),
      boundary_(std::move(boundary)),
      involution_(std::move(involution)),
      root_tail_(root_tail),
      inputs_(std::move(inputs)) {
  const std::size_t nf = boundary_.size();
  if (vertex_count_ == 0) throw std::invalid_argument("RootedTree: no vertices");
  if (involution_.size() != nf) throw std::invalid_argument("RootedTree: boundary and involution sizes differ");
  for (std::size_t f = 0; f < nf; ++f) {
    if (index_of(boundary_[f]) >= vertex_count_) throw std::invalid_argument("RootedTree: boundary out of range");
    const std::size_t g = index_of(involution_[f]);
    if (g >= nf || index_of(involution_[g]) != f) throw std::invalid_argument("RootedTree: j is not an involution");
    if (g != f && boundary_[g] == boundary_[f]) throw std::invalid_argument("RootedTree: loop edge");
  }
  if (index_of(root_tail_) >= nf || !is_tail(root_tail_)) throw std::invalid_argument("RootedTree: bad root tail");

  std::size_t tails = 0;
  std::size_t edge_flags = 0;
  for (std::size_t f = 0; f < nf; ++f) (index_of(involution_[f]) == f ? tails : edge_flags) += 1;
  if (vertex_count_ - edge_flags / 2 != 1) throw std::invalid_argument("RootedTree: |V| - |E| != 1");
  std::set<std::size_t> input_flags;
  for (const auto& [label, f] : inputs_) {
    if (index_of(f) >= nf || !is_tail(f) || f == root_tail_ || !input_flags.insert(index_of(f)).second) {
      throw std::invalid_argument("RootedTree: marking " + std::to_string(label) + " is not on a distinct input tail");
    }
  }
  if (input_flags.size() != tails - 1) throw std::invalid_argument("RootedTree: unmarked input tail");

  flags_at_.assign(vertex_count_, {});
  for (std::size_t f = 0; f < nf; ++f) flags_at_[index_of(boundary_[f])].push_back(static_cast<FlagId>(f));

  // Orient toward the root; also checks connectivity.
  outgoing_.assign(vertex_count_, root_tail_);
  std::vector<bool> seen(vertex_count_, false);
  std::vector<VertexId> stack{root_vertex()};
  seen[index_of(root_vertex())] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (FlagId f : flags_at(v)) {
      if (is_tail(f)) continue;
      const FlagId g = this->involution(f);
      const VertexId w = this->boundary(g);
      if (seen[index_of(w)]) continue;
      seen[index_of(w)] = true;
      outgoing_[index_of(w)] = g;
      ++reached;
      stack.push_back(w);
    }
  }
  if (reached != vertex_count_) throw std::invalid_argument("RootedTree: graph is not connected");
}

RootedTree RootedTree::corolla(const std::vector<Marking>& markings) {
  std::vector<VertexId> boundary(markings.size() + 1, VertexId{0});
  std::vector<FlagId> involution;
  for (std::size_t f = 0; f <= markings.size(); ++f) involution.push_back(static_cast<FlagId>(f));
  std::map<Marking, FlagId> inputs;
  for (std::size_t i = 0; i < markings.size(); ++i) {
    if (!inputs.emplace(markings[i], static_cast<FlagId>(i + 1)).second) {
      throw std::invalid_argument("corolla: duplicate marking " + std::to_string(markings[i]));
    }
  }
  return RootedTree(1, std::move(boundary), std::move(involution), FlagId{0}, std::move(inputs));
}

RootedTree RootedTree::corolla(int n) {
  if (n < 0) throw std::invalid_argument("corolla: negative arity");
  std::vector<Marking> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 1);
  return corolla(m);
}

namespace {

struct Builder {
  std::size_t vertices = 0;
  std::vector<VertexId> boundary;
  std::vector<FlagId> involution;
  std::map<Marking, FlagId> inputs;

  VertexId new_vertex() { return static_cast<VertexId>(vertices++); }
  FlagId new_flag(VertexId v) {
    const auto f = static_cast<FlagId>(boundary.size());
    boundary.push_back(v);
    involution.push_back(f);
    return f;
  }
  void pair(FlagId a, FlagId b) {
    involution[index_of(a)] = b;
    involution[index_of(b)] = a;
  }
  void build(const TreeShape& s, VertexId v) {
    for (Marking m : s.inputs) {
      if (!inputs.emplace(m, new_flag(v)).second) {
        throw std::invalid_argument("tree shape: duplicate marking " + std::to_string(m));
      }
    }
    for (const auto& child : s.children) {
      const FlagId up = new_flag(v);
      const VertexId w = new_vertex();
      pair(up, new_flag(w));
      build(child, w);
    }
  }
};

}  // namespace

RootedTree RootedTree::from_shape(const TreeShape& shape) {
  Builder b;
  const VertexId root = b.new_vertex();
  const FlagId root_tail = b.new_flag(root);
  b.build(shape, root);
  return RootedTree(b.vertices, std::move(b.boundary), std::move(b.involution), root_tail, std::move(b.inputs));
}

std::vector<Marking> RootedTree::markings() const {
  std::vector<Marking> out;
  out.reserve(inputs_.size());
  for (const auto& [label, f] : inputs_) out.push_back(label);
  return out;
}

std::optional<Marking> RootedTree::marking_of(FlagId f) const {
  for (const auto& [label, g] : inputs_) {
    if (g == f) return label;
  }
  return std::nullopt;
}

FlagId RootedTree::input_flag(Marking s) const {
  auto it = inputs_.find(s);
  if (it == inputs_.end()) throw std::invalid_argument("no input tail marked " + std::to_string(s));
  return it->second;
}

std::optional<VertexId> RootedTree::mother(VertexId v) const {
  const FlagId out = outgoing_flag(v);
  if (is_tail(out)) return std::nullopt;
  return boundary(involution(out));
}

std::vector<FlagId> RootedTree::edges() const {
  std::vector<FlagId> out;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    const FlagId f = outgoing_[v];
    if (!is_tail(f)) out.push_back(involution(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeShape RootedTree::shape() const {
  auto rec = [this](auto&& self, VertexId v) -> TreeShape {
    TreeShape s;
    for (FlagId f : flags_at(v)) {
      if (f == outgoing_flag(v)) continue;
      if (is_tail(f)) {
        s.inputs.push_back(*marking_of(f));
      } else {
        s.children.push_back(self(self, boundary(involution(f))));
      }
    }
    std::sort(s.inputs.begin(), s.inputs.end());
    std::sort(s.children.begin(), s.children.end());
    return s;
  };
  return rec(rec, root_vertex());
}

// ---------------------------------------------------------------------------
// Structural edits

namespace {

// Drops flags and merges vertices (vertices with equal class id are merged;
// classes left without flags disappear). Surviving flags keep their order.
RootedTree rebuild(const RootedTree& t, const std::vector<bool>& drop, const std::vector<std::size_t>& vertex_class) {
  const std::size_t nf = t.flag_count();
  std::vector<std::size_t> new_flag(nf, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t f = 0; f < nf; ++f) {
    if (!drop[f]) new_flag[f] = next++;
  }
  std::unordered_map<std::size_t, std::size_t> class_index;
  std::vector<VertexId> boundary;
  std::vector<FlagId> involution;
  for (std::size_t f = 0; f < nf; ++f) {
    if (drop[f]) continue;
    const std::size_t cls = vertex_class[index_of(t.boundary(static_cast<FlagId>(f)))];
    auto [it, inserted] = class_index.emplace(cls, class_index.size());
    boundary.push_back(static_cast<VertexId>(it->second));
    const std::size_t g = index_of(t.involution(static_cast<FlagId>(f)));
    if (drop[g]) throw std::invalid_argument("rebuild: dropping half of an edge");
    involution.push_back(static_cast<FlagId>(new_flag[g]));
  }
  if (drop[index_of(t.root_tail())]) throw std::invalid_argument("rebuild: cannot drop the root tail");
  std::map<Marking, FlagId> inputs;
  for (const auto& [label, f] : t.inputs()) {
    if (!drop[index_of(f)]) inputs.emplace(label, static_cast<FlagId>(new_flag[index_of(f)]));
  }
  return RootedTree(class_index.size(), std::move(boundary), std::move(involution),
                    static_cast<FlagId>(new_flag[index_of(t.root_tail())]), std::move(inputs));
}

std::vector<std::size_t> identity_classes(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

struct Layout {
  std::size_t vertices = 0;
  std::vector<VertexId> boundary;
  std::vector<FlagId> involution;

  // Appends t with offsets; returns the flag offset.
  std::size_t append(const RootedTree& t) {
    const std::size_t foff = boundary.size();
    const std::size_t voff = vertices;
    for (std::size_t f = 0; f < t.flag_count(); ++f) {
      boundary.push_back(static_cast<VertexId>(voff + index_of(t.boundary(static_cast<FlagId>(f)))));
      involution.push_back(static_cast<FlagId>(foff + index_of(t.involution(static_cast<FlagId>(f)))));
    }
    vertices += t.vertex_count();
    return foff;
  }
  void pair(std::size_t a, std::size_t b) {
    involution[a] = static_cast<FlagId>(b);
    involution[b] = static_cast<FlagId>(a);
  }
};

}  // namespace

RootedTree graft(const RootedTree& tau, const RootedTree& sigma, FlagId input) {
  const auto label = sigma.marking_of(input);
  if (index_of(input) >= sigma.flag_count() || !label) {
    throw std::invalid_argument("graft: flag is not an input tail of the target tree");
  }
  Layout lay;
  lay.append(sigma);
  const std::size_t toff = lay.append(tau);
  lay.pair(index_of(input), toff + index_of(tau.root_tail()));

  std::map<Marking, FlagId> inputs;
  for (const auto& [m, f] : sigma.inputs()) {
    if (m != *label) inputs.emplace(m, f);
  }
  for (const auto& [m, f] : tau.inputs()) {
    if (!inputs.emplace(m, static_cast<FlagId>(toff + index_of(f))).second) {
      throw std::invalid_argument("graft: marking " + std::to_string(m) + " occurs in both trees");
    }
  }
  return RootedTree(lay.vertices, std::move(lay.boundary), std::move(lay.involution), sigma.root_tail(),
                    std::move(inputs));
}

RootedTree graft_at(const RootedTree& tau, const RootedTree& sigma, Marking input) {
  return graft(tau, sigma, sigma.input_flag(input));
}

RootedTree contract_edges(const RootedTree& tau, const std::vector<FlagId>& edges) {
  std::vector<bool> drop(tau.flag_count(), false);
  std::vector<std::size_t> parent = identity_classes(tau.vertex_count());
  for (FlagId e : edges) {
    if (index_of(e) >= tau.flag_count()) throw std::invalid_argument("contract_edge: no such flag");
    if (tau.is_tail(e)) throw std::invalid_argument("contract_edge: flag is a tail, not an edge");
    const FlagId g = tau.involution(e);
    drop[index_of(e)] = drop[index_of(g)] = true;
    const std::size_t a = find_root(parent, index_of(tau.boundary(e)));
    const std::size_t b = find_root(parent, index_of(tau.boundary(g)));
    parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> cls(tau.vertex_count());
  for (std::size_t v = 0; v < cls.size(); ++v) cls[v] = find_root(parent, v);
  return rebuild(tau, drop, cls);
}

RootedTree contract_edge(const RootedTree& tau, FlagId e) { return contract_edges(tau, {e}); }

GraftedTree graft_all(const RootedTree& tau, const std::vector<RootedTree>& args) {
  if (args.size() != tau.input_count()) {
    throw std::invalid_argument("compose: " + std::to_string(args.size()) + " arguments for arity " +
                                std::to_string(tau.input_count()));
  }
  Layout lay;
  lay.append(tau);
  std::map<Marking, FlagId> inputs;
  std::vector<FlagId> new_edges;
  Marking next_label = 1;
  std::size_t k = 0;
  for (const auto& [label, slot] : tau.inputs()) {
    const RootedTree& arg = args[k++];
    const std::size_t off = lay.append(arg);
    lay.pair(index_of(slot), off + index_of(arg.root_tail()));
    new_edges.push_back(slot);
    for (const auto& [m, f] : arg.inputs()) inputs.emplace(next_label++, static_cast<FlagId>(off + index_of(f)));
  }
  RootedTree tree(lay.vertices, std::move(lay.boundary), std::move(lay.involution), tau.root_tail(),
                  std::move(inputs));
  return {std::move(tree), std::move(new_edges)};
}

RootedTree compose(const RootedTree& tau, const std::vector<RootedTree>& args) {
  auto grafted = graft_all(tau, args);
  return contract_edges(grafted.tree, grafted.new_edges);
}

RootedTree graft_compose(const RootedTree& tau, const std::vector<RootedTree>& args) {
  auto grafted = graft_all(tau, args);
  const RootedTree& t = grafted.tree;
  std::vector<FlagId> unit_edges;
  for (FlagId e : grafted.new_edges) {
    if (t.in_degree(t.boundary(e)) == 1 || t.in_degree(t.boundary(t.involution(e))) == 1) unit_edges.push_back(e);
  }
  return contract_edges(t, unit_edges);
}

bool is_stable(const RootedTree& tau) {
  for (std::size_t v = 0; v < tau.vertex_count(); ++v) {
    if (tau.in_degree(static_cast<VertexId>(v)) < 2) return false;
  }
  return true;
}

MotClass tree_class(const RootedTree& tau, int d) {
  if (d < 1) throw std::invalid_argument("tree_class: d must be >= 1");
  if (!is_stable(tau)) throw std::invalid_argument("tree_class: tree is not stable");
  const MotClass pd = proj_class(d);
  const MotClass hyperplane = proj_class(d - 1);
  // Breadth-first from the root: each new vertex blows up a point of its
  // mother and is glued along its hyperplane to the exceptional divisor.
  MotClass cls = pd;
  std::vector<VertexId> queue{tau.root_vertex()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    for (FlagId f : tau.flags_at(v)) {
      if (f == tau.outgoing_flag(v) || tau.is_tail(f)) continue;
      cls = blowup_class(cls, MotClass(1), d);
      cls = cls - hyperplane + pd;
      queue.push_back(tau.boundary(tau.involution(f)));
    }
  }
  return cls;
}

BigInt tree_points(const RootedTree& tau, int d, const BigInt& m) {
  if (m < 0) throw std::invalid_argument("tree_points: m must be >= 0");
  return count_points(tree_class(tau, d), m);
}

RootedTree relabel_markings(const RootedTree& tau, const std::map<Marking, Marking>& relabel) {
  std::map<Marking, FlagId> inputs;
  for (const auto& [m, f] : tau.inputs()) {
    auto it = relabel.find(m);
    if (it == relabel.end()) throw std::invalid_argument("relabel: marking " + std::to_string(m) + " not mapped");
    if (!inputs.emplace(it->second, f).second) throw std::invalid_argument("relabel: map is not injective");
  }
  if (relabel.size() != tau.input_count()) throw std::invalid_argument("relabel: map has extra markings");
  std::vector<VertexId> boundary(tau.flag_count());
  std::vector<FlagId> involution(tau.flag_count());
  for (std::size_t f = 0; f < tau.flag_count(); ++f) {
    boundary[f] = tau.boundary(static_cast<FlagId>(f));
    involution[f] = tau.involution(static_cast<FlagId>(f));
  }
  return RootedTree(tau.vertex_count(), std::move(boundary), std::move(involution), tau.root_tail(),
                    std::move(inputs));
}

RootedTree permute_markings(const RootedTree& tau, const std::map<Marking, Marking>& pi) {
  std::set<Marking> image;
  for (const auto& [from, to] : pi) image.insert(to);
  const auto labels = tau.markings();
  if (pi.size() != labels.size() || !std::equal(labels.begin(), labels.end(), image.begin(), image.end()) ||
      !std::all_of(labels.begin(), labels.end(), [&](Marking m) { return pi.count(m) == 1; })) {
    throw std::invalid_argument("permute_markings: permutation domain does not match the marking set");
  }
  return relabel_markings(tau, pi);
}

RootedTree permute_markings(const RootedTree& tau, const Permutation& pi) {
  std::map<Marking, Marking> m;
  for (int i = 1; i <= pi.size(); ++i) m.emplace(i, pi(i));
  return permute_markings(tau, m);
}

RootedTree standardize_markings(const RootedTree& tau) {
  std::map<Marking, Marking> m;
  Marking next = 1;
  for (const auto& [label, f] : tau.inputs()) m.emplace(label, next++);
  return relabel_markings(tau, m);
}

RootedTree forget_marking(const RootedTree& tau, Marking s) {
  const FlagId tail = tau.input_flag(s);
  if (tau.input_count() == 1) throw std::invalid_argument("forget_marking: cannot forget the only marking");
  std::vector<bool> drop(tau.flag_count(), false);
  drop[index_of(tail)] = true;
  RootedTree t = rebuild(tau, drop, identity_classes(tau.vertex_count()));

  for (;;) {
    std::optional<FlagId> to_contract;
    std::optional<VertexId> to_remove;
    for (std::size_t i = 0; i < t.vertex_count() && !to_contract && !to_remove; ++i) {
      const auto v = static_cast<VertexId>(i);
      const std::size_t in = t.in_degree(v);
      if (in >= 2) continue;
      if (v != t.root_vertex()) {
        if (in == 1) {
          to_contract = t.outgoing_flag(v);
        } else {
          to_remove = v;
        }
      } else if (in == 1) {
        for (FlagId f : t.flags_at(v)) {
          if (f != t.root_tail() && !t.is_tail(f)) to_contract = f;
        }
      }
    }
    if (to_contract) {
      t = contract_edge(t, *to_contract);
    } else if (to_remove) {
      std::vector<bool> d(t.flag_count(), false);
      const FlagId out = t.outgoing_flag(*to_remove);
      d[index_of(out)] = d[index_of(t.involution(out))] = true;
      t = rebuild(t, d, identity_classes(t.vertex_count()));
    } else {
      return t;
    }
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using Mask = std::uint32_t;

class ShapeEnumerator {
 public:
  const std::vector<TreeShape>& on(Mask mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    std::vector<int> elems;
    for (int b = 0; b < 32; ++b) {
      if (mask & (Mask{1} << b)) elems.push_back(b + 1);
    }
    std::set<TreeShape> found;
    std::vector<Mask> blocks;
    partitions(elems, 0, blocks, found);
    auto [it, inserted] = memo_.emplace(mask, std::vector<TreeShape>(found.begin(), found.end()));
    return it->second;
  }

 private:
  void partitions(const std::vector<int>& elems, std::size_t i, std::vector<Mask>& blocks, std::set<TreeShape>& out) {
    if (i == elems.size()) {
      if (blocks.size() >= 2) expand(blocks, 0, TreeShape{}, out);
      return;
    }
    const Mask bit = Mask{1} << (elems[i] - 1);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k] |= bit;
      partitions(elems, i + 1, blocks, out);
      blocks[k] &= ~bit;
    }
    blocks.push_back(bit);
    partitions(elems, i + 1, blocks, out);
    blocks.pop_back();
  }

  void expand(const std::vector<Mask>& blocks, std::size_t k, TreeShape acc, std::set<TreeShape>& out) {
    if (k == blocks.size()) {
      acc.canonicalize();
      out.insert(std::move(acc));
      return;
    }
    const Mask b = blocks[k];
    if ((b & (b - 1)) == 0) {
      int label = 1;
      while (!(b & (Mask{1} << (label - 1)))) ++label;
      acc.inputs.push_back(label);
      expand(blocks, k + 1, std::move(acc), out);
      return;
    }
    // copy: on() may rehash memo_
    const std::vector<TreeShape> subs = on(b);
    for (const auto& sub : subs) {
      TreeShape next = acc;
      next.children.push_back(sub);
      expand(blocks, k + 1, std::move(next), out);
    }
  }

  std::unordered_map<Mask, std::vector<TreeShape>> memo_;
};

}  // namespace

std::vector<TreeShape> enumerate_stable_shapes(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("enumerate_stable_trees: n must be in [2, 8]");
  ShapeEnumerator e;
  return e.on((Mask{1} << n) - 1);
}

std::vector<RootedTree> enumerate_stable_trees(int n) {
  std::vector<RootedTree> out;
  for (const auto& s : enumerate_stable_shapes(n)) out.push_back(RootedTree::from_shape(s));
  return out;
}

std::vector<Stratum> strata(int d, int n) {
  if (d < 1) throw std::invalid_argument("strata: d must be >= 1");
  std::vector<MotClass> open(static_cast<std::size_t>(n) + 1);
  for (int k = 2; k <= n; ++k) open[static_cast<std::size_t>(k)] = open_stratum_class(d, k);
  std::vector<Stratum> out;
  for (auto& tree : enumerate_stable_trees(n)) {
    MotClass cls(1);
    for (std::size_t v = 0; v < tree.vertex_count(); ++v) cls *= open[tree.in_degree(static_cast<VertexId>(v))];
    out.push_back({std::move(tree), std::move(cls)});
  }
  return out;
}

MotClass strata_sum(int d, int n) {
  MotClass total;
  for (const auto& s : strata(d, n)) total += s.open_class;
  return total;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_string(const TreeShape& shape) {
  std::string out = "(";
  bool first = true;
  for (Marking m : shape.inputs) {
    if (!first) out += ',';
    out += std::to_string(m);
    first = false;
  }
  for (const auto& c : shape.children) {
    if (!first) out += ',';
    out += to_string(c);
    first = false;
  }
  return out + ")";
}

nlohmann::ordered_json to_json(const TreeShape& shape) {
  nlohmann::ordered_json j;
  j["inputs"] = shape.inputs;
  auto children = nlohmann::ordered_json::array();
  for (const auto& c : shape.children) children.push_back(to_json(c));
  j["children"] = std::move(children);
  return j;
}

TreeShape tree_shape_from_json(const nlohmann::ordered_json& j) {
  TreeShape s;
  s.inputs = j.at("inputs").get<std::vector<Marking>>();
  for (const auto& c : j.at("children")) s.children.push_back(tree_shape_from_json(c));
  s.canonicalize();
  return s;
}

}  // namespace f1kit
