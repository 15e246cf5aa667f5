#include "f1kit/torif.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace f1kit {

struct TorifExpr::Node {
  Kind kind;
  int dim = 0;                           // torus
  std::vector<TorifExpr> operands;       // union parts / product factors / {ambient, removed}
  std::vector<std::size_t> assignment;   // complement
  std::vector<std::uint64_t> signature;  // atom counts by dimension
  std::uint64_t atoms = 0;
};

namespace {

std::vector<std::uint64_t> signature_product(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::uint64_t total(const std::vector<std::uint64_t>& sig) {
  std::uint64_t t = 0;
  for (auto c : sig) t += c;
  return t;
}

}  // namespace

TorifExpr TorifExpr::torus(int dim) {
  if (dim < 0) throw std::invalid_argument("Torus: dimension must be >= 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Torus;
  n->dim = dim;
  n->signature.assign(static_cast<std::size_t>(dim) + 1, 0);
  n->signature.back() = 1;
  n->atoms = 1;
  return TorifExpr(std::move(n));
}

TorifExpr TorifExpr::disjoint_union(std::vector<TorifExpr> parts) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DisjointUnion;
  for (const auto& p : parts) {
    const auto& s = p.dim_signature();
    if (s.size() > n->signature.size()) n->signature.resize(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) n->signature[i] += s[i];
  }
  n->atoms = total(n->signature);
  n->operands = std::move(parts);
  return TorifExpr(std::move(n));
}

TorifExpr TorifExpr::product(std::vector<TorifExpr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->signature = {1};
  for (const auto& f : factors) n->signature = signature_product(n->signature, f.dim_signature());
  n->atoms = total(n->signature);
  n->operands = std::move(factors);
  return TorifExpr(std::move(n));
}

TorifExpr TorifExpr::complement(TorifExpr ambient, TorifExpr removed, std::vector<std::size_t> assignment) {
  if (assignment.size() != removed.atom_count()) {
    throw std::invalid_argument("Complement: assignment has " + std::to_string(assignment.size()) + " entries for " +
                                std::to_string(removed.atom_count()) + " removed pieces");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Complement;
  n->signature = ambient.dim_signature();
  n->atoms = ambient.atom_count();
  n->operands = {std::move(ambient), std::move(removed)};
  n->assignment = std::move(assignment);
  return TorifExpr(std::move(n));
}

TorifExpr TorifExpr::complement(TorifExpr ambient, TorifExpr removed) {
  std::size_t target = 0;
  int best = -1;
  for (std::uint64_t i = 0; i < ambient.atom_count(); ++i) {
    if (ambient.atom_dim(i) > best) {
      best = ambient.atom_dim(i);
      target = static_cast<std::size_t>(i);
    }
  }
  std::vector<std::size_t> assignment(static_cast<std::size_t>(removed.atom_count()), target);
  return complement(std::move(ambient), std::move(removed), std::move(assignment));
}

TorifExpr::Kind TorifExpr::kind() const { return node_->kind; }

int TorifExpr::torus_dim() const {
  if (kind() != Kind::Torus) throw std::logic_error("TorifExpr: not a torus");
  return node_->dim;
}

const std::vector<TorifExpr>& TorifExpr::operands() const {
  if (kind() != Kind::DisjointUnion && kind() != Kind::Product) throw std::logic_error("TorifExpr: no operands");
  return node_->operands;
}

const TorifExpr& TorifExpr::ambient() const {
  if (kind() != Kind::Complement) throw std::logic_error("TorifExpr: not a complement");
  return node_->operands[0];
}

const TorifExpr& TorifExpr::removed() const {
  if (kind() != Kind::Complement) throw std::logic_error("TorifExpr: not a complement");
  return node_->operands[1];
}

const std::vector<std::size_t>& TorifExpr::assignment() const {
  if (kind() != Kind::Complement) throw std::logic_error("TorifExpr: not a complement");
  return node_->assignment;
}

int TorifExpr::dimension() const { return static_cast<int>(node_->signature.size()) - 1; }

std::uint64_t TorifExpr::atom_count() const { return node_->atoms; }

const std::vector<std::uint64_t>& TorifExpr::dim_signature() const { return node_->signature; }

int TorifExpr::atom_dim(std::uint64_t index) const {
  if (index >= atom_count()) throw std::out_of_range("TorifExpr: atomic piece index out of range");
  switch (kind()) {
    case Kind::Torus:
      return node_->dim;
    case Kind::Complement:
      return ambient().atom_dim(index);
    case Kind::DisjointUnion:
      for (const auto& p : node_->operands) {
        if (index < p.atom_count()) return p.atom_dim(index);
        index -= p.atom_count();
      }
      break;
    case Kind::Product: {
      int dim = 0;
      for (auto it = node_->operands.rbegin(); it != node_->operands.rend(); ++it) {
        dim += it->atom_dim(index % it->atom_count());
        index /= it->atom_count();
      }
      return dim;
    }
  }
  throw std::logic_error("TorifExpr: unreachable");
}

bool operator==(const TorifExpr& a, const TorifExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  return a.node_->dim == b.node_->dim && a.node_->assignment == b.node_->assignment &&
         a.node_->operands == b.node_->operands;
}

namespace {

void validate_into(const TorifExpr& e, const std::string& path, Validation& out) {
  switch (e.kind()) {
    case TorifExpr::Kind::Torus:
      return;
    case TorifExpr::Kind::DisjointUnion:
    case TorifExpr::Kind::Product: {
      const auto& ops = e.operands();
      for (std::size_t i = 0; i < ops.size(); ++i) validate_into(ops[i], path + "/" + std::to_string(i), out);
      return;
    }
    case TorifExpr::Kind::Complement: {
      validate_into(e.ambient(), path + "/ambient", out);
      validate_into(e.removed(), path + "/removed", out);
      const auto& as = e.assignment();
      for (std::size_t i = 0; i < as.size(); ++i) {
        const std::string where = path + ": removed piece " + std::to_string(i);
        if (as[i] >= e.ambient().atom_count()) {
          out.ok = false;
          out.diagnostics.push_back(where + " assigned to missing ambient piece " + std::to_string(as[i]));
          continue;
        }
        const int rd = e.removed().atom_dim(i);
        const int ad = e.ambient().atom_dim(as[i]);
        if (rd >= ad) {
          out.ok = false;
          out.diagnostics.push_back(where + " of dim " + std::to_string(rd) + " assigned to ambient piece " +
                                    std::to_string(as[i]) + " of dim " + std::to_string(ad));
        }
      }
      return;
    }
  }
}

MotClass eval_unchecked(const TorifExpr& e) {
  switch (e.kind()) {
    case TorifExpr::Kind::Torus:
      return MotClass::T().pow(static_cast<unsigned>(e.torus_dim()));
    case TorifExpr::Kind::DisjointUnion: {
      MotClass sum;
      for (const auto& p : e.operands()) sum += eval_unchecked(p);
      return sum;
    }
    case TorifExpr::Kind::Product: {
      MotClass prod(1);
      for (const auto& f : e.operands()) prod *= eval_unchecked(f);
      return prod;
    }
    case TorifExpr::Kind::Complement:
      return eval_unchecked(e.ambient()) - eval_unchecked(e.removed());
  }
  throw std::logic_error("eval_class: unreachable");
}

}  // namespace

Validation validate(const TorifExpr& e) {
  Validation v;
  validate_into(e, "", v);
  return v;
}

MotClass eval_class(const TorifExpr& e) {
  const auto v = validate(e);
  if (!v.ok) throw std::invalid_argument("eval_class: invalid complement" + v.diagnostics.front());
  return eval_unchecked(e);
}

// ---------------------------------------------------------------------------

ConstructibleTorification::ConstructibleTorification(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  total_class_ = recompute_class();
}

MotClass ConstructibleTorification::recompute_class() const {
  MotClass sum;
  for (const auto& p : pieces_) sum += eval_class(p.expr);
  return sum;
}

namespace {

void check_selection(const ConstructibleTorification& ct, const PieceSelection& sub) {
  for (const auto& item : sub) {
    if (item.piece >= ct.pieces().size()) {
      throw std::invalid_argument("selection: piece " + std::to_string(item.piece) + " not in torification");
    }
    if (item.part) {
      if (!validate(*item.part).ok) throw std::invalid_argument("selection: invalid part expression");
      if (item.part->dimension() > ct.pieces()[item.piece].expr.dimension()) {
        throw std::invalid_argument("selection: part exceeds the dimension of piece " + std::to_string(item.piece));
      }
    }
  }
}

bool is_whole(const ConstructibleTorification& ct, const SelectionItem& item) {
  return !item.part || *item.part == ct.pieces()[item.piece].expr;
}

}  // namespace

bool is_strongly_complemented(const ConstructibleTorification& ct, const PieceSelection& sub) {
  check_selection(ct, sub);
  std::set<std::size_t> seen;
  for (const auto& item : sub) {
    if (!is_whole(ct, item) || !seen.insert(item.piece).second) return false;
  }
  return true;
}

MotClass selection_class(const ConstructibleTorification& ct, const PieceSelection& sub) {
  check_selection(ct, sub);
  MotClass sum;
  for (const auto& item : sub) sum += eval_class(item.part ? *item.part : ct.pieces()[item.piece].expr);
  return sum;
}

namespace {

std::string subset_label(unsigned mask, int k) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < k; ++i) {
    if (mask & (1u << i)) {
      if (!first) s += ',';
      s += std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

TorifExpr union_of(const ConstructibleTorification& ct) {
  std::vector<TorifExpr> parts;
  for (const auto& p : ct.pieces()) parts.push_back(p.expr);
  return TorifExpr::disjoint_union(std::move(parts));
}

TorifExpr collapse_union(std::vector<TorifExpr> parts) {
  if (parts.size() == 1) return parts.front();
  return TorifExpr::disjoint_union(std::move(parts));
}

}  // namespace

ConstructibleTorification torify_proj_space(int d) {
  if (d < 0) throw std::invalid_argument("torify_proj_space: d must be >= 0");
  if (d > 20) throw std::invalid_argument("torify_proj_space: d too large");
  std::vector<Piece> pieces;
  for (int k = 0; k <= d; ++k) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      pieces.push_back({"A" + std::to_string(k) + ":" + subset_label(mask, k),
                        TorifExpr::torus(std::popcount(mask))});
    }
  }
  return ConstructibleTorification(std::move(pieces));
}

ConstructibleTorification torify_tree_curve(const RootedTree& tau) {
  if (!is_stable(tau)) throw std::invalid_argument("torify_tree_curve: tree is not stable");
  std::vector<Piece> pieces;
  const auto root = index_of(tau.root_vertex());
  pieces.push_back({"v" + std::to_string(root) + ":0", TorifExpr::torus(0)});
  pieces.push_back({"v" + std::to_string(root) + ":inf", TorifExpr::torus(0)});
  pieces.push_back({"v" + std::to_string(root) + ":Gm", TorifExpr::torus(1)});
  for (std::size_t v = 0; v < tau.vertex_count(); ++v) {
    if (v == root) continue;
    pieces.push_back({"v" + std::to_string(v) + ":pt", TorifExpr::torus(0)});
    pieces.push_back({"v" + std::to_string(v) + ":Gm", TorifExpr::torus(1)});
  }
  return ConstructibleTorification(std::move(pieces));
}

ConstructibleTorification constructible_open_stratum(int d, int n) {
  if (d < 1) throw std::invalid_argument("constructible_open_stratum: d must be >= 1");
  if (n < 2) throw std::invalid_argument("constructible_open_stratum: n must be >= 2");
  if (d > 10) throw std::invalid_argument("constructible_open_stratum: d too large");
  std::vector<TorifExpr> factors;
  if (d >= 2) factors.push_back(union_of(torify_proj_space(d - 1)));

  // Coordinate tori of A^d other than the origin and the open torus.
  std::vector<TorifExpr> boundary_tori;
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) boundary_tori.push_back(TorifExpr::torus(std::popcount(mask)));

  for (int k = 0; k <= n - 3; ++k) {
    // A^d minus the origin, minus the point 1, minus k further points.
    std::vector<TorifExpr> points(static_cast<std::size_t>(k) + 1, TorifExpr::torus(0));
    auto open_part = TorifExpr::complement(TorifExpr::torus(d), collapse_union(std::move(points)));
    auto parts = boundary_tori;
    parts.push_back(std::move(open_part));
    factors.push_back(collapse_union(std::move(parts)));
  }
  TorifExpr expr = factors.size() == 1 ? factors.front() : TorifExpr::product(std::move(factors));
  return ConstructibleTorification({{"TH(" + std::to_string(d) + "," + std::to_string(n) + ")", std::move(expr)}});
}

ConstructibleTorification blowup_decomposition(const ConstructibleTorification& ct, const PieceSelection& center,
                                               int codim) {
  if (codim < 1) throw std::invalid_argument("blowup_decomposition: codim must be >= 1");
  if (!is_strongly_complemented(ct, center)) {
    throw std::invalid_argument("blowup_decomposition: center is not strongly complemented");
  }
  std::vector<bool> in_center(ct.pieces().size(), false);
  for (const auto& item : center) in_center[item.piece] = true;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < ct.pieces().size(); ++i) {
    if (!in_center[i]) pieces.push_back(ct.pieces()[i]);
  }
  const TorifExpr fiber = union_of(torify_proj_space(codim - 1));
  for (const auto& item : center) {
    const Piece& p = ct.pieces()[item.piece];
    pieces.push_back({"E:" + p.label, TorifExpr::product({p.expr, fiber})});
  }
  return ConstructibleTorification(std::move(pieces));
}

namespace {

std::vector<std::uint64_t> total_signature(const ConstructibleTorification& ct) {
  std::vector<std::uint64_t> sig;
  for (const auto& p : ct.pieces()) {
    const auto& s = p.expr.dim_signature();
    if (s.size() > sig.size()) sig.resize(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) sig[i] += s[i];
  }
  return sig;
}

}  // namespace

bool equiv_shadow(const ConstructibleTorification& a, const ConstructibleTorification& b, EquivLevel level) {
  if (a.total_class() != b.total_class()) return false;
  if (level == EquivLevel::Strong) return a.pieces() == b.pieces();
  return total_signature(a) == total_signature(b);
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const TorifExpr& e) {
  nlohmann::ordered_json j;
  switch (e.kind()) {
    case TorifExpr::Kind::Torus:
      j["op"] = "torus";
      j["dim"] = e.torus_dim();
      break;
    case TorifExpr::Kind::DisjointUnion:
    case TorifExpr::Kind::Product: {
      const bool is_union = e.kind() == TorifExpr::Kind::DisjointUnion;
      j["op"] = is_union ? "union" : "product";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& o : e.operands()) arr.push_back(to_json(o));
      j[is_union ? "parts" : "factors"] = std::move(arr);
      break;
    }
    case TorifExpr::Kind::Complement:
      j["op"] = "complement";
      j["ambient"] = to_json(e.ambient());
      j["removed"] = to_json(e.removed());
      j["assignment"] = e.assignment();
      break;
  }
  return j;
}

TorifExpr torif_expr_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    throw std::invalid_argument("torif expression: expected an object with a string \"op\"");
  }
  const std::string op = j["op"];
  auto list = [&](const char* key) {
    std::vector<TorifExpr> out;
    if (!j.contains(key) || !j[key].is_array()) {
      throw std::invalid_argument(std::string("torif expression: missing array \"") + key + "\"");
    }
    for (const auto& x : j[key]) out.push_back(torif_expr_from_json(x));
    return out;
  };
  if (op == "torus") {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
      throw std::invalid_argument("torif expression: torus needs an integer \"dim\"");
    }
    return TorifExpr::torus(j["dim"].get<int>());
  }
  if (op == "union") return TorifExpr::disjoint_union(list("parts"));
  if (op == "product") return TorifExpr::product(list("factors"));
  if (op == "complement") {
    if (!j.contains("ambient") || !j.contains("removed")) {
      throw std::invalid_argument("torif expression: complement needs \"ambient\" and \"removed\"");
    }
    auto ambient = torif_expr_from_json(j["ambient"]);
    auto removed = torif_expr_from_json(j["removed"]);
    if (!j.contains("assignment")) return TorifExpr::complement(std::move(ambient), std::move(removed));
    std::vector<std::size_t> assignment;
    for (const auto& a : j["assignment"]) {
      if (!a.is_number_unsigned()) throw std::invalid_argument("torif expression: assignment entries must be >= 0");
      assignment.push_back(a.get<std::size_t>());
    }
    return TorifExpr::complement(std::move(ambient), std::move(removed), std::move(assignment));
  }
  throw std::invalid_argument("torif expression: unknown op \"" + op + "\"");
}

nlohmann::ordered_json to_json(const ConstructibleTorification& ct, Basis basis) {
  nlohmann::ordered_json j;
  auto pieces = nlohmann::ordered_json::array();
  for (const auto& p : ct.pieces()) {
    nlohmann::ordered_json pj;
    pj["label"] = p.label;
    pj["expr"] = to_json(p.expr);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  j["total_class"] = to_json(ct.total_class(), basis);
  j["f1_constructible"] = ct.is_f1_constructible();
  return j;
}

}  // namespace f1kit
