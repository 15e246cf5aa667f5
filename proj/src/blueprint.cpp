#include "f1kit/blueprint.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace f1kit {

namespace {

constexpr int kMaxN = 16;

std::uint32_t full_mask(int n) { return (std::uint32_t{1} << n) - 1; }

void check_n(int n, const char* what) {
  if (n < 4 || n > kMaxN) {
    throw std::invalid_argument(std::string(what) + ": n must be in [4, " + std::to_string(kMaxN) + "]");
  }
}

}  // namespace

SubsetIndex SubsetIndex::from_mask(std::uint32_t mask, int n) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("SubsetIndex: n out of range");
  if (mask & ~full_mask(n)) throw std::invalid_argument("SubsetIndex: element outside {1..n}");
  if (!(mask & 1u)) mask = full_mask(n) & ~mask;
  const int size = std::popcount(mask);
  if (size < 2 || n - size < 2) {
    throw std::invalid_argument("SubsetIndex: both sides of the split need at least two elements");
  }
  return SubsetIndex(mask, n);
}

SubsetIndex SubsetIndex::make(const std::vector<int>& members, int n) {
  std::uint32_t mask = 0;
  for (int i : members) {
    if (i < 1 || i > n) throw std::invalid_argument("SubsetIndex: element " + std::to_string(i) + " outside {1..n}");
    mask |= std::uint32_t{1} << (i - 1);
  }
  return from_mask(mask, n);
}

std::vector<int> SubsetIndex::members() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

int SubsetIndex::size() const { return std::popcount(mask_); }

std::strong_ordering operator<=>(const SubsetIndex& a, const SubsetIndex& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.members() <=> b.members();
}

std::vector<SubsetIndex> index_set(int n) {
  check_n(n, "index_set");
  std::vector<SubsetIndex> out;
  for (std::uint32_t mask = 1; mask <= full_mask(n); mask += 2) {
    const int size = std::popcount(mask);
    if (size >= 2 && n - size >= 2) out.push_back(SubsetIndex::from_mask(mask, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool compatible(const SubsetIndex& a, const SubsetIndex& b) {
  if (a.n() != b.n()) throw std::invalid_argument("compatible: indices for different n");
  const auto x = a.mask();
  const auto y = b.mask();
  return (x & ~y) == 0 || (y & ~x) == 0 || (x | y) == full_mask(a.n());
}

bool is_simplex(const std::vector<SubsetIndex>& sigma, int n) {
  for (const auto& s : sigma) {
    if (s.n() != n) throw std::invalid_argument("is_simplex: index for a different n");
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      if (!compatible(sigma[i], sigma[j])) return false;
    }
  }
  return true;
}

namespace {

// Bron-Kerbosch with pivoting over a graph of at most 64 vertices.
void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x, const std::vector<std::uint64_t>& adj,
                   std::uint64_t& count) {
  if (p == 0 && x == 0) {
    ++count;
    return;
  }
  const int pivot = std::countr_zero(p | x);
  std::uint64_t candidates = p & ~adj[static_cast<std::size_t>(pivot)];
  while (candidates) {
    const int v = std::countr_zero(candidates);
    const std::uint64_t bit = std::uint64_t{1} << v;
    candidates &= ~bit;
    bron_kerbosch(r | bit, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)], adj, count);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace

std::uint64_t count_max_simplexes(int n) {
  if (n < 4 || n > 7) throw std::invalid_argument("count_max_simplexes: n must be in [4, 7]");
  const auto idx = index_set(n);
  std::vector<std::uint64_t> adj(idx.size(), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (i != j && compatible(idx[i], idx[j])) adj[i] |= std::uint64_t{1} << j;
    }
  }
  const std::uint64_t all = idx.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << idx.size()) - 1;
  std::uint64_t count = 0;
  bron_kerbosch(0, all, 0, adj, count);
  return count;
}

// ---------------------------------------------------------------------------

Monomial Monomial::generator(const SubsetIndex& i) {
  Monomial m;
  m.exponents.emplace(i, 1u);
  return m;
}

Monomial Monomial::f(int n) {
  Monomial m;
  for (const auto& i : index_set(n)) m.exponents.emplace(i, 1u);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [i, e] : b.exponents) out.exponents[i] += e;
  out.f_power += b.f_power;
  return out;
}

MonomialSum canonical_sum(MonomialSum s) {
  std::sort(s.begin(), s.end());
  return s;
}

MonomialSum operator*(const MonomialSum& a, const MonomialSum& b) {
  MonomialSum out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return canonical_sum(std::move(out));
}

Monomial separating_monomial(int n, int a, int b, int c, int d) {
  check_n(n, "separating_monomial");
  const std::uint32_t ab = (std::uint32_t{1} << (a - 1)) | (std::uint32_t{1} << (b - 1));
  const std::uint32_t cd = (std::uint32_t{1} << (c - 1)) | (std::uint32_t{1} << (d - 1));
  Monomial m;
  for (const auto& i : index_set(n)) {
    const auto x = i.mask();
    const auto xc = full_mask(n) & ~x;
    if (((x & ab) == ab && (x & cd) == 0) || ((xc & ab) == ab && (xc & cd) == 0)) m.exponents.emplace(i, 1u);
  }
  return m;
}

std::vector<BlueprintRel> plucker_relations(int n) {
  check_n(n, "plucker_relations");
  std::vector<BlueprintRel> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          BlueprintRel r;
          r.left = canonical_sum({separating_monomial(n, i, j, k, l), separating_monomial(n, i, l, j, k)});
          r.right = {separating_monomial(n, i, k, j, l)};
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

BlueprintRel localize_relation(const BlueprintRel& r, unsigned k) {
  BlueprintRel out = r;
  for (auto& m : out.left) m.f_power += k;
  for (auto& m : out.right) m.f_power += k;
  return out;
}

BlueprintRel clear_denominators(const BlueprintRel& r, int n) {
  unsigned top = 0;
  for (const auto& m : r.left) top = std::max(top, m.f_power);
  for (const auto& m : r.right) top = std::max(top, m.f_power);
  const auto idx = index_set(n);
  auto clear = [&](MonomialSum s) {
    for (auto& m : s) {
      const unsigned extra = top - m.f_power;
      if (extra > 0) {
        for (const auto& i : idx) m.exponents[i] += extra;
      }
      m.f_power = 0;
    }
    return canonical_sum(std::move(s));
  };
  return {clear(r.left), clear(r.right)};
}

// ---------------------------------------------------------------------------

SubsetIndex perm_action(const Permutation& pi, const SubsetIndex& i) {
  if (pi.size() > i.n()) throw std::invalid_argument("perm_action: permutation degree exceeds n");
  std::uint32_t mask = 0;
  for (int a = 1; a <= i.n(); ++a) {
    if (i.contains(a)) {
      const int b = a <= pi.size() ? pi(a) : a;
      mask |= std::uint32_t{1} << (b - 1);
    }
  }
  return SubsetIndex::from_mask(mask, i.n());
}

Monomial perm_action(const Permutation& pi, const Monomial& m) {
  Monomial out;
  out.f_power = m.f_power;
  for (const auto& [i, e] : m.exponents) out.exponents[perm_action(pi, i)] += e;
  return out;
}

MonomialSum perm_action(const Permutation& pi, const MonomialSum& s) {
  MonomialSum out;
  out.reserve(s.size());
  for (const auto& m : s) out.push_back(perm_action(pi, m));
  return canonical_sum(std::move(out));
}

BlueprintRel perm_action(const Permutation& pi, const BlueprintRel& r) {
  return {perm_action(pi, r.left), perm_action(pi, r.right)};
}

std::vector<Permutation> centralizer_subgroup(int g) {
  if (g < 1 || g > 5) throw std::invalid_argument("centralizer_subgroup: g must be in [1, 5]");
  const int m = 2 * g;
  std::vector<int> inv(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i)] = (i % 2 == 0) ? i + 2 : i;
  const Permutation s(inv);

  std::vector<int> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Permutation> out;
  do {
    bool commutes = true;
    for (int i = 1; i <= m && commutes; ++i) {
      commutes = v[static_cast<std::size_t>(s(i) - 1)] == s(v[static_cast<std::size_t>(i - 1)]);
    }
    if (commutes) out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

CrossedElem CrossedElem::identity(int n, int group_degree) {
  return {n, {Monomial::unit()}, Permutation::identity(group_degree)};
}

CrossedElem crossed_mul(const CrossedElem& x, const CrossedElem& y) {
  if (x.n != y.n) throw std::invalid_argument("crossed_mul: elements over different n");
  if (x.perm.size() != y.perm.size()) throw std::invalid_argument("crossed_mul: permutations of different degree");
  return {x.n, x.sum * perm_action(x.perm, y.sum), x.perm * y.perm};
}

std::vector<CrossedRel> crossed_relations(const std::vector<BlueprintRel>& rels, const std::vector<Permutation>& group,
                                          int n) {
  std::vector<CrossedRel> out;
  out.reserve(rels.size() * group.size());
  for (const auto& r : rels) {
    for (const auto& g : group) {
      if (g.size() > n) throw std::invalid_argument("crossed_relations: group degree exceeds n");
      out.push_back({{n, r.left, g}, {n, r.right, g}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const SubsetIndex& i) {
  std::string s = "x{";
  bool first = true;
  for (int a : i.members()) {
    if (!first) s += ',';
    s += std::to_string(a);
    first = false;
  }
  return s + "}";
}

std::string to_string(const Monomial& m) {
  std::string s;
  for (const auto& [i, e] : m.exponents) {
    if (!s.empty()) s += '*';
    s += to_string(i);
    if (e != 1) s += "^" + std::to_string(e);
  }
  if (s.empty()) s = "1";
  if (m.f_power == 1) s += "/f";
  if (m.f_power > 1) s += "/f^" + std::to_string(m.f_power);
  return s;
}

std::string to_string(const MonomialSum& sum) {
  if (sum.empty()) return "0";
  std::string s;
  for (const auto& m : sum) {
    if (!s.empty()) s += " + ";
    s += to_string(m);
  }
  return s;
}

std::string to_string(const BlueprintRel& r) { return to_string(r.left) + " == " + to_string(r.right); }

std::string to_string(const CrossedElem& x) { return "(" + to_string(x.sum) + ", " + to_string(x.perm) + ")"; }

std::string to_string(const CrossedRel& r) { return to_string(r.left) + " == " + to_string(r.right); }

nlohmann::ordered_json to_json(const Monomial& m) {
  nlohmann::ordered_json j;
  auto factors = nlohmann::ordered_json::array();
  for (const auto& [i, e] : m.exponents) {
    nlohmann::ordered_json f;
    f["index"] = i.members();
    f["exp"] = e;
    factors.push_back(std::move(f));
  }
  j["factors"] = std::move(factors);
  j["f_power"] = m.f_power;
  return j;
}

namespace {

nlohmann::ordered_json sum_json(const MonomialSum& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& m : s) arr.push_back(to_json(m));
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const BlueprintRel& r) {
  nlohmann::ordered_json j;
  j["left"] = sum_json(r.left);
  j["right"] = sum_json(r.right);
  j["text"] = to_string(r);
  return j;
}

nlohmann::ordered_json to_json(const CrossedRel& r) {
  nlohmann::ordered_json j;
  j["perm"] = r.left.perm.images();
  j["left"] = sum_json(r.left.sum);
  j["right"] = sum_json(r.right.sum);
  j["text"] = to_string(r);
  return j;
}

}  // namespace f1kit
