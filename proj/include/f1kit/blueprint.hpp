#pragma once

// Blueprint presentation of M̄_{0,n}: generators x_I indexed by splits of
// {1..n}, the simplicial complex of pairwise compatible splits, the
// three-term Plücker-type relations, and crossed products by subgroups of
// S_n acting on the generators.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "f1kit/permutation.hpp"

namespace f1kit {

/// A split I | I^c of {1..n} represented by the side containing 1.
class SubsetIndex {
 public:
  /// Canonicalizes by complementing if 1 is missing; throws
  /// std::invalid_argument unless both sides have at least two elements.
  static SubsetIndex make(const std::vector<int>& members, int n);
  static SubsetIndex from_mask(std::uint32_t mask, int n);

  int n() const { return n_; }
  std::uint32_t mask() const { return mask_; }
  std::vector<int> members() const;
  int size() const;
  bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }

  /// Ordered by n, then size, then lexicographically by members.
  friend std::strong_ordering operator<=>(const SubsetIndex& a, const SubsetIndex& b);
  friend bool operator==(const SubsetIndex& a, const SubsetIndex& b) { return a.n_ == b.n_ && a.mask_ == b.mask_; }

 private:
  SubsetIndex(std::uint32_t mask, int n) : mask_(mask), n_(n) {}
  std::uint32_t mask_;
  int n_;
};

/// Supported 4 <= n <= 16. Sorted; size 2^{n-1} - n - 1.
std::vector<SubsetIndex> index_set(int n);

/// Two splits are compatible iff nested or covering {1..n}.
bool compatible(const SubsetIndex& a, const SubsetIndex& b);
/// Pairwise compatible.
bool is_simplex(const std::vector<SubsetIndex>& sigma, int n);
/// Maximal simplices of the complex on index_set(n); supported 4 <= n <= 7.
std::uint64_t count_max_simplexes(int n);

/// Monomial prod x_I^{e_I} / f^{f_power}, f = prod over all x_I.
struct Monomial {
  std::map<SubsetIndex, unsigned> exponents;
  unsigned f_power = 0;

  static Monomial unit() { return {}; }
  static Monomial generator(const SubsetIndex& i);
  /// f itself (every generator of index_set(n) to the first power).
  static Monomial f(int n);

  bool is_unit() const { return exponents.empty() && f_power == 0; }
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Formal sum: a sorted multiset of monomials.
using MonomialSum = std::vector<Monomial>;
MonomialSum canonical_sum(MonomialSum s);
/// Product of formal sums, distributed and sorted.
MonomialSum operator*(const MonomialSum& a, const MonomialSum& b);

struct BlueprintRel {
  MonomialSum left;
  MonomialSum right;

  friend bool operator==(const BlueprintRel&, const BlueprintRel&) = default;
  friend auto operator<=>(const BlueprintRel&, const BlueprintRel&) = default;
};

/// Product of x_I over the splits separating {a,b} from {c,d}.
Monomial separating_monomial(int n, int a, int b, int c, int d);

/// One relation per i<j<k<l, in lexicographic order of the quadruple:
/// sep(ij|kl) + sep(il|jk) == sep(ik|jl).
std::vector<BlueprintRel> plucker_relations(int n);

BlueprintRel localize_relation(const BlueprintRel& r, unsigned k);
/// Multiplies both sides by f^K, K the largest denominator, and cancels.
BlueprintRel clear_denominators(const BlueprintRel& r, int n);

/// pi in S_m with m <= n acts on {1..n} fixing m+1..n.
SubsetIndex perm_action(const Permutation& pi, const SubsetIndex& i);
Monomial perm_action(const Permutation& pi, const Monomial& m);
MonomialSum perm_action(const Permutation& pi, const MonomialSum& s);
BlueprintRel perm_action(const Permutation& pi, const BlueprintRel& r);

/// Elements of S_{2g} commuting with (1 2)(3 4)...(2g-1 2g); 1 <= g <= 5.
std::vector<Permutation> centralizer_subgroup(int g);

/// (a, g) in the crossed product; g acts on the generators of M̄_{0,n}.
struct CrossedElem {
  int n;
  MonomialSum sum;
  Permutation perm;

  static CrossedElem identity(int n, int group_degree);
  friend bool operator==(const CrossedElem&, const CrossedElem&) = default;
};

/// (a, g)(a', g') = (a g(a'), g g'). Throws std::invalid_argument on
/// different n or group degrees.
CrossedElem crossed_mul(const CrossedElem& x, const CrossedElem& y);

struct CrossedRel {
  CrossedElem left;
  CrossedElem right;
};

/// ((sum a_i, g), (sum b_j, g)) for every relation and every g in G.
std::vector<CrossedRel> crossed_relations(const std::vector<BlueprintRel>& rels, const std::vector<Permutation>& group,
                                          int n);

// Text forms: "x{1,2}*x{1,2,5}", "x{1,2} + x{1,4} == x{1,3}"; a denominator
// is written "/f" or "/f^k", the unit monomial "1".
std::string to_string(const SubsetIndex& i);
std::string to_string(const Monomial& m);
std::string to_string(const MonomialSum& s);
std::string to_string(const BlueprintRel& r);
std::string to_string(const CrossedElem& x);
std::string to_string(const CrossedRel& r);

nlohmann::ordered_json to_json(const Monomial& m);
nlohmann::ordered_json to_json(const BlueprintRel& r);
nlohmann::ordered_json to_json(const CrossedRel& r);

}  // namespace f1kit
