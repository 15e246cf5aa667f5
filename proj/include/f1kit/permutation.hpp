#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace f1kit {

/// Permutation of {1, ..., n} in one-line notation.
class Permutation {
 public:
  Permutation() = default;
  /// images[i-1] = pi(i); throws std::invalid_argument unless a bijection of {1..n}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Transposition (a b) in S_n.
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const;
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// Extends to S_m (m >= n) by fixing n+1..m.
  Permutation extended(int m) const;

  /// (a * b)(i) = a(b(i)); sizes must agree.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// "[2,1,3]"
std::string to_string(const Permutation& p);

/// All n! permutations in lexicographic order of their one-line notation.
std::vector<Permutation> all_permutations(int n);

}  // namespace f1kit
