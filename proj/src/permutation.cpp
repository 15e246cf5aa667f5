#include "f1kit/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace f1kit {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("Permutation: images are not a bijection of {1.." + std::to_string(size()) + "}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto p = identity(n);
  if (a < 1 || b < 1 || a > n || b > n) throw std::invalid_argument("transposition: point out of range");
  std::swap(p.images_[static_cast<std::size_t>(a - 1)], p.images_[static_cast<std::size_t>(b - 1)]);
  return p;
}

int Permutation::operator()(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("Permutation: point " + std::to_string(i) + " out of range");
  return images_[static_cast<std::size_t>(i - 1)];
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::extended(int m) const {
  if (m < size()) throw std::invalid_argument("Permutation::extended: target size smaller than permutation");
  auto v = images_;
  for (int i = size() + 1; i <= m; ++i) v.push_back(i);
  return Permutation(std::move(v));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Permutation: composing permutations of different degree");
  std::vector<int> v(a.images_.size());
  for (int i = 1; i <= a.size(); ++i) v[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(v));
}

std::string to_string(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.images().size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(p.images()[i]);
  }
  return out + "]";
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace f1kit
