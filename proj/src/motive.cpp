#include "f1kit/motive.hpp"

#include <algorithm>
#include <stdexcept>

namespace f1kit {

std::string to_string(Basis basis) { return basis == Basis::T ? "T" : "L"; }

Basis parse_basis(const std::string& name) {
  if (name == "T") return Basis::T;
  if (name == "L") return Basis::L;
  throw std::invalid_argument("unknown basis '" + name + "' (expected T or L)");
}

MotClass::MotClass(long long constant) {
  if (constant != 0) coeffs_.emplace_back(constant);
}

MotClass MotClass::from_t_coeffs(std::vector<BigInt> coeffs) {
  MotClass c;
  c.coeffs_ = std::move(coeffs);
  c.normalize();
  return c;
}

MotClass MotClass::from_l_coeffs(const std::vector<BigInt>& coeffs) {
  // Horner in L = T + 1.
  MotClass result;
  const MotClass l = L();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    result *= l;
    result += from_t_coeffs({*it});
  }
  return result;
}

MotClass MotClass::from_coeffs(Basis basis, std::vector<BigInt> coeffs) {
  return basis == Basis::T ? from_t_coeffs(std::move(coeffs)) : from_l_coeffs(coeffs);
}

MotClass MotClass::T() { return from_t_coeffs({0, 1}); }
MotClass MotClass::L() { return from_t_coeffs({1, 1}); }

BigInt MotClass::t_coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

void MotClass::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

MotClass& MotClass::operator+=(const MotClass& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  normalize();
  return *this;
}

MotClass& MotClass::operator-=(const MotClass& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  normalize();
  return *this;
}

MotClass operator*(const MotClass& a, const MotClass& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return MotClass::from_t_coeffs(std::move(out));
}

MotClass& MotClass::operator*=(const MotClass& other) { return *this = *this * other; }

MotClass MotClass::scaled(const BigInt& scalar) const {
  MotClass r = *this;
  for (auto& c : r.coeffs_) c *= scalar;
  r.normalize();
  return r;
}

MotClass MotClass::operator-() const {
  MotClass r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

MotClass MotClass::pow(unsigned exponent) const {
  MotClass result(1);
  MotClass base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

MotClass mot_mul(const MotClass& a, const MotClass& b) { return a * b; }

std::vector<BigInt> change_basis(const MotClass& a, Basis target) {
  if (target == Basis::T) return a.t_coeffs();
  // T = L - 1: Horner in (L - 1), working on raw coefficient vectors in L.
  std::vector<BigInt> acc;
  const auto& t = a.t_coeffs();
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    // acc <- acc * (L - 1) + c
    std::vector<BigInt> next(acc.size() + 1);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= acc[k];
    }
    next[0] += *it;
    acc = std::move(next);
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return acc;
}

bool is_effective_torus_class(const MotClass& a) {
  return std::all_of(a.t_coeffs().begin(), a.t_coeffs().end(), [](const BigInt& c) { return c >= 0; });
}

BigInt count_points(const MotClass& a, const BigInt& m) {
  BigInt acc = 0;
  const auto& t = a.t_coeffs();
  for (auto it = t.rbegin(); it != t.rend(); ++it) acc = acc * m + *it;
  return acc;
}

std::vector<BigInt> poincare_poly(const MotClass& a) {
  const auto l = change_basis(a, Basis::L);
  if (l.empty()) return {};
  std::vector<BigInt> q(2 * l.size() - 1);
  for (std::size_t k = 0; k < l.size(); ++k) q[2 * k] = l[k];
  return q;
}

MotClass proj_class(int d) {
  if (d < -1) throw std::invalid_argument("proj_class: dimension must be >= -1");
  if (d == -1) return {};
  return MotClass::from_l_coeffs(std::vector<BigInt>(static_cast<std::size_t>(d) + 1, BigInt(1)));
}

MotClass blowup_class(const MotClass& x, const MotClass& y, int codim) {
  if (codim < 1) throw std::invalid_argument("blowup_class: codimension must be >= 1");
  return x + y * (proj_class(codim - 1) - MotClass(1));
}

MotClass expand_falling(unsigned m) {
  MotClass result(1);
  for (unsigned j = 1; j <= m; ++j) result *= MotClass::T() - MotClass(j);
  return result;
}

std::vector<BigInt> stirling_first_row(unsigned m) {
  // s(i+1, k) = s(i, k-1) - i s(i, k)
  std::vector<BigInt> row{1};
  for (unsigned i = 0; i < m; ++i) {
    std::vector<BigInt> next(row.size() + 1);
    for (std::size_t k = 0; k < row.size(); ++k) {
      next[k + 1] += row[k];
      next[k] -= row[k] * i;
    }
    row = std::move(next);
  }
  return row;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MotClass expand_falling_stirling(unsigned m) {
  // prod_{j=1}^m (T - j) = (x)_m falling with x = T - 1 = sum_k s(m,k) (T-1)^k
  const auto s = stirling_first_row(m);
  std::vector<BigInt> out(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    if (s[k] == 0) continue;
    for (unsigned j = 0; j <= k; ++j) {
      BigInt term = s[k] * binomial(k, j);
      if ((k - j) % 2 == 1) term = -term;
      out[j] += term;
    }
  }
  return MotClass::from_t_coeffs(std::move(out));
}

namespace {

std::string polynomial_string(const std::vector<BigInt>& coeffs, const std::string& var, unsigned stride,
                              bool descending) {
  std::string out;
  auto emit = [&](std::size_t k) {
    const BigInt& c = coeffs[k];
    if (c == 0) return;
    const unsigned power = static_cast<unsigned>(k) * stride;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (power == 0 || mag != 1) out += mag.str();
    if (power >= 1) out += var;
    if (power >= 2) out += "^" + std::to_string(power);
  };
  if (descending) {
    for (std::size_t k = coeffs.size(); k-- > 0;) emit(k);
  } else {
    for (std::size_t k = 0; k < coeffs.size(); ++k) emit(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_string(const MotClass& a, Basis basis) {
  return polynomial_string(change_basis(a, basis), to_string(basis), 1, true);
}

std::string poincare_string(const std::vector<BigInt>& coeffs) {
  return polynomial_string(coeffs, "q", 1, false);
}

nlohmann::ordered_json to_json(const MotClass& a, Basis basis) {
  nlohmann::ordered_json j;
  j["basis"] = to_string(basis);
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : change_basis(a, basis)) coeffs.push_back(c.str());
  j["coeffs"] = std::move(coeffs);
  return j;
}

MotClass mot_class_from_json(const nlohmann::ordered_json& j) {
  const Basis basis = parse_basis(j.at("basis").get<std::string>());
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("coeffs")) {
    const auto text = c.get<std::string>();
    const bool digits = !text.empty() && std::all_of(text.begin() + (text[0] == '-' ? 1 : 0), text.end(),
                                                     [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!digits || text == "-") throw std::invalid_argument("coefficient is not a decimal integer: '" + text + "'");
    coeffs.emplace_back(text);
  }
  return MotClass::from_coeffs(basis, std::move(coeffs));
}

}  // namespace f1kit
