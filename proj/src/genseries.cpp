#include "f1kit/genseries.hpp"

#include <stdexcept>
#include <string>

#include "f1kit/error.hpp"

namespace f1kit {

EGFSeries::EGFSeries(std::vector<MotClass> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("EGFSeries: order must be >= 1");
  if (coeffs_.front() != MotClass(1)) throw std::invalid_argument("EGFSeries: series must start with t");
}

const MotClass& EGFSeries::coeff(std::size_t n) const {
  if (n < 1 || n > coeffs_.size()) {
    throw std::out_of_range("EGFSeries: coefficient " + std::to_string(n) + " outside truncation order " +
                            std::to_string(coeffs_.size()));
  }
  return coeffs_[n - 1];
}

EGFSeries solve_tdn_ode(int d, int order) {
  if (d < 1) throw std::invalid_argument("solve_tdn_ode: d must be >= 1");
  if (order < 1) throw std::invalid_argument("solve_tdn_ode: order must be >= 1");
  const MotClass ld = MotClass::L().pow(static_cast<unsigned>(d));
  const MotClass sum_factor = MotClass::L() * proj_class(d - 1);

  // Matching t^n/n! in the ODE:
  //   b_{n+1} = b_n - n L^d b_n + L[P^{d-1}] sum_{i=1}^{n} C(n,i) b_i b_{n+1-i}
  std::vector<MotClass> b{MotClass(1)};  // b[k] <-> b_{k+1}
  for (int n = 1; n < order; ++n) {
    MotClass conv;
    for (int i = 1; i <= n; ++i) {
      conv += (b[i - 1] * b[n - i]).scaled(binomial(n, i));
    }
    b.push_back(b[n - 1] - (ld * b[n - 1]).scaled(n) + sum_factor * conv);
  }
  return EGFSeries(std::move(b));
}

std::vector<BigInt> solve_point_count_ode(int d, const BigInt& m, int order) {
  if (d < 1) throw std::invalid_argument("solve_point_count_ode: d must be >= 1");
  if (order < 1) throw std::invalid_argument("solve_point_count_ode: order must be >= 1");
  if (m < 0) throw std::invalid_argument("solve_point_count_ode: m must be >= 0");
  const BigInt q = m + 1;
  BigInt qd = 1;
  BigInt kappa = 0;  // 1 + q + ... + q^{d-1}
  for (int k = 0; k < d; ++k) {
    kappa += qd;
    qd *= q;
  }
  const BigInt sum_factor = q * kappa;

  std::vector<BigInt> p{1};
  for (int n = 1; n < order; ++n) {
    BigInt conv = 0;
    for (int i = 1; i <= n; ++i) conv += binomial(n, i) * p[i - 1] * p[n - i];
    p.push_back(p[n - 1] - n * qd * p[n - 1] + sum_factor * conv);
  }
  return p;
}

Mbar0Table::Mbar0Table() : values_{MotClass(1), MotClass(1)} {}

void Mbar0Table::seed(std::vector<MotClass> values) {
  if (values.size() < 2 || values[0] != MotClass(1) || values[1] != MotClass(1)) {
    throw InvariantError("Mbar0Table: seed does not start with [M0,2] = [M0,3] = 1");
  }
  if (values.size() > values_.size()) values_ = std::move(values);
}

const MotClass& Mbar0Table::get(int n) {
  if (n < 2) throw std::invalid_argument("mbar0_class: n must be >= 2");
  // [M_{m+2}] = [M_{m+1}] + L sum_{i+j=m+1, i>=2, j>=1} C(m,i) [M_{i+1}] [M_{j+1}]
  auto at = [this](int k) -> const MotClass& { return values_[static_cast<std::size_t>(k - 2)]; };
  while (static_cast<int>(values_.size()) + 1 < n) {
    const int m = static_cast<int>(values_.size());  // next entry is n = m + 2
    MotClass sum;
    for (int i = 2; i <= m; ++i) sum += (at(i + 1) * at(m + 2 - i)).scaled(binomial(m, i));
    MotClass next = at(m + 1) + MotClass::L() * sum;
    values_.push_back(std::move(next));
  }
  return at(n);
}

TdnTable::TdnTable(int d)
    : d_(d),
      sum_factor_(d >= 1 ? MotClass::L() * proj_class(d - 1) : MotClass()),
      linear_base_(d >= 1 ? proj_class(d) : MotClass()),
      linear_step_(d >= 1 ? MotClass::L() * proj_class(d - 2) : MotClass()) {
  if (d < 1) throw std::invalid_argument("tdn_class: d must be >= 1");
  values_ = {MotClass(1), proj_class(d - 1)};
}

void TdnTable::seed(std::vector<MotClass> values) {
  if (values.size() < 2 || values[0] != MotClass(1) || values[1] != proj_class(d_ - 1)) {
    throw InvariantError("TdnTable: seed does not start with [T_{d,1}] = 1, [T_{d,2}] = [P^{d-1}]");
  }
  if (values.size() > values_.size()) values_ = std::move(values);
}

const MotClass& TdnTable::get(int n) {
  if (n < 1) throw std::invalid_argument("tdn_class: n must be >= 1");
  auto at = [this](int k) -> const MotClass& { return values_[static_cast<std::size_t>(k - 1)]; };
  // For m >= 2:
  // [T_{m+1}] = ([P^d] + m L [P^{d-2}]) [T_m] + L [P^{d-1}] sum_{i=2}^{m-1} C(m,i) [T_i][T_{m+1-i}]
  while (static_cast<int>(values_.size()) < n) {
    const int m = static_cast<int>(values_.size());
    MotClass sum;
    for (int i = 2; i <= m - 1; ++i) sum += (at(i) * at(m + 1 - i)).scaled(binomial(m, i));
    MotClass next = (linear_base_ + linear_step_.scaled(m)) * at(m) + sum_factor_ * sum;
    values_.push_back(std::move(next));
  }
  return at(n);
}

MotClass mbar0_class(int n) {
  Mbar0Table table;
  return table.get(n);
}

MotClass tdn_class(int d, int n) {
  TdnTable table(d);
  return table.get(n);
}

BigInt f1m_count(int d, int n, const BigInt& m) {
  if (m < 0) throw std::invalid_argument("f1m_count: m must be >= 0");
  return count_points(tdn_class(d, n), m);
}

namespace {

MotClass configuration_factor(int d, int n) {
  // c (c-1) ... (c-(n-3)), c = L^d - 2
  const MotClass c = MotClass::L().pow(static_cast<unsigned>(d)) - MotClass(2);
  MotClass result(1);
  for (int k = 0; k <= n - 3; ++k) result *= c - MotClass(k);
  return result;
}

void check_stratum_args(const char* what, int d, int n) {
  if (d < 1) throw std::invalid_argument(std::string(what) + ": d must be >= 1");
  if (n < 2) throw std::invalid_argument(std::string(what) + ": n must be >= 2");
}

}  // namespace

MotClass open_stratum_class(int d, int n) {
  check_stratum_args("open_stratum_class", d, n);
  return proj_class(d - 1) * configuration_factor(d, n);
}

MotClass two_point_chart_class(int d, int n) {
  check_stratum_args("two_point_chart_class", d, n);
  return configuration_factor(d, n);
}

MotClass m0n_class(int n, OpenStratumReading reading) {
  if (n < 3) throw std::invalid_argument("m0n_class: n must be >= 3");
  const auto factors = static_cast<unsigned>(reading == OpenStratumReading::Diagonals ? n - 3 : n - 2);
  return expand_falling(factors);
}

nlohmann::ordered_json to_json(const EGFSeries& s, Basis basis) {
  nlohmann::ordered_json j;
  j["order"] = s.order();
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_json(c, basis));
  j["coeffs"] = std::move(coeffs);
  return j;
}

}  // namespace f1kit
