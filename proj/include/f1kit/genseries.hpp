#pragma once

// Classes of the compactified moduli spaces M̄_{0,n} and T_{d,n}.
//
// Two independent routes are provided: the closed recursions on classes and
// coefficient extraction from the differential equation satisfied by the
// exponential generating series
//
//   (1 + L^d t - L [P^{d-1}] psi) psi' = 1 + psi,   psi = t + ...
//
// Series use operad-arity indexing: coefficient n of the d = 1 series is
// [M̄_{0,n+1}] = [T_{1,n}].

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "f1kit/motive.hpp"

namespace f1kit {

/// Truncated exponential generating series sum_{n=1}^{order} c_n t^n / n!.
class EGFSeries {
 public:
  explicit EGFSeries(std::vector<MotClass> coeffs);

  std::size_t order() const { return coeffs_.size(); }
  /// Coefficient c_n for 1 <= n <= order(); throws std::out_of_range otherwise.
  const MotClass& coeff(std::size_t n) const;
  const std::vector<MotClass>& coeffs() const { return coeffs_; }

 private:
  std::vector<MotClass> coeffs_;
};

EGFSeries solve_tdn_ode(int d, int order);

/// Integer specialization L -> m + 1 of the ODE: the F_{1^m}-point counts
/// p_1, ..., p_order of T_{d,n}.
std::vector<BigInt> solve_point_count_ode(int d, const BigInt& m, int order);

/// Memo table for [M̄_{0,n}]; one table per computation.
class Mbar0Table {
 public:
  Mbar0Table();
  const MotClass& get(int n);
  /// Pre-populates entries (e.g. from a persisted cache). Entry k holds n = k + 2.
  void seed(std::vector<MotClass> values);
  const std::vector<MotClass>& values() const { return values_; }

 private:
  std::vector<MotClass> values_;  // index k <-> n = k + 2
};

/// Memo table for [T_{d,n}] at fixed d.
class TdnTable {
 public:
  explicit TdnTable(int d);
  int d() const { return d_; }
  const MotClass& get(int n);
  /// Entry k holds n = k + 1.
  void seed(std::vector<MotClass> values);
  const std::vector<MotClass>& values() const { return values_; }

 private:
  int d_;
  MotClass sum_factor_;    // L [P^{d-1}]
  MotClass linear_base_;   // [P^d]
  MotClass linear_step_;   // L [P^{d-2}]
  std::vector<MotClass> values_;  // index k <-> n = k + 1
};

MotClass mbar0_class(int n);
MotClass tdn_class(int d, int n);
BigInt f1m_count(int d, int n, const BigInt& m);

/// Class of the open stratum TH_{d,n}: n distinct points of A^d modulo
/// translations and homotheties, [P^{d-1}] * c (c-1) ... (c-(n-3)) with
/// c = L^d - 2. Equals [M_{0,n+1}] for d = 1; n = 2 gives [P^{d-1}].
MotClass open_stratum_class(int d, int n);

/// Class of (A^d minus two points)^{n-2} minus all diagonals. Agrees with
/// open_stratum_class only for d = 1; for d >= 2 fixing two points does not
/// exhaust the translation/homothety symmetry.
MotClass two_point_chart_class(int d, int n);

/// Reading of the factor count in the product formula for [M_{0,n}].
enum class OpenStratumReading {
  Diagonals,  ///< complement of diagonals in (P^1 minus 3 points)^{n-3}: n-3 factors
  Literal,    ///< (T-1)...(T-n+2) as printed: n-2 factors
};

/// [M_{0,n}] for n >= 3.
MotClass m0n_class(int n, OpenStratumReading reading = OpenStratumReading::Diagonals);

// Series JSON: {"order":N,"coeffs":[MotClass,...]}
nlohmann::ordered_json to_json(const EGFSeries& s, Basis basis = Basis::T);

}  // namespace f1kit
