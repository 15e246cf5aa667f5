#pragma once

// Grothendieck-ring classes that are polynomials in the torus class T = [G_m].
//
// Every class is stored in the T-basis; L = T + 1 is the Lefschetz class.
// Coefficients are arbitrary-precision integers and the representation is
// canonical (no trailing zero coefficients), so equality is structural.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

namespace f1kit {

using BigInt = boost::multiprecision::cpp_int;

enum class Basis { T, L };

std::string to_string(Basis basis);
Basis parse_basis(const std::string& name);

class MotClass {
 public:
  MotClass() = default;
  MotClass(long long constant);  // NOLINT(google-explicit-constructor): integers are classes

  static MotClass from_t_coeffs(std::vector<BigInt> coeffs);
  static MotClass from_l_coeffs(const std::vector<BigInt>& coeffs);
  static MotClass from_coeffs(Basis basis, std::vector<BigInt> coeffs);
  static MotClass T();
  static MotClass L();

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree in T; -1 for the zero class.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of T^k (zero beyond the degree).
  BigInt t_coeff(std::size_t k) const;
  const std::vector<BigInt>& t_coeffs() const { return coeffs_; }

  MotClass& operator+=(const MotClass& other);
  MotClass& operator-=(const MotClass& other);
  MotClass& operator*=(const MotClass& other);

  friend MotClass operator+(MotClass a, const MotClass& b) { return a += b; }
  friend MotClass operator-(MotClass a, const MotClass& b) { return a -= b; }
  friend MotClass operator*(const MotClass& a, const MotClass& b);
  MotClass operator-() const;

  friend bool operator==(const MotClass&, const MotClass&) = default;

  MotClass pow(unsigned exponent) const;
  MotClass scaled(const BigInt& scalar) const;

 private:
  void normalize();

  std::vector<BigInt> coeffs_;
};

MotClass mot_mul(const MotClass& a, const MotClass& b);

/// Coefficients of `a` expanded in powers of the target symbol, ascending.
std::vector<BigInt> change_basis(const MotClass& a, Basis target);

/// True iff every T-basis coefficient is non-negative.
bool is_effective_torus_class(const MotClass& a);

/// Sum of a_k m^k over the T-basis coefficients: the F_{1^m}-point count.
/// m = 0 gives the Euler characteristic.
BigInt count_points(const MotClass& a, const BigInt& m);

/// Poincaré polynomial: L-basis coefficient b_k placed at q^{2k}.
std::vector<BigInt> poincare_poly(const MotClass& a);

/// [P^d] = 1 + L + ... + L^d; d = -1 is the empty space.
MotClass proj_class(int d);

/// Class of the blowup of X along Y of codimension `codim`:
/// [X] + [Y]([P^{codim-1}] - 1).
MotClass blowup_class(const MotClass& x, const MotClass& y, int codim);

/// (T-1)(T-2)...(T-m) by direct multiplication.
MotClass expand_falling(unsigned m);
/// Same product via signed Stirling numbers of the first kind and the
/// binomial expansion of (T-1)^k.
MotClass expand_falling_stirling(unsigned m);

/// Signed Stirling numbers of the first kind s(m, k), k = 0..m.
std::vector<BigInt> stirling_first_row(unsigned m);
BigInt binomial(unsigned n, unsigned k);

/// Human-readable form in the given basis, highest degree first,
/// e.g. "L^3+16L^2+16L+1". The zero class prints as "0".
std::string to_string(const MotClass& a, Basis basis = Basis::T);
/// Polynomial in q, lowest degree first, e.g. "1+16q^2+16q^4+q^6".
std::string poincare_string(const std::vector<BigInt>& coeffs);

// JSON: {"basis":"T"|"L","coeffs":["<decimal>",...]} with index = degree.
nlohmann::ordered_json to_json(const MotClass& a, Basis basis = Basis::T);
MotClass mot_class_from_json(const nlohmann::ordered_json& j);

}  // namespace f1kit
