#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace hexknot {

/// Laurent polynomial with exact integer coefficients. Zero coefficients are
/// never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(0, 1); }
  static LaurentPoly monomial(int exp, long long coeff);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  long long coeff(int exp) const;
  const std::map<int, long long>& coeffs() const { return coeffs_; }

  int min_exp() const;  // 0 for the zero polynomial
  int max_exp() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly operator*(long long k) const;
  bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /// Exponent negation, A -> A^-1 (mirror image of the underlying knot).
  LaurentPoly mirrored() const;
  /// Substitute A -> A^k (exponent scaling).
  LaurentPoly substituted_power(int k) const;

  void set(int exp, long long coeff);
  std::string str(const std::string& var = "A") const;

 private:
  std::map<int, long long> coeffs_;
};

}  // namespace hexknot
