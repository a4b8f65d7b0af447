#include "hexknot/laurent.hpp"

#include <sstream>

namespace hexknot {

LaurentPoly LaurentPoly::monomial(int exp, long long coeff) {
  LaurentPoly p;
  if (coeff != 0) p.coeffs_[exp] = coeff;
  return p;
}

bool LaurentPoly::is_one() const {
  return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
         coeffs_.begin()->second == 1;
}

long long LaurentPoly::coeff(int exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? 0 : it->second;
}

int LaurentPoly::min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPoly::max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

void LaurentPoly::set(int exp, long long coeff) {
  if (coeff == 0)
    coeffs_.erase(exp);
  else
    coeffs_[exp] = coeff;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  out += o;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.coeffs_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.coeffs_) out.set(e, out.coeff(e) - c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : coeffs_)
    for (const auto& [e2, c2] : o.coeffs_) out.set(e1 + e2, out.coeff(e1 + e2) + c1 * c2);
  return out;
}

LaurentPoly LaurentPoly::operator*(long long k) const {
  LaurentPoly out;
  if (k == 0) return out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = c * k;
  return out;
}

LaurentPoly LaurentPoly::mirrored() const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[-e] = c;
  return out;
}

LaurentPoly LaurentPoly::substituted_power(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : coeffs_) out.set(e * k, out.coeff(e * k) + c);
  return out;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const long long mag = c < 0 ? -c : c;
    if (mag != 1 || e == 0) os << mag;
    if (e != 0) {
      os << var;
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

}  // namespace hexknot
