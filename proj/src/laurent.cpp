#include "kk/laurent.hpp"

#include <sstream>

#include "kk/errors.hpp"

namespace kk {

LaurentPoly LaurentPoly::constant(const BigInt& c) {
  return monomial(c, 0, 0);
}

LaurentPoly LaurentPoly::monomial(const BigInt& c, long long xe, long long ye) {
  LaurentPoly p;
  if (c != 0) p.terms_[{xe, ye}] = c;
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0} &&
         terms_.begin()->second == 1;
}

bool LaurentPoly::is_unit_monomial() const {
  if (terms_.size() != 1) return false;
  const BigInt& c = terms_.begin()->second;
  return c == 1 || c == -1;
}

LaurentPoly LaurentPoly::unit_inverse() const {
  if (!is_unit_monomial())
    throw Error("inverse requested for a non-unit Laurent polynomial");
  const auto& [mono, c] = *terms_.begin();
  return monomial(c, -mono.first, -mono.second);
}

void LaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [mono, c] : o.terms_) out.terms_[mono] += c;
  out.prune();
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [mono, c] : o.terms_) out.terms_[mono] -= c;
  out.prune();
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_)
      out.terms_[{m1.first + m2.first, m1.second + m2.second}] += c1 * c2;
  out.prune();
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

namespace {

void append_power(std::ostringstream& os, const char* var, long long e) {
  if (e == 0) return;
  os << var;
  if (e != 1) os << "^" << e;
}

}  // namespace

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = mono.first != 0 || mono.second != 0;
    if (mag != 1 || !has_var) {
      os << mag;
      if (has_var) os << "*";
    }
    std::ostringstream vars;
    append_power(vars, "x", mono.first);
    if (mono.first != 0 && mono.second != 0) vars << "*";
    append_power(vars, "y", mono.second);
    os << vars.str();
  }
  return os.str();
}

}  // namespace kk
