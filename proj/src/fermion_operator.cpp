#include "dmetvqe/fermion_operator.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dmetvqe/format.hpp"

namespace dmetvqe::fermion {

FermionTerm FermionTerm::adjoint() const {
  FermionTerm out;
  out.coefficient = std::conj(coefficient);
  out.ops.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    out.ops.push_back({it->mode, !it->creation});
  }
  return out;
}

Index FermionSum::mode_count() const {
  Index n = 0;
  for (const auto& t : terms_) {
    for (const auto& op : t.ops) n = std::max(n, op.mode + 1);
  }
  return n;
}

FermionSum FermionSum::adjoint() const {
  FermionSum out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
  return out;
}

FermionSum FermionSum::simplified(double drop_tol) const {
  std::map<std::vector<LadderOp>, Complex> merged;
  for (const auto& t : terms_) merged[t.ops] += t.coefficient;
  FermionSum out;
  for (auto& [ops, c] : merged) {
    if (std::abs(c) >= drop_tol && std::abs(c) > 0.0) out.add(c, ops);
  }
  return out;
}

FermionSum& FermionSum::operator+=(const FermionSum& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionSum& FermionSum::operator*=(Complex scalar) {
  for (auto& t : terms_) t.coefficient *= scalar;
  return *this;
}

std::string FermionSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_real(t.coefficient.real());
    if (t.coefficient.imag() != 0.0) os << "," << format_real(t.coefficient.imag());
    os << ")";
    for (const auto& op : t.ops) os << " " << op.mode << (op.creation ? "^" : "");
  }
  return first ? "0" : os.str();
}

FermionSum operator+(FermionSum a, const FermionSum& b) {
  a += b;
  return a;
}

FermionSum operator-(FermionSum a, const FermionSum& b) {
  FermionSum nb = b;
  nb *= -1.0;
  a += nb;
  return a;
}

FermionSum operator*(Complex scalar, FermionSum a) {
  a *= scalar;
  return a;
}

}  // namespace dmetvqe::fermion
