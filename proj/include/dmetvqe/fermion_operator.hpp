#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dmetvqe/types.hpp"

namespace dmetvqe::fermion {

/// A single creation (`creation == true`) or annihilation operator on a
/// spin-orbital.
struct LadderOp {
  Index mode = 0;
  bool creation = false;

  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

inline LadderOp create(Index mode) { return {mode, true}; }
inline LadderOp annihilate(Index mode) { return {mode, false}; }

/// Coefficient times an ordered operator product. The order is kept exactly
/// as constructed; nothing here normal-orders.
struct FermionTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<LadderOp> ops;

  FermionTerm adjoint() const;
};

class FermionSum {
 public:
  FermionSum() = default;
  explicit FermionSum(std::vector<FermionTerm> terms) : terms_(std::move(terms)) {}

  void add(FermionTerm term) { terms_.push_back(std::move(term)); }
  void add(Complex coefficient, std::vector<LadderOp> ops) {
    terms_.push_back({coefficient, std::move(ops)});
  }

  const std::vector<FermionTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Largest mode index + 1 over all terms.
  Index mode_count() const;

  FermionSum adjoint() const;

  /// Merges terms with identical operator sequences and drops those whose
  /// merged coefficient is below `drop_tol` in magnitude.
  FermionSum simplified(double drop_tol = 1e-12) const;

  FermionSum& operator+=(const FermionSum& other);
  FermionSum& operator*=(Complex scalar);

  std::string to_string() const;

 private:
  std::vector<FermionTerm> terms_;
};

FermionSum operator+(FermionSum a, const FermionSum& b);
FermionSum operator-(FermionSum a, const FermionSum& b);
FermionSum operator*(Complex scalar, FermionSum a);

}  // namespace dmetvqe::fermion
