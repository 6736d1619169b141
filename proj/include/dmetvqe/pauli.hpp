#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dmetvqe/fermion_operator.hpp"
#include "dmetvqe/types.hpp"

namespace dmetvqe::pauli {

enum class Label : std::uint8_t { X = 1, Y = 2, Z = 3 };

char to_char(Label l);

/// Sparse tensor product of single-qubit Paulis, sorted by qubit. Qubits
/// absent from the word carry the identity.
using Word = std::vector<std::pair<Index, Label>>;

inline constexpr double kDropTolerance = 1e-12;

class PauliTerm {
 public:
  PauliTerm() = default;
  /// Builds a term from arbitrary (possibly unsorted, repeated) factors; the
  /// factors are multiplied left to right and the phase folded into the
  /// coefficient.
  PauliTerm(Complex coefficient, const std::vector<std::pair<Index, Label>>& factors);

  static PauliTerm identity(Complex coefficient = 1.0);
  /// `word` must already be sorted by qubit with no repeats.
  static PauliTerm from_word(Complex coefficient, Word word);
  static PauliTerm single(Label label, Index qubit, Complex coefficient = 1.0);

  Complex coefficient() const noexcept { return coefficient_; }
  const Word& word() const noexcept { return word_; }
  bool is_identity() const noexcept { return word_.empty(); }

  /// Highest qubit index + 1, 0 for the identity.
  Index qubit_span() const noexcept;

  /// Label on `qubit`, or nullopt-like 0 meaning identity.
  std::uint8_t label_at(Index qubit) const noexcept;

  PauliTerm with_coefficient(Complex c) const;

  std::string to_string() const;

 private:
  Complex coefficient_{1.0, 0.0};
  Word word_;
};

/// Operator product a·b.
PauliTerm operator*(const PauliTerm& a, const PauliTerm& b);
PauliTerm term_multiply(const PauliTerm& a, const PauliTerm& b);

class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(PauliTerm term) : terms_{std::move(term)} {}  // NOLINT(google-explicit-constructor)
  explicit PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Index qubit_span() const noexcept;

  PauliSum adjoint() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scalar);

  /// Canonical printing, e.g. "2.0*X0*X1 + -0.5*X0*Z2". The empty sum prints
  /// as "0.0".
  std::string to_string(double drop_tol = kDropTolerance) const;

 private:
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(Complex scalar, PauliSum a);

/// Merges identical words, drops coefficients below `drop_tol` and sorts the
/// terms by qubit support, then by labels (identity first).
PauliSum simplify(const PauliSum& s, double drop_tol = kDropTolerance);

/// ab - ba, simplified.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Exact comparison of canonical forms up to `tol` on every coefficient.
bool approx_equal(const PauliSum& a, const PauliSum& b, double tol = kDropTolerance);

/// True when the simplified sum has only real coefficients.
bool is_hermitian(const PauliSum& s, double tol = 1e-10);

// Jordan–Wigner images, qubit index == spin-orbital index.
PauliSum jw_raise(Index mode);
PauliSum jw_lower(Index mode);
PauliSum jw_transform(const fermion::FermionTerm& term);
PauliSum jw_transform(const fermion::FermionSum& sum);

/// Parses the printed format. Whitespace is ignored; terms are joined by
/// '+' or '-', each term an optional coefficient (real, or "(a+bj)") and
/// '*'-separated factors such as X0.
PauliSum parse_pauli_sum(const std::string& text);

}  // namespace dmetvqe::pauli
