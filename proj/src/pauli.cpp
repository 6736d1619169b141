#include "dmetvqe/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dmetvqe/format.hpp"

namespace dmetvqe::pauli {

namespace {

constexpr Complex kI{0.0, 1.0};

// Product of two single-qubit labels as (phase, label); label 0 is identity.
std::pair<Complex, std::uint8_t> multiply_labels(std::uint8_t a, std::uint8_t b) {
  if (a == 0) return {1.0, b};
  if (b == 0) return {1.0, a};
  if (a == b) return {1.0, 0};
  // X=1, Y=2, Z=3; XY=iZ, YZ=iX, ZX=iY.
  const auto c = static_cast<std::uint8_t>(6 - a - b);
  const bool cyclic = (a % 3) + 1 == b;
  return {cyclic ? kI : -kI, c};
}

std::string format_coefficient(Complex c, double drop_tol) {
  if (std::abs(c.imag()) < drop_tol) return format_real(c.real());
  std::string out = "(" + format_real(c.real());
  const std::string im = format_real(c.imag());
  out += (im.front() == '-' ? "" : "+") + im + "j)";
  return out;
}

// Support first, then labels, so terms acting on the same qubits stay
// adjacent.
bool word_less(const Word& a, const Word& b) {
  const auto support_less = [](const auto& x, const auto& y) { return x.first < y.first; };
  if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), support_less)) return true;
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end(), support_less)) return false;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

}  // namespace

char to_char(Label l) {
  switch (l) {
    case Label::X: return 'X';
    case Label::Y: return 'Y';
    case Label::Z: return 'Z';
  }
  return '?';
}

PauliTerm::PauliTerm(Complex coefficient, const std::vector<std::pair<Index, Label>>& factors)
    : coefficient_(coefficient) {
  for (const auto& [q, l] : factors) *this = *this * PauliTerm::single(l, q);
}

PauliTerm PauliTerm::identity(Complex coefficient) {
  PauliTerm t;
  t.coefficient_ = coefficient;
  return t;
}

PauliTerm PauliTerm::from_word(Complex coefficient, Word word) {
  PauliTerm t;
  t.coefficient_ = coefficient;
  t.word_ = std::move(word);
  return t;
}

PauliTerm PauliTerm::single(Label label, Index qubit, Complex coefficient) {
  return from_word(coefficient, Word{{qubit, label}});
}

Index PauliTerm::qubit_span() const noexcept {
  return word_.empty() ? 0 : word_.back().first + 1;
}

std::uint8_t PauliTerm::label_at(Index qubit) const noexcept {
  auto it = std::lower_bound(word_.begin(), word_.end(), qubit,
                             [](const auto& f, Index q) { return f.first < q; });
  return (it != word_.end() && it->first == qubit) ? static_cast<std::uint8_t>(it->second) : 0;
}

PauliTerm PauliTerm::with_coefficient(Complex c) const {
  PauliTerm t = *this;
  t.coefficient_ = c;
  return t;
}

std::string PauliTerm::to_string() const {
  std::string out = format_coefficient(coefficient_, kDropTolerance);
  for (const auto& [q, l] : word_) {
    out += '*';
    out += to_char(l);
    out += std::to_string(q);
  }
  return out;
}

PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  Word word;
  word.reserve(a.word().size() + b.word().size());
  Complex phase = 1.0;
  auto ia = a.word().begin();
  auto ib = b.word().begin();
  const auto ea = a.word().end();
  const auto eb = b.word().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      word.push_back(*ia++);
    } else if (ia == ea || ib->first < ia->first) {
      word.push_back(*ib++);
    } else {
      auto [p, l] = multiply_labels(static_cast<std::uint8_t>(ia->second),
                                    static_cast<std::uint8_t>(ib->second));
      phase *= p;
      if (l != 0) word.emplace_back(ia->first, static_cast<Label>(l));
      ++ia;
      ++ib;
    }
  }
  return PauliTerm::from_word(a.coefficient() * b.coefficient() * phase, std::move(word));
}

PauliTerm term_multiply(const PauliTerm& a, const PauliTerm& b) { return a * b; }

Index PauliSum::qubit_span() const noexcept {
  Index n = 0;
  for (const auto& t : terms_) n = std::max(n, t.qubit_span());
  return n;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(t.with_coefficient(std::conj(t.coefficient())));
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  for (const auto& t : other.terms_) terms_.push_back(t.with_coefficient(-t.coefficient()));
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scalar) {
  for (auto& t : terms_) t = t.with_coefficient(t.coefficient() * scalar);
  return *this;
}

std::string PauliSum::to_string(double drop_tol) const {
  if (terms_.empty()) return "0.0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    const auto& t = terms_[i];
    out += format_coefficient(t.coefficient(), drop_tol);
    for (const auto& [q, l] : t.word()) {
      out += '*';
      out += to_char(l);
      out += std::to_string(q);
    }
  }
  return out;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(Complex scalar, PauliSum a) { return a *= scalar; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  std::map<Word, Complex, WordLess> acc;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      PauliTerm p = ta * tb;
      acc[p.word()] += p.coefficient();
    }
  }
  std::vector<PauliTerm> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc) terms.push_back(PauliTerm::from_word(c, w));
  return PauliSum(std::move(terms));
}

PauliSum simplify(const PauliSum& s, double drop_tol) {
  std::map<Word, Complex, WordLess> acc;
  for (const auto& t : s.terms()) acc[t.word()] += t.coefficient();
  std::vector<PauliTerm> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (std::abs(c) < drop_tol || c == Complex{}) continue;
    terms.push_back(PauliTerm::from_word(c, w));
  }
  return PauliSum(std::move(terms));
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) { return simplify(a * b - b * a); }

bool approx_equal(const PauliSum& a, const PauliSum& b, double tol) {
  const PauliSum d = simplify(a - b, 0.0);
  for (const auto& t : d.terms()) {
    if (std::abs(t.coefficient()) > tol) return false;
  }
  return true;
}

bool is_hermitian(const PauliSum& s, double tol) {
  const PauliSum simplified = simplify(s, 0.0);
  for (const auto& t : simplified.terms()) {
    if (std::abs(t.coefficient().imag()) > tol) return false;
  }
  return true;
}

namespace {

PauliSum jw_ladder(Index mode, bool creation) {
  Word z;
  z.reserve(mode + 1);
  for (Index i = 0; i < mode; ++i) z.emplace_back(i, Label::Z);
  Word wx = z;
  wx.emplace_back(mode, Label::X);
  Word wy = std::move(z);
  wy.emplace_back(mode, Label::Y);
  // sigma^{+} = (X - iY)/2 raises, sigma^{-} = (X + iY)/2 lowers.
  const Complex y_coeff = creation ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
  return PauliSum(std::vector<PauliTerm>{PauliTerm::from_word(0.5, std::move(wx)),
                                         PauliTerm::from_word(y_coeff, std::move(wy))});
}

}  // namespace

PauliSum jw_raise(Index mode) { return jw_ladder(mode, true); }
PauliSum jw_lower(Index mode) { return jw_ladder(mode, false); }

PauliSum jw_transform(const fermion::FermionTerm& term) {
  PauliSum out = PauliTerm::identity(term.coefficient);
  for (const auto& op : term.ops) out = out * jw_ladder(op.mode, op.creation);
  return simplify(out);
}

PauliSum jw_transform(const fermion::FermionSum& sum) {
  PauliSum out;
  for (const auto& t : sum.terms()) out += jw_transform(t);
  return simplify(out);
}

namespace {

class SumParser {
 public:
  explicit SumParser(const std::string& text) {
    // Whitespace-insensitive: strip it but remember original columns.
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        columns_.push_back(i + 1);
      }
    }
  }

  PauliSum parse() {
    PauliSum out;
    if (chars_.empty()) throw ParseError("empty Pauli sum", 1, 1);
    bool first = true;
    while (pos_ < chars_.size()) {
      double sign = 1.0;
      if (!first) {
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          sign = -1.0;
          ++pos_;
        } else {
          fail("expected '+' or '-' between terms");
        }
      }
      first = false;
      const PauliTerm t = parse_term();
      out += t.with_coefficient(t.coefficient() * sign);
    }
    return out;
  }

 private:
  char peek() const { return pos_ < chars_.size() ? chars_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    const std::size_t col = pos_ < columns_.size() ? columns_[pos_]
                                                   : (columns_.empty() ? 1 : columns_.back() + 1);
    throw ParseError(what, 1, col);
  }

  PauliTerm parse_term() {
    Complex coeff = 1.0;
    bool have_coeff = false;
    if ((peek() == '-' || peek() == '+') && pos_ + 1 < chars_.size() &&
        std::isalpha(static_cast<unsigned char>(chars_[pos_ + 1]))) {
      if (peek() == '-') coeff = -1.0;
      ++pos_;
    }
    if (peek() == '(') {
      coeff *= parse_complex();
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' ||
               peek() == '-' || peek() == '+') {
      coeff *= parse_number();
      have_coeff = true;
    }
    std::vector<std::pair<Index, Label>> factors;
    bool need_factor = !have_coeff;
    while (true) {
      if (have_coeff || !factors.empty()) {
        if (peek() != '*') break;
        ++pos_;
      }
      have_coeff = false;
      factors.push_back(parse_factor());
      need_factor = false;
    }
    if (need_factor) fail("expected a term");
    return PauliTerm(coeff, factors);
  }

  std::pair<Index, Label> parse_factor() {
    Label l;
    switch (peek()) {
      case 'X': l = Label::X; break;
      case 'Y': l = Label::Y; break;
      case 'Z': l = Label::Z; break;
      default: fail("expected Pauli factor X, Y or Z");
    }
    ++pos_;
    const std::size_t start = pos_;
    Index q = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      q = q * 10 + static_cast<Index>(peek() - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected qubit index");
    return {q, l};
  }

  double parse_number() {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < chars_.size()) {
      const char c = chars_[pos_];
      const bool exp_sign = (c == '-' || c == '+') && pos_ > start &&
                            (chars_[pos_ - 1] == 'e' || chars_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          exp_sign) {
        ++pos_;
      } else {
        break;
      }
    }
    double v = 0.0;
    const std::string text(chars_.begin() + static_cast<std::ptrdiff_t>(start),
                           chars_.begin() + static_cast<std::ptrdiff_t>(pos_));
    if (!parse_real(text, v)) {
      pos_ = start;
      fail("malformed number '" + text + "'");
    }
    return v;
  }

  Complex parse_complex() {
    ++pos_;  // '('
    const double re = parse_number();
    double im = 0.0;
    if (peek() == '+' || peek() == '-') {
      im = parse_number();
      if (peek() != 'j') fail("expected 'j' in complex coefficient");
      ++pos_;
    }
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return {re, im};
  }

  std::vector<char> chars_;
  std::vector<std::size_t> columns_;
  std::size_t pos_ = 0;
};

}  // namespace

PauliSum parse_pauli_sum(const std::string& text) { return SumParser(text).parse(); }

}  // namespace dmetvqe::pauli
