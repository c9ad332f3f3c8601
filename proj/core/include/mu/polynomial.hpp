#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mu {

// A binary decision variable. One-hot variables x_ik select angle k for
// torsion i; aux variables are introduced by quadratization. The numeric
// code gives the canonical total order: one-hot by (i, k), aux after.
struct BinaryVar {
  std::uint32_t code = 0;

  static constexpr std::uint32_t kAuxFlag = 0x80000000u;

  static BinaryVar onehot(int torsion, int angle) {
    return {static_cast<std::uint32_t>(torsion) << 10 |
            static_cast<std::uint32_t>(angle)};
  }
  static BinaryVar aux(int j) { return {kAuxFlag | static_cast<std::uint32_t>(j)}; }

  bool is_aux() const { return code & kAuxFlag; }
  int torsion() const { return static_cast<int>(code >> 10); }
  int angle() const { return static_cast<int>(code & 0x3ffu); }
  int aux_index() const { return static_cast<int>(code & ~kAuxFlag); }

  std::string token() const {
    if (is_aux()) return "aux" + std::to_string(aux_index());
    return "t" + std::to_string(torsion()) + "_a" + std::to_string(angle());
  }

  auto operator<=>(const BinaryVar&) const = default;
};

struct BinaryVarHash {
  std::size_t operator()(const BinaryVar& v) const noexcept { return v.code; }
};

// Sorted, duplicate-free variable codes. An empty monomial is the constant
// and is stored separately in BinaryPolynomial.
using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : m) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using Assignment = std::unordered_map<BinaryVar, bool, BinaryVarHash>;

// Multilinear polynomial over binary variables, x^2 = x applied eagerly.
// Zero coefficients are never stored.
class BinaryPolynomial {
public:
  using TermMap = std::unordered_map<Monomial, double, MonomialHash>;

  BinaryPolynomial() = default;
  explicit BinaryPolynomial(double constant) : constant_(constant) {}

  static BinaryPolynomial variable(BinaryVar v, double coeff = 1.0);

  double constant() const { return constant_; }
  void set_constant(double c) { constant_ = c; }

  // `vars` need not be sorted; duplicates collapse (x^2 = x).
  void add_term(std::vector<BinaryVar> vars, double coeff);
  void add_sorted_term(const Monomial& mono, double coeff);

  double coefficient(const Monomial& mono) const;

  BinaryPolynomial& operator+=(const BinaryPolynomial& o);
  BinaryPolynomial& operator-=(const BinaryPolynomial& o);
  BinaryPolynomial& operator*=(double s);

  std::size_t term_count() const { return terms_.size(); }  // non-constant terms
  bool empty() const { return terms_.empty() && constant_ == 0.0; }
  int degree() const;
  double max_abs_coeff() const;  // over non-constant terms; 0 if none

  std::vector<BinaryVar> variables() const;  // sorted, distinct

  double evaluate(const Assignment& a) const;  // throws UnboundVariable

  const TermMap& terms() const { return terms_; }
  // Terms sorted by (degree, variable codes); deterministic for output.
  std::vector<std::pair<Monomial, double>> sorted_terms() const;

private:
  double constant_ = 0.0;
  TermMap terms_;

  friend BinaryPolynomial multiply(const BinaryPolynomial&, const BinaryPolynomial&);
  friend BinaryPolynomial square(const BinaryPolynomial&);
};

BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b);
BinaryPolynomial operator-(BinaryPolynomial a, const BinaryPolynomial& b);
BinaryPolynomial operator*(BinaryPolynomial a, double s);

BinaryPolynomial multiply(const BinaryPolynomial& a, const BinaryPolynomial& b);
BinaryPolynomial square(const BinaryPolynomial& p);

}  // namespace mu
