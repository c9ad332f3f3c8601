#include "mu/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mu/errors.hpp"

namespace mu {

BinaryPolynomial BinaryPolynomial::variable(BinaryVar v, double coeff) {
  BinaryPolynomial p;
  p.add_term({v}, coeff);
  return p;
}

void BinaryPolynomial::add_term(std::vector<BinaryVar> vars, double coeff) {
  Monomial mono;
  mono.reserve(vars.size());
  for (BinaryVar v : vars) mono.push_back(v.code);
  std::sort(mono.begin(), mono.end());
  mono.erase(std::unique(mono.begin(), mono.end()), mono.end());
  add_sorted_term(mono, coeff);
}

void BinaryPolynomial::add_sorted_term(const Monomial& mono, double coeff) {
  if (coeff == 0.0) return;
  if (mono.empty()) {
    constant_ += coeff;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double BinaryPolynomial::coefficient(const Monomial& mono) const {
  if (mono.empty()) return constant_;
  auto it = terms_.find(mono);
  return it == terms_.end() ? 0.0 : it->second;
}

BinaryPolynomial& BinaryPolynomial::operator+=(const BinaryPolynomial& o) {
  constant_ += o.constant_;
  for (const auto& [mono, c] : o.terms_) add_sorted_term(mono, c);
  return *this;
}

BinaryPolynomial& BinaryPolynomial::operator-=(const BinaryPolynomial& o) {
  constant_ -= o.constant_;
  for (const auto& [mono, c] : o.terms_) add_sorted_term(mono, -c);
  return *this;
}

BinaryPolynomial& BinaryPolynomial::operator*=(double s) {
  if (s == 0.0) {
    constant_ = 0.0;
    terms_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [mono, c] : terms_) c *= s;
  return *this;
}

int BinaryPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.size());
  return static_cast<int>(d);
}

double BinaryPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<BinaryVar> BinaryPolynomial::variables() const {
  std::vector<std::uint32_t> codes;
  for (const auto& [mono, c] : terms_)
    codes.insert(codes.end(), mono.begin(), mono.end());
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<BinaryVar> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back({c});
  return out;
}

double BinaryPolynomial::evaluate(const Assignment& a) const {
  double total = constant_;
  for (const auto& [mono, c] : terms_) {
    bool all_one = true;
    for (std::uint32_t code : mono) {
      auto it = a.find(BinaryVar{code});
      if (it == a.end())
        throw UnboundVariable("assignment does not bind " + BinaryVar{code}.token());
      if (!it->second) {
        all_one = false;
        break;
      }
    }
    if (all_one) total += c;
  }
  return total;
}

std::vector<std::pair<Monomial, double>> BinaryPolynomial::sorted_terms() const {
  std::vector<std::pair<Monomial, double>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b) {
  a += b;
  return a;
}

BinaryPolynomial operator-(BinaryPolynomial a, const BinaryPolynomial& b) {
  a -= b;
  return a;
}

BinaryPolynomial operator*(BinaryPolynomial a, double s) {
  a *= s;
  return a;
}

namespace {

// Open-addressing accumulator for mask-encoded monomials. Products of
// polynomials over <= 64 distinct variables run through this instead of the
// generic term map: a monomial product is a single OR (x^2 = x for free).
class MaskTable {
public:
  explicit MaskTable(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, 0.0);
    mask_ = cap - 1;
  }

  void add(std::uint64_t key, double val) {
    if (size_ * 2 >= keys_.size()) grow();
    std::size_t i = hash(key) & mask_;
    while (true) {
      if (keys_[i] == key) {
        vals_[i] += val;
        return;
      }
      if (keys_[i] == kEmpty) {
        keys_[i] = key;
        vals_[i] = val;
        ++size_;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] != kEmpty && vals_[i] != 0.0) fn(keys_[i], vals_[i]);
  }

private:
  static constexpr std::uint64_t kEmpty = ~0ull;

  static std::size_t hash(std::uint64_t k) {
    k *= 0x9e3779b97f4a7c15ull;
    return static_cast<std::size_t>(k >> 29);
  }

  void grow() {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<double> old_vals = std::move(vals_);
    keys_.assign(old_keys.size() * 2, kEmpty);
    vals_.assign(old_vals.size() * 2, 0.0);
    mask_ = keys_.size() - 1;
    size_ = 0;
    for (std::size_t i = 0; i < old_keys.size(); ++i)
      if (old_keys[i] != kEmpty) add(old_keys[i], old_vals[i]);
  }

  std::vector<std::uint64_t> keys_;
  std::vector<double> vals_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

struct MaskedPoly {
  std::vector<std::uint64_t> masks;  // mask 0 = constant
  std::vector<double> coeffs;
};

MaskedPoly to_masks(const BinaryPolynomial& p,
                    const std::unordered_map<std::uint32_t, int>& bit_of) {
  MaskedPoly mp;
  mp.masks.reserve(p.terms().size() + 1);
  mp.coeffs.reserve(p.terms().size() + 1);
  if (p.constant() != 0.0) {
    mp.masks.push_back(0);
    mp.coeffs.push_back(p.constant());
  }
  for (const auto& [mono, c] : p.terms()) {
    std::uint64_t mask = 0;
    for (std::uint32_t code : mono) mask |= 1ull << bit_of.at(code);
    mp.masks.push_back(mask);
    mp.coeffs.push_back(c);
  }
  return mp;
}

BinaryPolynomial from_table(const MaskTable& table, const std::vector<std::uint32_t>& codes) {
  BinaryPolynomial out;
  table.for_each([&](std::uint64_t mask, double val) {
    if (mask == 0) {
      out.set_constant(out.constant() + val);
      return;
    }
    Monomial mono;
    mono.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask) {
      int bit = std::countr_zero(mask);
      mono.push_back(codes[bit]);
      mask &= mask - 1;
    }
    out.add_sorted_term(mono, val);  // bits ascend with codes, already sorted
  });
  return out;
}

std::vector<std::uint32_t> merged_variables(const BinaryPolynomial& a,
                                            const BinaryPolynomial& b) {
  std::vector<std::uint32_t> codes;
  for (const auto* p : {&a, &b})
    for (const auto& [mono, c] : p->terms())
      codes.insert(codes.end(), mono.begin(), mono.end());
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

BinaryPolynomial multiply_generic(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  BinaryPolynomial out;
  out.set_constant(a.constant() * b.constant());
  if (b.constant() != 0.0)
    for (const auto& [mono, c] : a.terms()) out.add_sorted_term(mono, c * b.constant());
  if (a.constant() != 0.0)
    for (const auto& [mono, c] : b.terms()) out.add_sorted_term(mono, c * a.constant());
  Monomial merged;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      merged.clear();
      std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(),
                     std::back_inserter(merged));
      out.add_sorted_term(merged, ca * cb);
    }
  }
  return out;
}

}  // namespace

BinaryPolynomial multiply(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  auto codes = merged_variables(a, b);
  if (codes.size() > 64) return multiply_generic(a, b);

  std::unordered_map<std::uint32_t, int> bit_of;
  for (std::size_t i = 0; i < codes.size(); ++i) bit_of[codes[i]] = static_cast<int>(i);
  MaskedPoly ma = to_masks(a, bit_of), mb = to_masks(b, bit_of);

  MaskTable table(ma.masks.size() * mb.masks.size() / 4 + 16);
  for (std::size_t i = 0; i < ma.masks.size(); ++i)
    for (std::size_t j = 0; j < mb.masks.size(); ++j)
      table.add(ma.masks[i] | mb.masks[j], ma.coeffs[i] * mb.coeffs[j]);
  return from_table(table, codes);
}

BinaryPolynomial square(const BinaryPolynomial& p) {
  auto codes = merged_variables(p, p);
  if (codes.size() > 64) return multiply_generic(p, p);

  std::unordered_map<std::uint32_t, int> bit_of;
  for (std::size_t i = 0; i < codes.size(); ++i) bit_of[codes[i]] = static_cast<int>(i);
  MaskedPoly mp = to_masks(p, bit_of);

  const std::size_t n = mp.masks.size();
  MaskTable table(n * n / 8 + 16);
  for (std::size_t i = 0; i < n; ++i) {
    // m * m = m, so diagonal terms keep their monomial.
    table.add(mp.masks[i], mp.coeffs[i] * mp.coeffs[i]);
    for (std::size_t j = i + 1; j < n; ++j)
      table.add(mp.masks[i] | mp.masks[j], 2.0 * mp.coeffs[i] * mp.coeffs[j]);
  }
  return from_table(table, codes);
}

}  // namespace mu
