#pragma once

// Exact arithmetic in GF(p^k).
//
// Elements are encoded as integers in [0, p^k): the polynomial
// c_0 + c_1 x + ... + c_{k-1} x^{k-1} modulo the field's modulus is stored
// as c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Hot loops work on raw `Elem`
// values together with a `const Field&`; `FieldElement` is the checked
// value type for callers that want operators.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quadcode {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
  public:
    /// Deterministic GF(p^k): the modulus is the monic primitive polynomial of
    /// degree k with the smallest integer encoding sum(c_i p^i), i < k.  For
    /// k = 1 the modulus is x and the generator is the least primitive root.
    /// Instances are cached and shared.
    static FieldPtr make(unsigned p, unsigned k = 1);

    /// GF(q) for a prime power q.
    static FieldPtr of_order(unsigned q);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    Elem order() const { return order_; }
    /// Coefficients c_0..c_k of the monic modulus.
    std::span<const Elem> modulus() const { return modulus_; }
    /// Canonical multiplicative generator (the residue of x when k > 1).
    Elem generator() const { return generator_; }

    Elem add(Elem a, Elem b) const {
        return add_table_.empty() ? add_slow(a, b) : add_table_[a * order_ + b];
    }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    /// Throws std::domain_error on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    /// Negative exponents are allowed for nonzero bases.
    Elem pow(Elem a, std::int64_t e) const;
    /// Multiplicative order of a nonzero element.
    std::uint64_t multiplicative_order(Elem a) const;

    /// g^i for the canonical generator g.
    Elem exp(std::uint64_t i) const { return exp_[i % (order_ - 1)]; }
    /// Discrete log base the canonical generator; a must be nonzero.
    std::uint32_t log(Elem a) const { return log_[a]; }

    /// Image of an integer under Z -> GF(p).
    Elem from_int(std::int64_t n) const;
    std::vector<Elem> to_poly(Elem a) const;
    Elem from_poly(std::span<const Elem> coeffs) const;

    bool is_valid(Elem a) const { return a < order_; }
    std::string name() const;

  private:
    Field(unsigned p, unsigned k);
    Elem add_slow(Elem a, Elem b) const;

    unsigned p_;
    unsigned k_;
    Elem order_;
    Elem generator_ = 0;
    std::vector<Elem> modulus_;
    std::vector<Elem> exp_;          // length 2(order-1)
    std::vector<std::uint32_t> log_; // log_[0] unused
    std::vector<Elem> neg_;
    std::vector<Elem> add_table_;    // order^2 entries when small
};

/// Checked element bound to its field.
class FieldElement {
  public:
    FieldElement(FieldPtr field, Elem value);
    static FieldElement zero(FieldPtr field) { return {std::move(field), 0}; }
    static FieldElement one(FieldPtr field) { return {std::move(field), 1}; }

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::int64_t e) const;

    bool operator==(const FieldElement& o) const;

  private:
    const Field& same_field(const FieldElement& o) const;

    FieldPtr field_;
    Elem value_;
};

/// GF(q) inside GF(q^m), both built by Field::make over the same prime.
class Tower {
  public:
    Tower(FieldPtr base, unsigned m);

    const Field& base() const { return *base_; }
    const Field& ext() const { return *ext_; }
    const FieldPtr& base_ptr() const { return base_; }
    const FieldPtr& ext_ptr() const { return ext_; }
    unsigned degree() const { return m_; }
    /// Image of the base field's canonical generator.
    Elem embed_image() const { return embed_image_; }

    Elem embed(Elem a) const { return embed_[a]; }
    /// Inverse of embed on the subfield; empty for elements outside it.
    std::optional<Elem> restrict(Elem a) const;
    bool in_base(Elem a) const { return restrict_[a] != kNone; }

    /// a^(q^i), q = |base|.
    Elem frobenius(Elem a, int i = 1) const;
    /// a + a^q + ... + a^(q^(m-1)), as an element of the base.
    Elem trace(Elem a) const;
    /// m base-field coordinates Tr(w^j a), j < m, with w the ext generator.
    /// They all vanish iff a = 0.
    std::vector<Elem> components(Elem a) const;

  private:
    static constexpr Elem kNone = 0xffffffffu;

    FieldPtr base_;
    FieldPtr ext_;
    unsigned m_;
    Elem embed_image_ = 0;
    std::vector<Elem> embed_;
    std::vector<Elem> restrict_;
};

/// Prime-power test; fills p and k on success.
bool prime_power(unsigned q, unsigned& p, unsigned& k);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

} // namespace quadcode
