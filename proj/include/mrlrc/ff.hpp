#pragma once

// Finite fields GF(p^e) and two-level towers GF(p) ⊂ GF(q) ⊂ GF(q^m).
//
// Elements are carried as their canonical integer encoding
//   value = sum_i c_i * p^i
// over the coefficient vector (c_0, ..., c_{e-1}) of the polynomial
// representative modulo the field's modulus. The same integer is used in every
// file format, so no conversion happens at I/O boundaries.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mrlrc::ff {

using Elem = std::uint64_t;

/// Coefficients over GF(p), low to high.
using Poly = std::vector<std::uint32_t>;

/// Largest supported field order p^e.
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 48;

/// Fields up to this order get exp/log/Zech tables; larger ones use polynomial arithmetic.
inline constexpr std::uint64_t kTableOrderLimit = std::uint64_t{1} << 20;

/// Irreducibility is decided by trial division up to this degree (and when the
/// number of candidate divisors stays below kTrialDivisionBudget); Ben-Or's test otherwise.
inline constexpr int kTrialDivisionMaxDegree = 12;
inline constexpr std::uint64_t kTrialDivisionBudget = 1'000'000;

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// p^e, or throws DegreeOverflow when it exceeds kMaxOrder.
std::uint64_t checked_power(std::uint64_t p, int e);

bool is_irreducible(const Poly& monic, std::uint64_t p);

/// Least monic irreducible polynomial of degree e over GF(p), ordering candidates by
/// the integer sum_{i<e} c_i p^i of their non-leading coefficients.
Poly least_irreducible(std::uint64_t p, int e);

class Field {
public:
    static std::shared_ptr<const Field> create(std::uint64_t p, int degree);
    static std::shared_ptr<const Field> create(std::uint64_t p, Poly modulus);

    std::uint64_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return e_; }
    std::uint64_t order() const noexcept { return order_; }
    const Poly& modulus() const noexcept { return modulus_; }

    bool contains(Elem x) const noexcept { return x < order_; }
    /// Throws InvalidInput unless x encodes an element of this field.
    void check(Elem x) const;

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    /// Least element (by canonical integer) of multiplicative order p^e - 1.
    Elem primitive() const noexcept { return primitive_; }
    /// The class x of the modulus variable (p), or 0 for prime fields.
    Elem generator_x() const noexcept { return e_ >= 2 ? p_ : 0; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t exponent) const;

    /// Multiplicative order of a nonzero element.
    std::uint64_t multiplicative_order(Elem a) const;

    Poly digits(Elem a) const;
    Elem from_digits(std::span<const std::uint32_t> digits) const;

    bool same_as(const Field& other) const noexcept {
        return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
    }

private:
    Field(std::uint64_t p, Poly modulus);

    Elem slow_add(Elem a, Elem b) const;
    Elem slow_neg(Elem a) const;
    Elem slow_mul(Elem a, Elem b) const;
    Elem slow_pow(Elem a, std::uint64_t exponent) const;
    void build_tables();

    std::uint64_t p_;
    int e_;
    std::uint64_t order_;
    Poly modulus_;
    std::vector<std::uint64_t> group_order_factors_;
    Elem primitive_ = 1;

    bool tables_ = false;
    std::vector<std::uint32_t> exp_;   // 2(Q-1) entries so log sums need no reduction
    std::vector<std::uint32_t> log_;   // log_[0] unused
    std::vector<std::uint32_t> zech_;  // log(1 + g^k); kZechZero marks 1 + g^k = 0
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p) ⊂ GF(q = p^s) ⊂ GF(q^m). The top field uses the least irreducible modulus of
/// degree s*m; GF(q) is realized inside it through the root of the base modulus with
/// the least canonical integer. Immutable once built.
class FieldTower {
public:
    static std::shared_ptr<const FieldTower> create(std::uint64_t p, int s, int m);

    const Field& base() const noexcept { return *base_; }
    const Field& top() const noexcept { return *top_; }
    const FieldPtr& base_ptr() const noexcept { return base_; }
    const FieldPtr& top_ptr() const noexcept { return top_; }
    std::uint64_t p() const noexcept { return base_->characteristic(); }
    int s() const noexcept { return s_; }
    int m() const noexcept { return m_; }
    std::uint64_t q() const noexcept { return base_->order(); }

    Elem embed(Elem a) const;
    bool in_subfield(Elem x) const;
    /// Inverse of embed; throws InvalidInput when x is outside the embedded subfield.
    Elem pullback(Elem x) const;

    /// x^(q^i).
    Elem frobenius(Elem x, std::uint64_t i) const;
    /// x^(1 + q + ... + q^(l-1)), the norm-like multiplier of linearized RS rows.
    Elem frobenius_norm_power(Elem x, std::uint64_t l) const;
    /// N_{GF(q^m)/GF(q)}(x) as a base-field element; throws ZeroNorm on 0.
    Elem rel_norm(Elem x) const;

    /// Coordinates over GF(q) in the polynomial basis 1, x, ..., x^(m-1).
    std::vector<Elem> coordinates(Elem x) const;
    Elem from_coordinates(std::span<const Elem> coords) const;
    /// First `count` elements of the polynomial basis (count <= m).
    std::vector<Elem> polynomial_basis(int count) const;

    /// a_i = gamma^(i-1) for the canonical primitive gamma; norms are pairwise distinct.
    std::vector<Elem> distinct_norm_elements(int g) const;

private:
    FieldTower(FieldPtr base, FieldPtr top, int s, int m);

    FieldPtr base_;
    FieldPtr top_;
    int s_;
    int m_;
    Elem root_ = 0;                            // image of the base modulus variable
    std::vector<Elem> root_powers_;            // root^0 .. root^(s-1)
    std::vector<Elem> embed_table_;            // filled when q is small
    std::vector<std::vector<std::uint32_t>> to_coords_;  // (s*m)^2 matrix over GF(p)
    std::vector<Elem> basis_;                  // x^0 .. x^(m-1) in the top field
};

using TowerPtr = std::shared_ptr<const FieldTower>;

}  // namespace mrlrc::ff
