#include "mrlrc/ff.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "mrlrc/error.hpp"

namespace mrlrc::ff {

namespace {

constexpr std::uint32_t kZechZero = std::numeric_limits<std::uint32_t>::max();

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (e != 0) {
        if (e & 1U) result = mulmod64(result, base, mod);
        base = mulmod64(base, base, mod);
        e >>= 1U;
    }
    return result;
}

// Polynomial helpers over GF(p). Polynomials are trimmed (no trailing zeros);
// the zero polynomial is the empty vector.

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint64_t p) {
    return static_cast<std::uint32_t>(powmod64(a, p - 2, p));
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inv_mod_p(f.back(), p);
    while (a.size() >= f.size()) {
        const std::size_t shift = a.size() - f.size();
        const std::uint64_t c = a.back() * lead_inv % p;
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i] % p) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e != 0) {
        if (e & 1U) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1U;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_from_index(std::uint64_t index, int degree, std::uint64_t p) {
    Poly f(static_cast<std::size_t>(degree) + 1, 0);
    for (int i = 0; i < degree; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
    f.back() = 1;
    return f;
}

bool irreducible_by_trial_division(const Poly& f, std::uint64_t p) {
    const int e = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= e / 2; ++d) {
        const std::uint64_t count = checked_power(p, d);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (poly_mod(f, poly_from_index(idx, d, p), p).empty()) return false;
        }
    }
    return true;
}

bool irreducible_by_ben_or(const Poly& f, std::uint64_t p) {
    const int e = static_cast<int>(f.size()) - 1;
    const Poly x{0, 1};
    Poly h = poly_mod(x, f, p);
    for (int i = 1; i <= e / 2; ++i) {
        h = poly_powmod(h, p, f, p);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

// Gauss-Jordan inverse over GF(p); returns empty on singular input.
std::vector<std::vector<std::uint32_t>> invert_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                     std::uint64_t p) {
    const std::size_t n = a.size();
    std::vector<std::vector<std::uint32_t>> inv(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return {};
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const std::uint64_t s = inv_mod_p(a[col][col], p);
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = static_cast<std::uint32_t>(a[col][j] * s % p);
            inv[col][j] = static_cast<std::uint32_t>(inv[col][j] * s % p);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const std::uint64_t f = p - a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] = static_cast<std::uint32_t>((a[row][j] + f * a[col][j]) % p);
                inv[row][j] = static_cast<std::uint32_t>((inv[row][j] + f * inv[col][j]) % p);
            }
        }
    }
    return inv;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % d == 0) return n == d;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    // Deterministic Miller-Rabin bases for 64-bit inputs.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t checked_power(std::uint64_t p, int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > kMaxOrder / p) {
            throw Error(ErrorCode::DegreeOverflow,
                        std::to_string(p) + "^" + std::to_string(e) + " exceeds the supported field order 2^48");
        }
        v *= p;
    }
    return v;
}

bool is_irreducible(const Poly& monic, std::uint64_t p) {
    if (monic.size() < 2 || monic.back() != 1) return false;
    const int e = static_cast<int>(monic.size()) - 1;
    if (e == 1) return true;
    if (monic.front() == 0) return false;
    std::uint64_t candidates = 0;
    bool within_budget = e <= kTrialDivisionMaxDegree;
    for (int d = 1; within_budget && d <= e / 2; ++d) {
        candidates += checked_power(p, d);
        within_budget = candidates <= kTrialDivisionBudget;
    }
    return within_budget ? irreducible_by_trial_division(monic, p) : irreducible_by_ben_or(monic, p);
}

Poly least_irreducible(std::uint64_t p, int e) {
    const std::uint64_t count = checked_power(p, e);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f = poly_from_index(idx, e, p);
        if (is_irreducible(f, p)) return f;
    }
    throw Error(ErrorCode::BadParams, "no irreducible polynomial found");  // unreachable for prime p
}

// ---------------------------------------------------------------------------
// Field

std::shared_ptr<const Field> Field::create(std::uint64_t p, int degree) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (degree < 1) throw Error(ErrorCode::BadParams, "field degree must be positive");
    checked_power(p, degree);
    return create(p, least_irreducible(p, degree));
}

std::shared_ptr<const Field> Field::create(std::uint64_t p, Poly modulus) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::DegreeOverflow, "characteristic must fit in 32 bits");
    }
    for (auto c : modulus) {
        if (c >= p) throw Error(ErrorCode::InvalidInput, "modulus coefficient out of range");
    }
    if (!is_irreducible(modulus, p)) {
        throw Error(ErrorCode::InvalidInput, "modulus is not a monic irreducible polynomial");
    }
    return std::shared_ptr<const Field>(new Field(p, std::move(modulus)));
}

Field::Field(std::uint64_t p, Poly modulus)
    : p_(p), e_(static_cast<int>(modulus.size()) - 1), order_(checked_power(p, e_)), modulus_(std::move(modulus)) {
    group_order_factors_ = prime_factors(order_ - 1);
    for (Elem c = 1; c < order_; ++c) {
        bool primitive = true;
        for (auto f : group_order_factors_) {
            if (slow_pow(c, (order_ - 1) / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            primitive_ = c;
            break;
        }
    }
    if (order_ <= kTableOrderLimit) build_tables();
}

void Field::build_tables() {
    const std::uint64_t n = order_ - 1;
    exp_.assign(2 * n, 0);
    log_.assign(order_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x);
        exp_[i + n] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, primitive_);
    }
    if (p_ != 2) {
        zech_.assign(n, 0);
        for (std::uint64_t k = 0; k < n; ++k) {
            const Elem v = slow_add(1, exp_[k]);
            zech_[k] = v == 0 ? kZechZero : log_[v];
        }
    }
    tables_ = true;
}

void Field::check(Elem x) const {
    if (!contains(x)) {
        throw Error(ErrorCode::InvalidInput,
                    std::to_string(x) + " is not an element of GF(" + std::to_string(order_) + ")");
    }
}

Poly Field::digits(Elem a) const {
    Poly d(static_cast<std::size_t>(e_), 0);
    for (int i = 0; i < e_ && a != 0; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(a % p_);
        a /= p_;
    }
    return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
    Elem v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * p_ + (digits[i] % p_);
    return v;
}

Elem Field::slow_add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem result = 0;
    Elem scale = 1;
    while (a != 0 || b != 0) {
        result += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return result;
}

Elem Field::slow_neg(Elem a) const {
    if (p_ == 2) return a;
    Elem result = 0;
    Elem scale = 1;
    while (a != 0) {
        result += ((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return result;
}

Elem Field::slow_mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return mulmod64(a, b, p_);
    std::array<std::uint64_t, 48> da{};
    std::array<std::uint64_t, 48> db{};
    std::array<std::uint64_t, 96> prod{};
    for (int i = 0; i < e_; ++i) {
        da[static_cast<std::size_t>(i)] = a % p_;
        a /= p_;
        db[static_cast<std::size_t>(i)] = b % p_;
        b /= p_;
    }
    for (int i = 0; i < e_; ++i) {
        if (da[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < e_; ++j) {
            auto& slot = prod[static_cast<std::size_t>(i + j)];
            slot = (slot + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
        }
    }
    for (int deg = 2 * e_ - 2; deg >= e_; --deg) {
        const std::uint64_t c = prod[static_cast<std::size_t>(deg)];
        if (c == 0) continue;
        const std::uint64_t minus_c = p_ - c;
        for (int i = 0; i < e_; ++i) {
            auto& slot = prod[static_cast<std::size_t>(deg - e_ + i)];
            slot = (slot + minus_c * modulus_[static_cast<std::size_t>(i)]) % p_;
        }
        prod[static_cast<std::size_t>(deg)] = 0;
    }
    Elem v = 0;
    for (int i = e_ - 1; i >= 0; --i) v = v * p_ + prod[static_cast<std::size_t>(i)];
    return v;
}

Elem Field::slow_pow(Elem a, std::uint64_t exponent) const {
    Elem result = 1;
    while (exponent != 0) {
        if (exponent & 1U) result = slow_mul(result, a);
        a = slow_mul(a, a);
        exponent >>= 1U;
    }
    return result;
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!tables_) return slow_add(a, b);
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint64_t n = order_ - 1;
    const std::uint32_t la = log_[a];
    const std::uint32_t lb = log_[b];
    const std::uint64_t k = lb >= la ? lb - la : lb + n - la;
    const std::uint32_t z = zech_[k];
    if (z == kZechZero) return 0;
    return exp_[la + z];
}

Elem Field::neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    if (!tables_) return slow_neg(a);
    return exp_[log_[a] + (order_ - 1) / 2];
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!tables_) return slow_mul(a, b);
    return exp_[log_[a] + log_[b]];
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (!tables_) return slow_pow(a, order_ - 2);
    return exp_[(order_ - 1) - log_[a]];
}

Elem Field::pow(Elem a, std::uint64_t exponent) const {
    if (exponent == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = order_ - 1;
    if (!tables_) return slow_pow(a, exponent % n == 0 ? n : exponent % n);
    return exp_[mulmod64(log_[a], exponent % n, n)];
}

std::uint64_t Field::multiplicative_order(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "zero has no multiplicative order");
    std::uint64_t ord = order_ - 1;
    for (auto f : group_order_factors_) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

// ---------------------------------------------------------------------------
// FieldTower

std::shared_ptr<const FieldTower> FieldTower::create(std::uint64_t p, int s, int m) {
    if (s < 1 || m < 1) throw Error(ErrorCode::BadParams, "tower degrees s and m must be positive");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    checked_power(p, s * m);
    auto base = Field::create(p, s);
    auto top = Field::create(p, s * m);
    return std::shared_ptr<const FieldTower>(new FieldTower(std::move(base), std::move(top), s, m));
}

FieldTower::FieldTower(FieldPtr base, FieldPtr top, int s, int m)
    : base_(std::move(base)), top_(std::move(top)), s_(s), m_(m) {
    const Field& T = *top_;
    const Poly& fb = base_->modulus();
    auto eval_base_modulus = [&](Elem y) {
        Elem acc = 0;
        for (std::size_t i = fb.size(); i-- > 0;) acc = T.add(T.mul(acc, y), fb[i]);
        return acc;
    };
    if (s_ == 1) {
        root_ = T.sub(0, fb[0]);  // root of x + c is -c
    } else {
        // The roots live in the subfield generated by w = gamma^((Q-1)/(q-1)); collect the
        // conjugates of the first root found and keep the least.
        const Elem w = T.pow(T.primitive(), (T.order() - 1) / (base_->order() - 1));
        Elem y = w;
        bool found = false;
        for (std::uint64_t j = 1; j < base_->order(); ++j, y = T.mul(y, w)) {
            if (eval_base_modulus(y) == 0) {
                found = true;
                break;
            }
        }
        if (!found) throw Error(ErrorCode::BadParams, "base modulus has no root in the top field");
        root_ = y;
        Elem conj = y;
        for (int i = 1; i < s_; ++i) {
            conj = T.pow(conj, T.characteristic());
            root_ = std::min(root_, conj);
        }
    }
    root_powers_.resize(static_cast<std::size_t>(s_));
    Elem rp = 1;
    for (int a = 0; a < s_; ++a) {
        root_powers_[static_cast<std::size_t>(a)] = rp;
        rp = T.mul(rp, root_);
    }
    if (base_->order() <= (1U << 16)) {
        embed_table_.resize(base_->order());
        for (Elem a = 0; a < base_->order(); ++a) {
            Elem acc = 0;
            Elem v = a;
            for (int i = 0; i < s_; ++i, v /= p()) {
                acc = T.add(acc, T.mul(v % p(), root_powers_[static_cast<std::size_t>(i)]));
            }
            embed_table_[a] = acc;
        }
    }

    basis_.resize(static_cast<std::size_t>(m_));
    Elem xp = 1;
    for (int i = 0; i < m_; ++i) {
        basis_[static_cast<std::size_t>(i)] = xp;
        xp = T.mul(xp, T.generator_x());
    }

    const std::size_t dim = static_cast<std::size_t>(s_) * static_cast<std::size_t>(m_);
    std::vector<std::vector<std::uint32_t>> mat(dim, std::vector<std::uint32_t>(dim, 0));
    for (int i = 0; i < m_; ++i) {
        for (int a = 0; a < s_; ++a) {
            const Elem b = T.mul(root_powers_[static_cast<std::size_t>(a)], basis_[static_cast<std::size_t>(i)]);
            const Poly d = T.digits(b);
            const std::size_t col = static_cast<std::size_t>(i) * static_cast<std::size_t>(s_) + static_cast<std::size_t>(a);
            for (std::size_t row = 0; row < dim; ++row) mat[row][col] = d[row];
        }
    }
    to_coords_ = invert_mod_p(std::move(mat), p());
    if (to_coords_.empty()) throw Error(ErrorCode::Singular, "polynomial basis is not a GF(q)-basis");
}

Elem FieldTower::embed(Elem a) const {
    base_->check(a);
    if (!embed_table_.empty()) return embed_table_[a];
    const Field& T = *top_;
    Elem acc = 0;
    for (int i = 0; i < s_; ++i, a /= p()) {
        acc = T.add(acc, T.mul(a % p(), root_powers_[static_cast<std::size_t>(i)]));
    }
    return acc;
}

std::vector<Elem> FieldTower::coordinates(Elem x) const {
    top_->check(x);
    const Poly d = top_->digits(x);
    const std::size_t dim = d.size();
    const std::uint64_t P = p();
    std::vector<Elem> out(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
        Elem v = 0;
        Elem scale = 1;
        for (int a = 0; a < s_; ++a) {
            const auto& row = to_coords_[static_cast<std::size_t>(i * s_ + a)];
            std::uint64_t c = 0;
            for (std::size_t j = 0; j < dim; ++j) c = (c + std::uint64_t{row[j]} * d[j]) % P;
            v += c * scale;
            scale *= P;
        }
        out[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

Elem FieldTower::from_coordinates(std::span<const Elem> coords) const {
    if (coords.size() != static_cast<std::size_t>(m_)) {
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(m_) + " coordinates");
    }
    Elem acc = 0;
    for (int i = 0; i < m_; ++i) {
        acc = top_->add(acc, top_->mul(embed(coords[static_cast<std::size_t>(i)]), basis_[static_cast<std::size_t>(i)]));
    }
    return acc;
}

std::vector<Elem> FieldTower::polynomial_basis(int count) const {
    if (count < 0 || count > m_) {
        throw Error(ErrorCode::BadParams, "basis size " + std::to_string(count) + " exceeds m = " + std::to_string(m_));
    }
    return {basis_.begin(), basis_.begin() + count};
}

bool FieldTower::in_subfield(Elem x) const {
    const auto c = coordinates(x);
    return std::all_of(c.begin() + 1, c.end(), [](Elem v) { return v == 0; });
}

Elem FieldTower::pullback(Elem x) const {
    const auto c = coordinates(x);
    if (!std::all_of(c.begin() + 1, c.end(), [](Elem v) { return v == 0; })) {
        throw Error(ErrorCode::InvalidInput, std::to_string(x) + " does not lie in the embedded subfield");
    }
    return c[0];
}

Elem FieldTower::frobenius(Elem x, std::uint64_t i) const {
    top_->check(x);
    std::uint64_t e = 1;
    for (std::uint64_t j = 0; j < i % static_cast<std::uint64_t>(m_); ++j) e *= q();
    return top_->pow(x, e);
}

Elem FieldTower::frobenius_norm_power(Elem x, std::uint64_t l) const {
    top_->check(x);
    if (l == 0) return 1;
    if (x == 0) return 0;
    const std::uint64_t n = top_->order() - 1;
    std::uint64_t e = 0;
    std::uint64_t qi = 1 % n;
    for (std::uint64_t j = 0; j < l; ++j) {
        e = (e + qi) % n;
        qi = mulmod64(qi, q() % n, n);
    }
    return top_->pow(x, e == 0 ? n : e);
}

Elem FieldTower::rel_norm(Elem x) const {
    top_->check(x);
    if (x == 0) throw Error(ErrorCode::ZeroNorm, "norm of zero is excluded");
    return pullback(top_->pow(x, (top_->order() - 1) / (q() - 1)));
}

std::vector<Elem> FieldTower::distinct_norm_elements(int g) const {
    if (g < 1) throw Error(ErrorCode::BadParams, "block count must be positive");
    if (static_cast<std::uint64_t>(g) > q() - 1) {
        throw Error(ErrorCode::TooManyBlocks,
                    std::to_string(g) + " blocks need " + std::to_string(g) + " distinct norms but GF(" +
                        std::to_string(q()) + ") has only " + std::to_string(q() - 1));
    }
    std::vector<Elem> out(static_cast<std::size_t>(g));
    Elem x = 1;
    for (int i = 0; i < g; ++i) {
        out[static_cast<std::size_t>(i)] = x;
        x = top_->mul(x, top_->primitive());
    }
    return out;
}

}  // namespace mrlrc::ff
