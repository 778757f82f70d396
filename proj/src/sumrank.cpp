#include "mrlrc/sumrank.hpp"

#include <algorithm>
#include <string>

#include "mrlrc/error.hpp"
#include "mrlrc/localmds.hpp"
#include "mrlrc/rng.hpp"

namespace mrlrc {

namespace {

void check_partition(const SumRankPartition& part) {
    if (!part.tower) throw Error(ErrorCode::BadParams, "partition without a field tower");
    if (part.g == 0 || part.r == 0) throw Error(ErrorCode::BadParams, "partition needs g, r >= 1");
}

// (q^m)^k, saturating at cap + 1.
std::uint64_t saturating_power(std::uint64_t base, Index k, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (Index i = 0; i < k; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

Matrix project(const Matrix& G, const SumRankPartition& part, const std::vector<Matrix>& blocks) {
    const auto& T = *part.tower;
    std::vector<Matrix> lifted;
    lifted.reserve(blocks.size());
    for (const auto& b : blocks) lifted.push_back(map_entries(b, T.top_ptr(), [&](Elem x) { return T.embed(x); }));
    return multiply(G, block_diag(lifted));
}

}  // namespace

Index sum_rank_weight(std::span<const Elem> v, const SumRankPartition& part) {
    check_partition(part);
    if (v.size() != part.n()) {
        throw Error(ErrorCode::LengthMismatch,
                    "vector length " + std::to_string(v.size()) + " vs partition length " + std::to_string(part.n()));
    }
    const auto& T = *part.tower;
    const Index m = static_cast<Index>(T.m());
    Index total = 0;
    for (Index i = 0; i < part.g; ++i) {
        std::vector<Elem> d;
        d.reserve(part.r * m);
        bool nonzero = false;
        for (Index j = 0; j < part.r; ++j) {
            const Elem x = v[i * part.r + j];
            nonzero = nonzero || x != 0;
            const auto c = T.coordinates(x);
            d.insert(d.end(), c.begin(), c.end());
        }
        if (nonzero) total += rank(Matrix(T.base_ptr(), part.r, m, std::move(d)));
    }
    return total;
}

Matrix linearized_rows(const ff::FieldTower& T, std::span<const Elem> a, std::span<const Elem> points, Index rows) {
    const auto& F = T.top();
    const Index width = points.size();
    const Index cols = a.size() * width;
    std::vector<Elem> d(rows * cols, 0);
    for (Index l = 0; l < rows; ++l) {
        std::vector<Elem> frob(width);
        for (Index j = 0; j < width; ++j) frob[j] = T.frobenius(points[j], l);
        for (Index i = 0; i < a.size(); ++i) {
            const Elem scale = T.frobenius_norm_power(a[i], l);
            for (Index j = 0; j < width; ++j) d[l * cols + i * width + j] = F.mul(frob[j], scale);
        }
    }
    return Matrix(T.top_ptr(), rows, cols, std::move(d));
}

LrsCode lrs_generator(const SumRankPartition& part, Index k) {
    check_partition(part);
    const auto& T = *part.tower;
    if (T.q() <= part.g) {
        throw Error(ErrorCode::BadParams,
                    "linearized RS codes need q > g (q = " + std::to_string(T.q()) + ", g = " + std::to_string(part.g) + ")");
    }
    if (static_cast<Index>(T.m()) < part.r) {
        throw Error(ErrorCode::BadParams,
                    "linearized RS codes need m >= r (m = " + std::to_string(T.m()) + ", r = " + std::to_string(part.r) + ")");
    }
    if (k > part.n()) throw Error(ErrorCode::BadParams, "dimension exceeds g*r");
    LrsCode code{part, k, T.distinct_norm_elements(static_cast<int>(part.g)),
                 T.polynomial_basis(static_cast<int>(part.r)), Matrix(T.top_ptr(), 0, part.n())};
    std::vector<Elem> coords;
    for (Elem b : code.beta) {
        const auto c = T.coordinates(b);
        coords.insert(coords.end(), c.begin(), c.end());
    }
    if (rank(Matrix(T.base_ptr(), part.r, static_cast<Index>(T.m()), coords)) != part.r) {
        throw Error(ErrorCode::RankDeficient, "beta elements are not linearly independent over GF(q)");
    }
    code.G = linearized_rows(T, code.a, code.beta, k);
    return code;
}

Index min_sum_rank_distance(const Matrix& G, const SumRankPartition& part, std::uint64_t cap) {
    check_partition(part);
    if (G.cols() != part.n()) throw Error(ErrorCode::LengthMismatch, "generator width does not match the partition");
    const Index k = G.rows();
    if (k == 0) throw Error(ErrorCode::BadParams, "minimum distance of the zero code is undefined");
    const std::uint64_t Q = G.field().order();
    if (saturating_power(Q, k, cap) > cap) {
        throw Error(ErrorCode::TooLargeToEnumerate, "(q^m)^k exceeds the codeword cap " + std::to_string(cap));
    }
    // Weight is invariant under nonzero scaling, so only messages whose first nonzero
    // entry is 1 need to be visited.
    Index best = part.n() + 1;
    std::vector<Elem> msg(k, 0);
    for (Index lead = 0; lead < k; ++lead) {
        std::fill(msg.begin(), msg.end(), 0);
        msg[lead] = 1;
        bool carry = false;
        while (!carry) {
            const auto c = mul_vec_left(msg, G);
            if (std::any_of(c.begin(), c.end(), [](Elem x) { return x != 0; })) {
                best = std::min(best, sum_rank_weight(c, part));
            }
            carry = true;
            for (Index pos = k; carry && pos > lead + 1;) {
                --pos;
                if (++msg[pos] < Q) {
                    carry = false;
                } else {
                    msg[pos] = 0;
                }
            }
        }
    }
    if (best > part.n()) throw Error(ErrorCode::RankDeficient, "generator spans only the zero codeword");
    return best;
}

bool is_msrd(const Matrix& G, const SumRankPartition& part, std::uint64_t cap) {
    const Index k = rank(G);
    if (k != G.rows()) throw Error(ErrorCode::RankDeficient, "generator rows are dependent");
    return min_sum_rank_distance(G, part, cap) == part.n() - k + 1;
}

std::uint64_t general_linear_order(std::uint64_t q, Index r) {
    std::uint64_t qr = 1;
    for (Index i = 0; i < r; ++i) qr *= q;
    std::uint64_t order = 1;
    std::uint64_t qi = 1;
    for (Index i = 0; i < r; ++i) {
        order *= qr - qi;
        qi *= q;
    }
    return order;
}

std::vector<Matrix> general_linear_group(const ff::FieldPtr& field, Index r) {
    const std::uint64_t q = field->order();
    const std::uint64_t total = saturating_power(q, r * r, kCodewordCap);
    if (total > kCodewordCap) throw Error(ErrorCode::TooLargeToEnumerate, "GL_r enumeration too large");
    std::vector<Matrix> out;
    std::vector<Elem> d(r * r, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (Index i = r * r; i-- > 0;) {
            d[i] = v % q;
            v /= q;
        }
        Matrix m(field, r, r, d);
        if (rank(m) == r) out.push_back(std::move(m));
    }
    return out;
}

ProjectionCheck msrd_mds_projection_check(const Matrix& G, const SumRankPartition& part,
                                          std::optional<std::uint64_t> samples, std::uint64_t seed, std::uint64_t cap) {
    check_partition(part);
    if (G.cols() != part.n()) throw Error(ErrorCode::LengthMismatch, "generator width does not match the partition");
    const auto& base = part.tower->base_ptr();
    ProjectionCheck res;
    auto check_tuple = [&](const std::vector<Matrix>& tuple) {
        ++res.tuples_checked;
        const IndexSet bad = first_singular_minor(project(G, part, tuple));
        if (bad.empty()) return true;
        res.ok = false;
        res.witness = tuple;
        res.witness_minor = bad;
        return false;
    };

    if (samples) {
        if (*samples == 0) throw Error(ErrorCode::BadParams, "sample count must be positive");
        Rng rng(seed);
        const std::uint64_t q = base->order();
        for (std::uint64_t s = 0; s < *samples; ++s) {
            std::vector<Matrix> tuple;
            for (Index i = 0; i < part.g; ++i) {
                while (true) {
                    std::vector<Elem> d(part.r * part.r);
                    for (auto& x : d) x = rng.below(q);
                    Matrix m(base, part.r, part.r, std::move(d));
                    if (rank(m) == part.r) {
                        tuple.push_back(std::move(m));
                        break;
                    }
                }
            }
            if (!check_tuple(tuple)) break;
        }
        return res;
    }

    const std::uint64_t gl = general_linear_order(base->order(), part.r);
    if (saturating_power(gl, part.g, cap) > cap) {
        throw Error(ErrorCode::TooLargeToEnumerate,
                    "|GL_r(q)|^g exceeds the tuple cap " + std::to_string(cap) + "; use sampling");
    }
    const auto group = general_linear_group(base, part.r);
    std::vector<Index> idx(part.g, 0);
    std::vector<Matrix> tuple(part.g, group.front());
    while (true) {
        for (Index i = 0; i < part.g; ++i) tuple[i] = group[idx[i]];
        if (!check_tuple(tuple)) return res;
        Index pos = part.g;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < group.size()) break;
            idx[pos] = 0;
            if (pos == 0) return res;
        }
    }
}

}  // namespace mrlrc
