#pragma once

// Sum-rank metric, linearized Reed-Solomon codes and brute-force MSRD checks.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrlrc/matrix.hpp"

namespace mrlrc {

/// Length partition (g, r) of a vector over the top field of a tower.
struct SumRankPartition {
    ff::TowerPtr tower;
    Index g = 0;
    Index r = 0;

    Index n() const noexcept { return g * r; }
};

/// Default cap on the number of codewords enumerated by the distance routines.
inline constexpr std::uint64_t kCodewordCap = 1'000'000;

/// Sum over blocks of the GF(q)-dimension spanned by the block's entries.
Index sum_rank_weight(std::span<const Elem> v, const SumRankPartition& part);

/// Rows l = 0..rows-1 of a linearized RS matrix: block i, column j holds
/// points[j]^(q^l) * a_i^(1 + q + ... + q^(l-1)).
Matrix linearized_rows(const ff::FieldTower& tower, std::span<const Elem> a, std::span<const Elem> points, Index rows);

struct LrsCode {
    SumRankPartition part;
    Index k = 0;
    std::vector<Elem> a;
    std::vector<Elem> beta;
    Matrix G;
};

/// k-dimensional linearized RS code with a_i = gamma^(i-1) and beta the first r
/// polynomial-basis elements. Throws BadParams unless q > g and m >= r.
LrsCode lrs_generator(const SumRankPartition& part, Index k);

/// Minimum sum-rank weight over nonzero codewords of the row space of G.
/// Throws TooLargeToEnumerate when (q^m)^k exceeds cap, BadParams for k = 0.
Index min_sum_rank_distance(const Matrix& G, const SumRankPartition& part, std::uint64_t cap = kCodewordCap);

/// min_sum_rank_distance == n - k + 1, with k = rank(G).
bool is_msrd(const Matrix& G, const SumRankPartition& part, std::uint64_t cap = kCodewordCap);

/// All invertible r x r matrices over the base field, in lexicographic order of entries.
std::vector<Matrix> general_linear_group(const ff::FieldPtr& field, Index r);

/// |GL_r(GF(q))|.
std::uint64_t general_linear_order(std::uint64_t q, Index r);

struct ProjectionCheck {
    bool ok = true;
    std::uint64_t tuples_checked = 0;
    std::vector<Matrix> witness;  // the failing A_1..A_g, when !ok
    IndexSet witness_minor;       // a singular column set of the projected code
};

/// Default cap on |GL_r(q)|^g for the exhaustive projection check.
inline constexpr std::uint64_t kTupleCap = 10'000;

/// Checks that G * diag(A_1, ..., A_g) is MDS for every tuple of invertible A_i
/// (exhaustive) or for `samples` seeded random tuples when samples is set.
ProjectionCheck msrd_mds_projection_check(const Matrix& G, const SumRankPartition& part,
                                          std::optional<std::uint64_t> samples = std::nullopt, std::uint64_t seed = 0,
                                          std::uint64_t cap = kTupleCap);

}  // namespace mrlrc
