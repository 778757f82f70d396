#pragma once

// Local MDS ingredient codes: extended Reed-Solomon generators and the banded
// shapes [I_t B; 0 C] / [I_t B; 0 C; 0 D] used by the global constructions.

#include <vector>

#include "mrlrc/matrix.hpp"

namespace mrlrc {

struct MdsSpec {
    ff::FieldPtr field;
    Index n_loc = 0;
    Index k_loc = 0;
};

/// Largest brute-force width accepted by is_mds.
inline constexpr Index kMdsMaxCols = 24;

/// k x n generator: Vandermonde rows x^0..x^(k-1) over the field points in
/// canonical order, plus the column (0,...,0,1)^T when n = q + 1.
/// Throws LengthExceedsField when n > q + 1, BadParams when k > n.
Matrix extended_rs_generator(const MdsSpec& shape);

/// Generator of the extended RS code split into row bands.
/// The first band is systematic on its own first columns, so its leading t columns
/// read [I_t; 0]. Each later band holds the next Vandermonde rows with the leading t
/// columns cleared against the first band. Every band prefix is nested inside the
/// previous one, so the whole matrix and the first band both generate MDS codes.
/// More than one band requires n_loc <= q.
/// With require_top_mds the first band is re-checked and APrimeNotMds raised on failure.
Matrix structured_mds(const MdsSpec& shape, Index t, const std::vector<Index>& split, bool require_top_mds = false);

/// True iff every rows x rows column minor is invertible. Throws DimensionTooLarge past kMdsMaxCols.
bool is_mds(const Matrix& g);

/// Like is_mds but returns the first failing column set (empty when MDS).
IndexSet first_singular_minor(const Matrix& g);

/// Calls f(subset) for every k-subset of [0, n) in lexicographic order; stops when f returns false.
template <typename F>
bool for_each_subset(Index n, Index k, F&& f) {
    if (k > n) return true;
    IndexSet s(k);
    for (Index i = 0; i < k; ++i) s[i] = i;
    while (true) {
        if (!f(static_cast<const IndexSet&>(s))) return false;
        Index i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++s[i - 1];
        for (Index j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

}  // namespace mrlrc
