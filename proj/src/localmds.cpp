#include "mrlrc/localmds.hpp"

#include <numeric>
#include <string>

#include "mrlrc/error.hpp"

namespace mrlrc {

namespace {

Matrix vandermonde_rows(const ff::FieldPtr& F, Index first_row, Index count, Index n) {
    const std::uint64_t q = F->order();
    std::vector<Elem> d(count * n, 0);
    for (Index j = 0; j < n; ++j) {
        if (j == q) {
            // point at infinity: only the top-degree row of the full code is nonzero
            continue;
        }
        for (Index i = 0; i < count; ++i) d[i * n + j] = F->pow(static_cast<Elem>(j), first_row + i);
    }
    return Matrix(F, count, n, std::move(d));
}

void check_shape(const MdsSpec& shape) {
    if (!shape.field) throw Error(ErrorCode::BadParams, "missing field");
    if (shape.k_loc > shape.n_loc) {
        throw Error(ErrorCode::BadParams, "k_loc = " + std::to_string(shape.k_loc) + " exceeds n_loc = " +
                                              std::to_string(shape.n_loc));
    }
    if (shape.n_loc > shape.field->order() + 1) {
        throw Error(ErrorCode::LengthExceedsField, "length " + std::to_string(shape.n_loc) + " exceeds q + 1 = " +
                                                       std::to_string(shape.field->order() + 1));
    }
}

}  // namespace

Matrix extended_rs_generator(const MdsSpec& shape) {
    check_shape(shape);
    Matrix v = vandermonde_rows(shape.field, 0, shape.k_loc, shape.n_loc);
    if (shape.n_loc == shape.field->order() + 1 && shape.k_loc > 0) v = v.with_entry(shape.k_loc - 1, shape.n_loc - 1, 1);
    return v;
}

Matrix structured_mds(const MdsSpec& shape, Index t, const std::vector<Index>& split, bool require_top_mds) {
    check_shape(shape);
    if (split.empty() || std::accumulate(split.begin(), split.end(), Index{0}) != shape.k_loc) {
        throw Error(ErrorCode::BadParams, "row bands must partition k_loc = " + std::to_string(shape.k_loc));
    }
    if (split.front() < t) throw Error(ErrorCode::BadParams, "first band is smaller than t = " + std::to_string(t));

    if (split.size() > 1 && shape.n_loc == shape.field->order() + 1) {
        throw Error(ErrorCode::LengthExceedsField, "banded generators need n_loc <= q");
    }
    const Index top = split.front();
    Matrix top_band = extended_rs_generator({shape.field, shape.n_loc, top});
    IndexSet lead(top);
    std::iota(lead.begin(), lead.end(), Index{0});
    top_band = systematic_form(top_band, lead);
    if (require_top_mds && !is_mds(top_band)) {
        throw Error(ErrorCode::APrimeNotMds, "top band does not generate an MDS code");
    }

    std::vector<Elem> d = top_band.data();
    const Matrix full = extended_rs_generator(shape);
    const auto& F = *shape.field;
    for (Index row = top; row < shape.k_loc; ++row) {
        std::vector<Elem> v(full.row(row).begin(), full.row(row).end());
        for (Index c = 0; c < t; ++c) {
            const Elem f = v[c];
            if (f == 0) continue;
            const Elem nf = F.neg(f);
            for (Index j = 0; j < shape.n_loc; ++j) v[j] = F.add(v[j], F.mul(nf, top_band(c, j)));
        }
        d.insert(d.end(), v.begin(), v.end());
    }
    return Matrix(shape.field, shape.k_loc, shape.n_loc, std::move(d));
}

IndexSet first_singular_minor(const Matrix& g) {
    if (g.rows() > g.cols()) throw Error(ErrorCode::DimensionMismatch, "is_mds needs rows <= cols");
    if (g.cols() > kMdsMaxCols) {
        throw Error(ErrorCode::DimensionTooLarge, "is_mds limited to " + std::to_string(kMdsMaxCols) + " columns");
    }
    IndexSet witness;
    for_each_subset(g.cols(), g.rows(), [&](const IndexSet& s) {
        if (rank(restrict_columns(g, s)) == g.rows()) return true;
        witness = s;
        return false;
    });
    return witness;
}

bool is_mds(const Matrix& g) {
    if (g.rows() == 0) return true;
    return first_singular_minor(g).empty();
}

}  // namespace mrlrc
