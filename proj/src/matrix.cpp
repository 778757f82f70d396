#include "mrlrc/matrix.hpp"

#include <string>
#include <utility>

#include "mrlrc/error.hpp"

namespace mrlrc {

namespace {

std::string dims(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_field(const Matrix& a, const Matrix& b) {
    if (!a.field().same_as(b.field())) throw Error(ErrorCode::MixedFields, "matrices live over different fields");
}

// In-place reduction of a row-major buffer to reduced row echelon form. The pivot
// in each column is the first nonzero entry at or below the current row.
IndexSet reduce_in_place(const ff::Field& F, std::vector<Elem>& a, Index rows, Index cols, Index pivot_cols) {
    IndexSet pivots;
    Index r = 0;
    for (Index c = 0; c < pivot_cols && r < rows; ++c) {
        Index p = r;
        while (p < rows && a[p * cols + c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (Index j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
        }
        const Elem s = F.inv(a[r * cols + c]);
        if (s != 1) {
            for (Index j = c; j < cols; ++j) a[r * cols + j] = F.mul(a[r * cols + j], s);
        }
        for (Index i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Elem f = a[i * cols + c];
            if (f == 0) continue;
            const Elem nf = F.neg(f);
            for (Index j = c; j < cols; ++j) {
                const Elem v = a[r * cols + j];
                if (v != 0) a[i * cols + j] = F.add(a[i * cols + j], F.mul(nf, v));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix::Matrix(ff::FieldPtr field, Index rows, Index cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(ff::FieldPtr field, Index rows, Index cols, std::vector<Elem> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::DimensionMismatch, "data size does not match " + std::to_string(rows) + "x" +
                                                      std::to_string(cols));
    }
    for (Elem v : data_) field_->check(v);
}

Matrix Matrix::identity(ff::FieldPtr field, Index n) {
    std::vector<Elem> d(n * n, 0);
    for (Index i = 0; i < n; ++i) d[i * n + i] = 1;
    return Matrix(std::move(field), n, n, std::move(d));
}

Matrix Matrix::from_rows(ff::FieldPtr field, const std::vector<std::vector<Elem>>& rows) {
    const Index r = rows.size();
    const Index c = r == 0 ? 0 : rows.front().size();
    std::vector<Elem> d;
    d.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged row list");
        d.insert(d.end(), row.begin(), row.end());
    }
    return Matrix(std::move(field), r, c, std::move(d));
}

Elem Matrix::at(Index r, Index c) const {
    if (r >= rows_ || c >= cols_) {
        throw Error(ErrorCode::IndexOutOfRange, "(" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                                                    dims(*this));
    }
    return (*this)(r, c);
}

Matrix Matrix::with_entry(Index r, Index c, Elem value) const {
    at(r, c);
    field_->check(value);
    auto d = data_;
    d[r * cols_ + c] = value;
    return Matrix(field_, rows_, cols_, std::move(d));
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && field_->same_as(*other.field_) && data_ == other.data_;
}

Echelon rref(const Matrix& m) {
    auto d = m.data();
    IndexSet pivots = reduce_in_place(m.field(), d, m.rows(), m.cols(), m.cols());
    return {Matrix(m.field_ptr(), m.rows(), m.cols(), std::move(d)), std::move(pivots)};
}

Index rank(const Matrix& m) {
    auto d = m.data();
    return reduce_in_place(m.field(), d, m.rows(), m.cols(), m.cols()).size();
}

Matrix transpose(const Matrix& m) {
    std::vector<Elem> d(m.rows() * m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) d[j * m.rows() + i] = m(i, j);
    return Matrix(m.field_ptr(), m.cols(), m.rows(), std::move(d));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, dims(a) + " times " + dims(b));
    const auto& F = a.field();
    std::vector<Elem> d(a.rows() * b.cols(), 0);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index k = 0; k < a.cols(); ++k) {
            const Elem x = a(i, k);
            if (x == 0) continue;
            for (Index j = 0; j < b.cols(); ++j) {
                const Elem y = b(k, j);
                if (y != 0) d[i * b.cols() + j] = F.add(d[i * b.cols() + j], F.mul(x, y));
            }
        }
    }
    return Matrix(a.field_ptr(), a.rows(), b.cols(), std::move(d));
}

std::vector<Elem> mul_vec_left(std::span<const Elem> x, const Matrix& m) {
    if (x.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "vector length vs " + dims(m));
    const auto& F = m.field();
    std::vector<Elem> out(m.cols(), 0);
    for (Index i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (Index j = 0; j < m.cols(); ++j) out[j] = F.add(out[j], F.mul(x[i], m(i, j)));
    }
    return out;
}

std::vector<Elem> mul_vec_right(const Matrix& m, std::span<const Elem> x) {
    if (x.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, dims(m) + " vs vector length");
    const auto& F = m.field();
    std::vector<Elem> out(m.rows(), 0);
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out[i] = F.add(out[i], F.mul(m(i, j), x[j]));
    return out;
}

SolveResult solve(const Matrix& m, std::span<const Elem> b) {
    if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length vs " + dims(m));
    const Index cols = m.cols() + 1;
    std::vector<Elem> aug(m.rows() * cols);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) aug[i * cols + j] = m(i, j);
        m.field().check(b[i]);
        aug[i * cols + m.cols()] = b[i];
    }
    const IndexSet pivots = reduce_in_place(m.field(), aug, m.rows(), cols, m.cols());
    SolveResult res{SolveStatus::Unique, {}, pivots.size()};
    for (Index i = pivots.size(); i < m.rows(); ++i) {
        if (aug[i * cols + m.cols()] != 0) {
            res.status = SolveStatus::Inconsistent;
            return res;
        }
    }
    if (pivots.size() < m.cols()) {
        res.status = SolveStatus::NotUnique;
        return res;
    }
    res.x.resize(m.cols());
    for (Index i = 0; i < pivots.size(); ++i) res.x[pivots[i]] = aug[i * cols + m.cols()];
    return res;
}

std::optional<std::vector<Elem>> solve_unique(const Matrix& m, std::span<const Elem> b) {
    auto res = solve(m, b);
    if (res.status != SolveStatus::Unique) return std::nullopt;
    return std::move(res.x);
}

Matrix restrict_columns(const Matrix& m, std::span<const Index> cols) {
    std::vector<Elem> d(m.rows() * cols.size());
    for (Index j = 0; j < cols.size(); ++j) {
        if (cols[j] >= m.cols()) {
            throw Error(ErrorCode::IndexOutOfRange, "column " + std::to_string(cols[j]) + " outside " + dims(m));
        }
    }
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < cols.size(); ++j) d[i * cols.size() + j] = m(i, cols[j]);
    return Matrix(m.field_ptr(), m.rows(), cols.size(), std::move(d));
}

Matrix restrict_rows(const Matrix& m, std::span<const Index> rows) {
    std::vector<Elem> d;
    d.reserve(rows.size() * m.cols());
    for (Index r : rows) {
        if (r >= m.rows()) throw Error(ErrorCode::IndexOutOfRange, "row " + std::to_string(r) + " outside " + dims(m));
        auto row = m.row(r);
        d.insert(d.end(), row.begin(), row.end());
    }
    return Matrix(m.field_ptr(), rows.size(), m.cols(), std::move(d));
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "cannot invert " + dims(m));
    const Index n = m.rows();
    const Index cols = 2 * n;
    std::vector<Elem> aug(n * cols, 0);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) aug[i * cols + j] = m(i, j);
        aug[i * cols + n + i] = 1;
    }
    if (reduce_in_place(m.field(), aug, n, cols, n).size() < n) {
        throw Error(ErrorCode::Singular, dims(m) + " matrix is singular");
    }
    std::vector<Elem> d(n * n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) d[i * n + j] = aug[i * cols + n + j];
    return Matrix(m.field_ptr(), n, n, std::move(d));
}

Matrix right_kernel(const Matrix& m) {
    const auto [reduced, pivots] = rref(m);
    const auto& F = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (Index p : pivots) is_pivot[p] = true;
    IndexSet free_cols;
    for (Index c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    std::vector<Elem> d(m.cols() * free_cols.size(), 0);
    for (Index k = 0; k < free_cols.size(); ++k) {
        const Index f = free_cols[k];
        d[f * free_cols.size() + k] = 1;
        for (Index i = 0; i < pivots.size(); ++i) {
            d[pivots[i] * free_cols.size() + k] = F.neg(reduced(i, f));
        }
    }
    return Matrix(m.field_ptr(), m.cols(), free_cols.size(), std::move(d));
}

Matrix block_diag(std::span<const Matrix> blocks) {
    if (blocks.empty()) throw Error(ErrorCode::DimensionMismatch, "block_diag of no blocks");
    Index rows = 0;
    Index cols = 0;
    for (const auto& b : blocks) {
        require_same_field(blocks.front(), b);
        rows += b.rows();
        cols += b.cols();
    }
    std::vector<Elem> d(rows * cols, 0);
    Index r0 = 0;
    Index c0 = 0;
    for (const auto& b : blocks) {
        for (Index i = 0; i < b.rows(); ++i)
            for (Index j = 0; j < b.cols(); ++j) d[(r0 + i) * cols + c0 + j] = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return Matrix(blocks.front().field_ptr(), rows, cols, std::move(d));
}

Matrix vstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "vstack of nothing");
    std::vector<Elem> d;
    Index rows = 0;
    for (const auto& p : parts) {
        require_same_field(parts.front(), p);
        if (p.cols() != parts.front().cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
        d.insert(d.end(), p.data().begin(), p.data().end());
        rows += p.rows();
    }
    return Matrix(parts.front().field_ptr(), rows, parts.front().cols(), std::move(d));
}

Matrix hstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "hstack of nothing");
    const Index rows = parts.front().rows();
    Index cols = 0;
    for (const auto& p : parts) {
        require_same_field(parts.front(), p);
        if (p.rows() != rows) throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
        cols += p.cols();
    }
    std::vector<Elem> d;
    d.reserve(rows * cols);
    for (Index i = 0; i < rows; ++i)
        for (const auto& p : parts) {
            auto row = p.row(i);
            d.insert(d.end(), row.begin(), row.end());
        }
    return Matrix(parts.front().field_ptr(), rows, cols, std::move(d));
}

Matrix systematic_form(const Matrix& m, std::span<const Index> pivot_cols) {
    if (pivot_cols.size() != m.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "need " + std::to_string(m.rows()) + " pivot columns");
    }
    const Matrix sub = restrict_columns(m, pivot_cols);
    try {
        return multiply(invert(sub), m);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular) throw;
        throw Error(ErrorCode::NotInvertibleOnPivots, "pivot submatrix is singular");
    }
}

bool same_row_space(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return false;
    const Index ra = rank(a);
    if (ra != rank(b)) return false;
    const Matrix parts[] = {a, b};
    return rank(vstack(parts)) == ra;
}

bool is_zero(const Matrix& m) {
    for (Elem v : m.data())
        if (v != 0) return false;
    return true;
}

}  // namespace mrlrc
