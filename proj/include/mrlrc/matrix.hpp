#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mrlrc/ff.hpp"

namespace mrlrc {

using ff::Elem;
using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// Dense row-major matrix over a finite field. Values are immutable: every
/// operation below returns a new matrix.
class Matrix {
public:
    Matrix(ff::FieldPtr field, Index rows, Index cols);
    Matrix(ff::FieldPtr field, Index rows, Index cols, std::vector<Elem> data);

    static Matrix identity(ff::FieldPtr field, Index n);
    static Matrix from_rows(ff::FieldPtr field, const std::vector<std::vector<Elem>>& rows);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    const ff::Field& field() const noexcept { return *field_; }
    const ff::FieldPtr& field_ptr() const noexcept { return field_; }
    const std::vector<Elem>& data() const noexcept { return data_; }

    Elem operator()(Index r, Index c) const { return data_[r * cols_ + c]; }
    Elem at(Index r, Index c) const;
    std::span<const Elem> row(Index r) const { return {data_.data() + r * cols_, cols_}; }

    Matrix with_entry(Index r, Index c, Elem value) const;

    bool operator==(const Matrix& other) const;

private:
    ff::FieldPtr field_;
    Index rows_;
    Index cols_;
    std::vector<Elem> data_;
};

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct Echelon {
    Matrix reduced;
    IndexSet pivots;
};

enum class SolveStatus { Unique, NotUnique, Inconsistent };

struct SolveResult {
    SolveStatus status;
    std::vector<Elem> x;  // set only when status == Unique
    Index rank = 0;
};

Echelon rref(const Matrix& m);
Index rank(const Matrix& m);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<Elem> mul_vec_left(std::span<const Elem> x, const Matrix& m);  // x * M
std::vector<Elem> mul_vec_right(const Matrix& m, std::span<const Elem> x); // M * x

SolveResult solve(const Matrix& m, std::span<const Elem> b);
/// The x with Mx = b when it exists and is unique.
std::optional<std::vector<Elem>> solve_unique(const Matrix& m, std::span<const Elem> b);

Matrix restrict_columns(const Matrix& m, std::span<const Index> cols);
Matrix restrict_rows(const Matrix& m, std::span<const Index> rows);
/// Throws Singular.
Matrix invert(const Matrix& m);
/// Basis of {x : Mx = 0}, one vector per column.
Matrix right_kernel(const Matrix& m);
/// Throws MixedFields when blocks disagree on the field.
Matrix block_diag(std::span<const Matrix> blocks);
Matrix vstack(std::span<const Matrix> parts);
Matrix hstack(std::span<const Matrix> parts);
/// Row-equivalent matrix whose pivot_cols submatrix is the identity; throws NotInvertibleOnPivots.
Matrix systematic_form(const Matrix& m, std::span<const Index> pivot_cols);
bool same_row_space(const Matrix& a, const Matrix& b);
bool is_zero(const Matrix& m);

/// Entrywise image of a matrix under a field map (e.g. a subfield embedding).
template <typename F>
Matrix map_entries(const Matrix& m, ff::FieldPtr target, F&& f) {
    std::vector<Elem> out(m.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(m.data()[i]);
    return Matrix(std::move(target), m.rows(), m.cols(), std::move(out));
}

}  // namespace mrlrc
