#include <gtest/gtest.h>

#include <random>

#include "mrlrc/error.hpp"
#include "mrlrc/matrix.hpp"

using namespace mrlrc;

namespace {

ff::FieldPtr gf(std::uint64_t p, int e = 1) { return ff::Field::create(p, e); }

Matrix random_matrix(const ff::FieldPtr& F, Index r, Index c, std::mt19937_64& rng) {
    std::uniform_int_distribution<Elem> dist(0, F->order() - 1);
    std::vector<Elem> d(r * c);
    for (auto& v : d) v = dist(rng);
    return Matrix(F, r, c, std::move(d));
}

template <typename E>
void expect_code(ErrorCode code, E&& f) {
    try {
        f();
        FAIL() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code);
    }
}

}  // namespace

TEST(Rank, Examples) {
    auto F = gf(3);
    EXPECT_EQ(rank(Matrix::identity(F, 3)), 3U);
    EXPECT_EQ(rank(Matrix(F, 2, 4)), 0U);
    EXPECT_EQ(rank(Matrix::from_rows(F, {{1, 2}, {2, 1}})), 1U);
}

TEST(Rank, TransposeInvariant) {
    std::mt19937_64 rng(11);
    for (auto F : {gf(3), gf(2, 2), gf(3, 2)}) {
        for (int i = 0; i < 1000; ++i) {
            const Index r = 1 + rng() % 8, c = 1 + rng() % 8;
            const Matrix m = random_matrix(F, r, c, rng);
            ASSERT_EQ(rank(m), rank(transpose(m)));
            const Matrix k = right_kernel(m);
            ASSERT_EQ(k.cols(), c - rank(m));
            ASSERT_TRUE(is_zero(multiply(m, k)));
            IndexSet s;
            for (Index j = 0; j < c; j += 2) s.push_back(j);
            ASSERT_LE(rank(restrict_columns(m, s)), rank(m));
        }
    }
}

TEST(Solve, Examples) {
    auto F = gf(3);
    const std::vector<Elem> b{2, 1};
    EXPECT_EQ(*solve_unique(Matrix::identity(F, 2), b), b);
    EXPECT_FALSE(solve_unique(Matrix(F, 2, 1), std::vector<Elem>{0, 0}).has_value());
    EXPECT_EQ(*solve_unique(Matrix::from_rows(F, {{1}, {2}}), b), std::vector<Elem>{2});
    EXPECT_EQ(solve(Matrix::from_rows(F, {{1}, {1}}), b).status, SolveStatus::Inconsistent);
    expect_code(ErrorCode::DimensionMismatch, [&] { solve(Matrix::identity(F, 3), b); });
}

TEST(Restrict, Examples) {
    auto F = gf(5);
    const Matrix m = Matrix::from_rows(F, {{1, 2, 3}, {4, 0, 1}});
    const IndexSet all{0, 1, 2}, none{}, odd{0, 2};
    EXPECT_EQ(restrict_columns(m, all), m);
    EXPECT_EQ(restrict_columns(m, none).cols(), 0U);
    EXPECT_EQ(restrict_columns(m, none).rows(), 2U);
    EXPECT_EQ(restrict_columns(m, odd), Matrix::from_rows(F, {{1, 3}, {4, 1}}));
    const IndexSet bad{3};
    expect_code(ErrorCode::IndexOutOfRange, [&] { restrict_columns(m, bad); });
}

TEST(Invert, Examples) {
    auto F3 = gf(3);
    auto F2 = gf(2);
    EXPECT_EQ(invert(Matrix::identity(F3, 3)), Matrix::identity(F3, 3));
    EXPECT_EQ(invert(Matrix::from_rows(F3, {{2}})), Matrix::from_rows(F3, {{2}}));
    const Matrix u = Matrix::from_rows(F2, {{1, 1}, {0, 1}});
    EXPECT_EQ(invert(u), u);
    expect_code(ErrorCode::Singular, [&] { invert(Matrix::from_rows(F3, {{1, 2}, {2, 1}})); });
}

TEST(Invert, DoubleInverseIsIdentity) {
    std::mt19937_64 rng(5);
    auto F = gf(3, 2);
    int inverted = 0;
    for (int i = 0; i < 200; ++i) {
        const Matrix m = random_matrix(F, 4, 4, rng);
        if (rank(m) < 4) continue;
        ++inverted;
        EXPECT_EQ(invert(invert(m)), m);
        EXPECT_EQ(multiply(m, invert(m)), Matrix::identity(F, 4));
    }
    EXPECT_GT(inverted, 100);
}

TEST(Kernel, Examples) {
    auto F = gf(3);
    EXPECT_EQ(right_kernel(Matrix::identity(F, 3)).cols(), 0U);
    EXPECT_EQ(right_kernel(Matrix(F, 1, 2)).cols(), 2U);
    const Matrix k = right_kernel(Matrix::from_rows(F, {{1, 2}}));
    ASSERT_EQ(k.cols(), 1U);
    EXPECT_EQ(k(0, 0), k(1, 0));
    EXPECT_NE(k(0, 0), 0U);
}

TEST(BlockDiag, Examples) {
    auto F = gf(5);
    const Matrix a = Matrix::from_rows(F, {{3}});
    const Matrix b = Matrix::from_rows(F, {{4}});
    const Matrix one[] = {a};
    EXPECT_EQ(block_diag(one), a);
    const Matrix two[] = {a, b};
    EXPECT_EQ(block_diag(two), Matrix::from_rows(F, {{3, 0}, {0, 4}}));
    const Matrix mixed[] = {Matrix(F, 2, 3), Matrix(F, 1, 1)};
    const Matrix bd = block_diag(mixed);
    EXPECT_EQ(bd.rows(), 3U);
    EXPECT_EQ(bd.cols(), 4U);
    const Matrix other[] = {a, Matrix::from_rows(gf(3), {{1}})};
    expect_code(ErrorCode::MixedFields, [&] { block_diag(other); });

    std::mt19937_64 rng(3);
    const Matrix r1 = random_matrix(F, 3, 4, rng), r2 = random_matrix(F, 2, 2, rng);
    const Matrix parts[] = {r1, r2};
    EXPECT_EQ(rank(block_diag(parts)), rank(r1) + rank(r2));
}

TEST(Systematic, Examples) {
    auto F = gf(3);
    const Matrix s = Matrix::from_rows(F, {{1, 0, 2}, {0, 1, 1}});
    const IndexSet p01{0, 1};
    EXPECT_EQ(systematic_form(s, p01), s);
    const IndexSet p0{0};
    EXPECT_EQ(systematic_form(Matrix::from_rows(F, {{2, 1}}), p0), Matrix::from_rows(F, {{1, 2}}));
    expect_code(ErrorCode::NotInvertibleOnPivots,
                [&] { systematic_form(Matrix::from_rows(F, {{0, 1}, {0, 2}}), p01); });
}

TEST(Systematic, PreservesRowSpace) {
    std::mt19937_64 rng(9);
    auto F = gf(2, 2);
    for (int i = 0; i < 100; ++i) {
        const Matrix m = random_matrix(F, 3, 6, rng);
        const IndexSet piv{1, 3, 4};
        if (rank(restrict_columns(m, piv)) < 3) continue;
        const Matrix s = systematic_form(m, piv);
        EXPECT_TRUE(same_row_space(m, s));
        EXPECT_EQ(restrict_columns(s, piv), Matrix::identity(F, 3));
    }
}

TEST(Matrix, RejectsInvalidEntries) {
    auto F = gf(3);
    expect_code(ErrorCode::InvalidInput, [&] { Matrix::from_rows(F, {{3}}); });
    expect_code(ErrorCode::DimensionMismatch, [&] { Matrix(F, 2, 2, {1, 2, 0}); });
}
