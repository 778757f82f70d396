#include <gtest/gtest.h>

#include <numeric>

#include "mrlrc/constructions.hpp"
#include "mrlrc/error.hpp"
#include "mrlrc/localmds.hpp"
#include "mrlrc/sumrank.hpp"
#include "mrlrc/verify.hpp"

using namespace mrlrc;

namespace {

struct Case {
    CodeKind kind;
    Index r, delta, t, g, N, k_or_h;
    TopologyMode mode = TopologyMode::Availability;
};

MrLrcCode build(const Case& c) {
    return construct(make_topology(c.r, c.delta, c.t, c.g, c.N, c.mode), c.kind, c.k_or_h);
}

const std::vector<Case> kCases = {
    {CodeKind::Gen, 2, 2, 1, 2, 2, 5},
    {CodeKind::Gen, 2, 2, 1, 2, 1, 3},
    {CodeKind::Gen, 2, 3, 1, 2, 1, 3},
    {CodeKind::Gen, 3, 2, 2, 2, 2, 6, TopologyMode::Plain},
    {CodeKind::Pc1, 2, 2, 1, 2, 2, 1},
    {CodeKind::Pc1, 2, 2, 1, 2, 2, 2},
    {CodeKind::Pc2, 2, 2, 1, 2, 1, 1},
};

// Oracle: the dual of the local code has every delta - 1 columns independent.
bool local_distance_at_least_delta(const MrLrcCode& code) {
    const Matrix G = code.generator();
    for (const IndexSet& R : code.topo.repair_sets()) {
        const Matrix L = transpose(right_kernel(restrict_columns(G, R)));
        bool ok = for_each_subset(R.size(), code.topo.delta - 1,
                                  [&](const IndexSet& s) { return rank(restrict_columns(L, s)) == s.size(); });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

TEST(Planner, GenOnTheEightGroupLayout) {
    const auto topo = make_topology(3, 3, 2, 8, 2);
    const FieldPlan plan = plan_field(topo, CodeKind::Gen, 0);
    EXPECT_EQ(plan.q_target, 9u);
    EXPECT_EQ(plan.q, 9u);
    EXPECT_EQ(plan.m, 4u);
    EXPECT_EQ(plan.table_bound, BigInt(6561));
}

TEST(Planner, Pc1TwoHeavyParities) {
    const auto topo = make_topology(2, 2, 1, 2, 2);
    const FieldPlan plan = plan_field(topo, CodeKind::Pc1, 2);
    EXPECT_EQ(plan.q, 3u);
    EXPECT_EQ(plan.m, 4u);
    EXPECT_EQ(plan.table_bound, BigInt(81));
    EXPECT_EQ(plan.realized, BigInt(81));
}

TEST(Planner, Pc1RejectsHAboveR) {
    const auto topo = make_topology(2, 2, 1, 2, 2);
    try {
        plan_field(topo, CodeKind::Pc1, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolated);
    }
}

TEST(Planner, Pc2SmallestCase) {
    const auto topo = make_topology(2, 2, 1, 2, 1);
    const FieldPlan plan = plan_field(topo, CodeKind::Pc2, 1);
    EXPECT_EQ(plan.q, 3u);
    EXPECT_EQ(plan.ell, 5u);
    EXPECT_EQ(plan.s, 1u);
    EXPECT_EQ(plan.m, 5u);
    EXPECT_EQ(plan.table_bound, BigInt(32));
    EXPECT_EQ(plan.realized, BigInt(243));
}

TEST(Planner, NextPrimePower) {
    EXPECT_EQ(next_prime_power(2), 2u);
    EXPECT_EQ(next_prime_power(6), 7u);
    EXPECT_EQ(next_prime_power(10), 11u);
    EXPECT_EQ(next_prime_power(15), 16u);
    EXPECT_EQ(next_prime_power(24), 25u);
}

TEST(Planner, AvailabilityKindsNeedSmallCore) {
    const auto topo = make_topology(3, 2, 2, 2, 2, TopologyMode::Plain);
    EXPECT_THROW(plan_field(topo, CodeKind::Pc1, 1), Error);
    EXPECT_THROW(plan_field(topo, CodeKind::Pc2, 1), Error);
    EXPECT_NO_THROW(plan_field(topo, CodeKind::Gen, 0));
}

TEST(Constructions, FieldsMatchThePlan) {
    EXPECT_EQ(build(kCases[0]).tower->top().order(), 27u);
    EXPECT_EQ(build(kCases[1]).tower->top().order(), 9u);
    EXPECT_EQ(build(kCases[2]).tower->top().order(), 16u);
    EXPECT_EQ(build(kCases[3]).tower->top().order(), 256u);
    EXPECT_EQ(build(kCases[6]).tower->top().order(), 243u);
}

TEST(Constructions, ParityChecksAnnihilateGenerators) {
    for (const Case& c : kCases) {
        const MrLrcCode code = build(c);
        const Matrix G = code.generator();
        EXPECT_EQ(G.rows(), code.k);
        EXPECT_EQ(rank(G), code.k);
        EXPECT_EQ(code.H.rows(), code.n() - code.k);
        EXPECT_TRUE(is_zero(multiply(G, transpose(code.H)))) << code_id(code);
        EXPECT_EQ(code.k + code.h, code.topo.info_capacity()) << code_id(code);
    }
}

TEST(Constructions, LocalDistanceAtLeastDelta) {
    for (const Case& c : kCases) EXPECT_TRUE(local_distance_at_least_delta(build(c))) << static_cast<int>(c.kind);
}

TEST(Constructions, GenFactorsThroughTheLocalBlock) {
    const MrLrcCode code = build(kCases[0]);
    const auto& T = *code.tower;
    const Matrix D = gen_block_d(code.topo, *code.A);
    const Matrix Dl = map_entries(D, T.top_ptr(), [&](Elem x) { return T.embed(x); });
    const Matrix outer = linearized_rows(T, code.a, code.beta, code.k);
    const std::vector<Matrix> blocks(code.topo.g, Dl);
    EXPECT_EQ(multiply(outer, block_diag(blocks)), *code.G);
}

TEST(Constructions, GenBlockShape) {
    const auto topo = make_topology(2, 2, 1, 2, 2);
    const auto F = ff::Field::create(3, 1);
    const Matrix A = structured_mds({F, topo.repair_set_size(), topo.r}, topo.t, {topo.r});
    const Matrix D = gen_block_d(topo, A);
    EXPECT_EQ(D.rows(), 3u);
    EXPECT_EQ(D.cols(), 5u);
    // Core column is e_1; each tail j carries B in row 0 and C in row 1 + j.
    EXPECT_EQ(D(0, 0), 1u);
    EXPECT_EQ(D(1, 0), 0u);
    EXPECT_EQ(D(2, 0), 0u);
    for (Index j = 0; j < 2; ++j)
        for (Index c = 0; c < 2; ++c) {
            EXPECT_EQ(D(0, 1 + 2 * j + c), A(0, 1 + c));
            EXPECT_EQ(D(1 + j, 1 + 2 * j + c), A(1, 1 + c));
            EXPECT_EQ(D(2 - j, 1 + 2 * j + c), 0u);
        }
}

TEST(Constructions, Pc2ExpandsOverGf3) {
    const MrLrcCode code = build(kCases[6]);
    EXPECT_EQ(code.plan.m, 5u);
    EXPECT_EQ(code.ell, 5u);
    EXPECT_EQ(code.k, 3u);
    EXPECT_EQ(code.beta.size(), code.n() / code.topo.g);
    EXPECT_EQ(code.tower->q(), 3u);
}

TEST(Constructions, ParityGeneratorRoundTrip) {
    for (const Case& c : kCases) {
        const MrLrcCode code = build(c);
        const Matrix G = code.generator();
        EXPECT_TRUE(same_row_space(G, generator_from_parity(parity_from_generator(G))));
        EXPECT_TRUE(same_row_space(code.H, parity_from_generator(generator_from_parity(code.H))));
    }
}

TEST(Constructions, DependentRowsRejected) {
    const auto F = ff::Field::create(3, 1);
    const Matrix M = Matrix::from_rows(F, {{1, 2, 0}, {2, 1, 0}});
    try {
        generator_from_parity(M);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    }
}

TEST(Constructions, SystematicInformationInTheCores) {
    const MrLrcCode code = construct_gen(make_topology(3, 2, 2, 2, 2, TopologyMode::Plain), 4);
    const MrLrcCode sys = systematic_info_placement(code);
    ASSERT_EQ(sys.info_set.size(), 4u);
    const IndexSet cores = code.topo.all_cores();
    for (Index i : sys.info_set) EXPECT_NE(std::find(cores.begin(), cores.end(), i), cores.end());
    EXPECT_EQ(restrict_columns(*sys.G, sys.info_set), Matrix::identity(code.tower->top_ptr(), 4));
    EXPECT_TRUE(same_row_space(*sys.G, *code.G));
}

TEST(Constructions, SystematicPlacementRejectsLargeK) {
    const MrLrcCode code = build(kCases[3]);
    try {
        systematic_info_placement(code);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolated);
    }
}

TEST(Constructions, ParseKind) {
    EXPECT_EQ(parse_kind("pc2"), CodeKind::Pc2);
    EXPECT_STREQ(to_string(CodeKind::Gen), "gen");
    EXPECT_THROW(parse_kind("rs"), Error);
}

TEST(Constructions, ZeroHeavyParitiesGiveProductOfLocalCodes) {
    const auto topo = make_topology(2, 2, 1, 2, 2);
    const MrLrcCode gen = construct_gen(topo, topo.info_capacity());
    EXPECT_EQ(gen.h, 0u);
    EXPECT_TRUE(verify_mr_exhaustive(gen).pass());
    const MrLrcCode pc = construct_pc1(topo, 0);
    EXPECT_EQ(pc.H.rows(), topo.local_parity_count());
    EXPECT_TRUE(verify_mr_exhaustive(pc).pass());
}

TEST(Constructions, AvailabilityTwoLocalParityCount) {
    // t = delta - 1 = 1, N = 2, k = gt: kN local parities.
    const auto topo = make_topology(2, 2, 1, 2, 2);
    const MrLrcCode code = construct_gen(topo, topo.g * topo.t);
    EXPECT_EQ(topo.local_parity_count(), code.k * topo.N);
    EXPECT_NO_THROW(systematic_info_placement(code));
}

TEST(Constructions, GeneratorAndParityKindsAgreeOnVerification) {
    const auto topo = make_topology(2, 2, 1, 2, 2);
    for (Index h : {1, 2}) {
        EXPECT_TRUE(verify_mr_exhaustive(construct_gen(topo, topo.info_capacity() - h)).pass());
        EXPECT_TRUE(verify_mr_exhaustive(construct_pc1(topo, h)).pass());
    }
}
