#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mrlrc/error.hpp"
#include "mrlrc/topology.hpp"

using namespace mrlrc;

namespace {

// Oracle: local correctability straight from the definition, on explicit sets.
bool locally_correctable_oracle(const Topology& topo, const IndexSet& e, bool require_tight) {
    const std::set<Index> es(e.begin(), e.end());
    auto hits = [&](const IndexSet& s) {
        Index c = 0;
        for (Index x : s) c += es.count(x);
        return c;
    };
    for (Index i = 0; i < topo.g; ++i) {
        bool found = false;
        for (Index j = 0; j < topo.N && !found; ++j) {
            bool ok = require_tight ? hits(topo.repair_set(i, j)) == topo.delta - 1
                                    : hits(topo.repair_set(i, j)) <= topo.delta - 1;
            for (Index l = 0; l < topo.N; ++l) {
                if (l == j) continue;
                const Index c = hits(topo.tail(i, l));
                ok = ok && (require_tight ? c == topo.delta - 1 : c <= topo.delta - 1);
            }
            found = ok;
        }
        if (!found) return false;
    }
    return true;
}

// Oracle: Def-level split search over every E1 of size <= h.
bool mr_split_oracle(const Topology& topo, Index h, const IndexSet& e) {
    const Index n = e.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<Index>(__builtin_popcountll(mask)) > h) continue;
        IndexSet rest;
        for (Index i = 0; i < n; ++i)
            if (!(mask >> i & 1U)) rest.push_back(e[i]);
        if (locally_correctable_oracle(topo, rest, false)) return true;
    }
    return false;
}

IndexSet from_mask(std::uint64_t mask, Index n) {
    IndexSet s;
    for (Index i = 0; i < n; ++i)
        if (mask >> i & 1U) s.push_back(i);
    return s;
}

}  // namespace

TEST(Layout, EightGroupExample) {
    const Topology topo = make_topology(3, 3, 2, 8, 2);
    EXPECT_EQ(topo.n, 64U);
    EXPECT_EQ(topo.group_size(), 8U);
    EXPECT_EQ(topo.g * topo.t, 16U);
    EXPECT_EQ(topo.all_cores().size(), 16U);
    EXPECT_EQ(heavy_parity_count(topo, 16), 16U);
    EXPECT_EQ(topo.local_parity_count(), 32U);
    EXPECT_EQ(16U * topo.N * (topo.delta - 1), 64U);
}

TEST(Layout, MinimalTopology) {
    const Topology topo = make_topology(2, 2, 1, 1, 1);
    EXPECT_EQ(topo.n, 3U);
    EXPECT_EQ(topo.repair_set(0, 0), (IndexSet{0, 1, 2}));
    EXPECT_EQ(to_one_based(topo.repair_set(0, 0)), (IndexSet{1, 2, 3}));
}

TEST(Layout, RejectsBadParams) {
    try {
        make_topology(2, 3, 3, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadParams);
        EXPECT_NE(std::string(e.what()).find("t <= r"), std::string::npos);
    }
    EXPECT_THROW(make_topology(3, 2, 2, 2, 2), Error);
    EXPECT_NO_THROW(make_topology(3, 2, 2, 2, 2, TopologyMode::Plain));
}

TEST(Layout, PartitionInvariants) {
    for (Index r = 1; r <= 4; ++r)
        for (Index d = 1; d <= 3; ++d)
            for (Index t = 1; t <= r; ++t)
                for (Index N = 1; N <= 3; ++N) {
                    const Topology topo = make_topology(r, d, t, 3, N, TopologyMode::Plain);
                    EXPECT_EQ(topo.n, 3 * (t + N * (r + d - 1 - t)));
                    std::vector<int> cover(topo.n, 0);
                    for (Index i = 0; i < topo.g; ++i) {
                        for (Index x : topo.group(i)) ++cover[x];
                        const IndexSet first = topo.repair_set(i, 0);
                        std::set<Index> inter(first.begin(), first.end());
                        for (Index j = 1; j < N; ++j) {
                            std::set<Index> next;
                            const IndexSet rs = topo.repair_set(i, j);
                            for (Index x : rs)
                                if (inter.count(x)) next.insert(x);
                            inter = next;
                        }
                        if (N > 1) EXPECT_EQ(IndexSet(inter.begin(), inter.end()), topo.core(i));
                        for (Index j = 0; j < N; ++j) EXPECT_EQ(topo.repair_set(i, j).size(), r + d - 1);
                    }
                    for (int c : cover) EXPECT_EQ(c, 1);
                }
}

TEST(Layout, ClassicalReduction) {
    const Topology topo = make_topology(4, 3, 1, 3, 1, TopologyMode::Plain);
    EXPECT_EQ(topo.group_size(), 4U + 3U - 1U);
    EXPECT_EQ(topo.repair_set(1, 0), topo.group(1));
}

TEST(HeavyParities, Examples) {
    EXPECT_EQ(heavy_parity_count(make_topology(2, 2, 1, 2, 2), 5), 1U);
    const Topology topo = make_topology(2, 2, 1, 2, 2);
    EXPECT_EQ(heavy_parity_count(topo, topo.info_capacity()), 0U);
    try {
        heavy_parity_count(topo, 7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionTooLarge);
    }
}

TEST(Classify, Examples) {
    const Topology topo = make_topology(2, 2, 1, 2, 2);
    EXPECT_EQ(classify_pattern(topo, {}).kind, PatternKind::LocallyCorrectable);
    EXPECT_EQ(classify_pattern(topo, topo.group(0)).kind, PatternKind::NotLocal);
    EXPECT_THROW(classify_pattern(topo, {10}), Error);
}

TEST(Classify, EightByEightPictureIsMaximal) {
    // (column, row) cells of an 8x8 picture: column = group, rows 1-3 are the first
    // tail, rows 4-5 the core, rows 6-8 the second tail.
    const std::vector<std::pair<Index, Index>> cells{
        {1, 1}, {1, 3}, {1, 4}, {1, 7}, {2, 2}, {2, 5}, {2, 7}, {2, 8}, {3, 3}, {3, 4}, {3, 6},
        {3, 8}, {4, 1}, {4, 2}, {4, 6}, {4, 7}, {5, 4}, {5, 5}, {5, 6}, {5, 7}, {6, 3}, {6, 4},
        {6, 1}, {6, 7}, {7, 1}, {7, 2}, {7, 7}, {7, 8}, {8, 2}, {8, 3}, {8, 4}, {8, 5}};
    const Topology topo = make_topology(3, 3, 2, 8, 2);
    IndexSet e;
    for (auto [col, row] : cells) {
        const Index offset = row >= 4 && row <= 5 ? row - 4 : row <= 3 ? 2 + (row - 1) : 5 + (row - 6);
        e.push_back((col - 1) * topo.group_size() + offset);
    }
    std::sort(e.begin(), e.end());
    ASSERT_EQ(e.size(), 32U);
    const auto cls = classify_pattern(topo, e);
    EXPECT_EQ(cls.kind, PatternKind::Maximal);
    EXPECT_TRUE(locally_correctable_oracle(topo, e, true));
    EXPECT_EQ(topo.n - e.size(), 32U);
}

TEST(Classify, AgreesWithSetOracleOnAllSubsets) {
    for (auto [r, d, t, N] : std::vector<std::tuple<Index, Index, Index, Index>>{{2, 2, 1, 2}, {2, 3, 1, 2}, {3, 2, 1, 2}, {2, 3, 2, 1}, {3, 3, 2, 2}}) {
        const Topology topo = make_topology(r, d, t, 1, N);
        ASSERT_LE(topo.n, 16U);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << topo.n); ++mask) {
            const IndexSet e = from_mask(mask, topo.n);
            const auto cls = classify_pattern(topo, e);
            const bool local = locally_correctable_oracle(topo, e, false);
            const bool tight = locally_correctable_oracle(topo, e, true);
            ASSERT_EQ(cls.kind != PatternKind::NotLocal, local) << mask;
            ASSERT_EQ(cls.kind == PatternKind::Maximal, tight) << mask;
            if (tight) ASSERT_EQ(e.size(), topo.local_parity_count());
        }
    }
}

TEST(Enumerate, PerGroupCountsByBruteForce) {
    const Topology one = make_topology(2, 2, 1, 1, 2);
    Index brute = 0;
    for (std::uint64_t mask = 0; mask < 32; ++mask)
        brute += classify_pattern(one, from_mask(mask, 5)).kind == PatternKind::Maximal;
    EXPECT_EQ(brute, 8U);
    EXPECT_EQ(group_maximal_patterns(one).size(), 8U);

    const Topology two = make_topology(2, 2, 1, 2, 2);
    const auto all = enumerate_maximal_patterns(two);
    EXPECT_EQ(all.size(), 64U);
    Index brute2 = 0;
    for (std::uint64_t mask = 0; mask < 1024; ++mask)
        brute2 += classify_pattern(two, from_mask(mask, 10)).kind == PatternKind::Maximal;
    EXPECT_EQ(brute2, 64U);
    std::set<IndexSet> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), 64U);
    for (const auto& p : all) {
        EXPECT_EQ(classify_pattern(two, p).kind, PatternKind::Maximal);
        EXPECT_EQ(p.size(), two.local_parity_count());
    }
}

TEST(Enumerate, ClassicalCount) {
    for (Index r = 1; r <= 5; ++r) {
        const Topology topo = make_topology(r, 2, 1, 1, 1);
        EXPECT_EQ(group_maximal_patterns(topo).size(), r + 1);
    }
}

TEST(Enumerate, CapIsEnforced) {
    const Topology topo = make_topology(3, 3, 2, 8, 2);
    try {
        enumerate_maximal_patterns(topo, 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EnumerationCapExceeded);
    }
}

TEST(MrCorrectable, MatchesSplitSearch) {
    std::mt19937_64 rng(3);
    for (auto [r, d, t, g, N] : std::vector<std::tuple<Index, Index, Index, Index, Index>>{
             {2, 2, 1, 2, 2}, {2, 3, 1, 2, 1}, {3, 2, 2, 2, 2}, {2, 2, 1, 2, 1}, {3, 3, 2, 1, 2}}) {
        const Topology topo = make_topology(r, d, t, g, N, TopologyMode::Plain);
        for (Index h = 0; h <= 3; ++h) {
            for (int trial = 0; trial < 400; ++trial) {
                const Index size = rng() % (topo.local_parity_count() + h + 2);
                IndexSet e;
                for (Index x = 0; x < topo.n; ++x)
                    if (rng() % topo.n < size) e.push_back(x);
                if (e.size() > 14) continue;
                ASSERT_EQ(is_mr_correctable_pattern(topo, h, e), mr_split_oracle(topo, h, e));
            }
        }
    }
}

TEST(MrCorrectable, Examples) {
    const Topology topo = make_topology(2, 2, 1, 2, 2);
    EXPECT_TRUE(is_mr_correctable_pattern(topo, 0, {}));
    for (const auto& p : enumerate_maximal_patterns(topo)) {
        EXPECT_TRUE(is_mr_correctable_pattern(topo, 0, p));
        IndexSet extra = p;
        for (Index x = 0; x < topo.n; ++x) {
            if (std::find(p.begin(), p.end(), x) == p.end()) {
                extra.push_back(x);
                break;
            }
        }
        std::sort(extra.begin(), extra.end());
        EXPECT_TRUE(is_mr_correctable_pattern(topo, 1, extra));
        EXPECT_FALSE(is_mr_correctable_pattern(topo, 0, extra));
    }
    // Saturated repair set plus two more erasures in the same group with h = 1.
    const IndexSet bad{0, 1, 2, 3, 4};
    EXPECT_FALSE(is_mr_correctable_pattern(topo, 1, bad));
    EXPECT_FALSE(mr_split_oracle(topo, 1, bad));
}

TEST(OneBased, RoundTrip) {
    EXPECT_EQ(from_one_based({3, 1, 3}, 5), (IndexSet{0, 2}));
    EXPECT_THROW(from_one_based({0}, 5), Error);
    EXPECT_THROW(from_one_based({6}, 5), Error);
}
