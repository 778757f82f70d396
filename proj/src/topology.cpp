#include "mrlrc/topology.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mrlrc/error.hpp"
#include "mrlrc/localmds.hpp"

namespace mrlrc {

namespace {

std::string num(Index v) { return std::to_string(v); }

Index count_in(const IndexSet& erased, Index lo, Index hi) {
    const auto a = std::lower_bound(erased.begin(), erased.end(), lo);
    const auto b = std::lower_bound(erased.begin(), erased.end(), hi);
    return static_cast<Index>(b - a);
}

struct GroupCounts {
    Index core = 0;
    std::vector<Index> tails;
};

GroupCounts group_counts(const Topology& topo, Index i, const IndexSet& erased) {
    const Index base = i * topo.group_size();
    GroupCounts c;
    c.core = count_in(erased, base, base + topo.t);
    for (Index j = 0; j < topo.N; ++j) {
        const Index lo = base + topo.t + j * topo.tail_size();
        c.tails.push_back(count_in(erased, lo, lo + topo.tail_size()));
    }
    return c;
}

Index excess(Index count, Index budget) { return count > budget ? count - budget : 0; }

}  // namespace

IndexSet Topology::group(Index i) const {
    IndexSet s(group_size());
    for (Index k = 0; k < s.size(); ++k) s[k] = i * group_size() + k;
    return s;
}

IndexSet Topology::core(Index i) const {
    IndexSet s(t);
    for (Index k = 0; k < t; ++k) s[k] = i * group_size() + k;
    return s;
}

IndexSet Topology::tail(Index i, Index j) const {
    IndexSet s(tail_size());
    const Index lo = i * group_size() + t + j * tail_size();
    for (Index k = 0; k < s.size(); ++k) s[k] = lo + k;
    return s;
}

IndexSet Topology::repair_set(Index i, Index j) const {
    IndexSet s = core(i);
    const IndexSet tl = tail(i, j);
    s.insert(s.end(), tl.begin(), tl.end());
    return s;
}

std::vector<IndexSet> Topology::repair_sets() const {
    std::vector<IndexSet> out;
    for (Index i = 0; i < g; ++i)
        for (Index j = 0; j < N; ++j) out.push_back(repair_set(i, j));
    return out;
}

IndexSet Topology::all_cores() const {
    IndexSet s;
    for (Index i = 0; i < g; ++i) {
        const IndexSet c = core(i);
        s.insert(s.end(), c.begin(), c.end());
    }
    return s;
}

Topology make_topology(Index r, Index delta, Index t, Index g, Index N, TopologyMode mode) {
    if (r < 1) throw Error(ErrorCode::BadParams, "r >= 1 violated");
    if (delta < 1) throw Error(ErrorCode::BadParams, "delta >= 1 violated");
    if (t < 1) throw Error(ErrorCode::BadParams, "t >= 1 violated");
    if (g < 1) throw Error(ErrorCode::BadParams, "g >= 1 violated");
    if (N < 1) throw Error(ErrorCode::BadParams, "N >= 1 violated");
    if (t > r) throw Error(ErrorCode::BadParams, "t <= r violated (t = " + num(t) + ", r = " + num(r) + ")");
    if (mode == TopologyMode::Availability && t > delta - 1) {
        throw Error(ErrorCode::BadParams,
                    "t <= delta - 1 violated for availability (t = " + num(t) + ", delta = " + num(delta) + ")");
    }
    Topology topo{r, delta, t, g, N, mode, 0};
    topo.n = g * topo.group_size();
    return topo;
}

Index heavy_parity_count(const Topology& topo, Index k) {
    if (k > topo.info_capacity()) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "k = " + num(k) + " exceeds g(t + N(r - t)) = " + num(topo.info_capacity()));
    }
    return topo.info_capacity() - k;
}

PatternClass classify_pattern(const Topology& topo, const IndexSet& erased) {
    IndexSet e = erased;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (!e.empty() && e.back() >= topo.n) {
        throw Error(ErrorCode::IndexOutOfRange, "coordinate " + num(e.back() + 1) + " outside [1, " + num(topo.n) + "]");
    }
    const Index b = topo.delta - 1;
    PatternClass res{PatternKind::Maximal, std::vector<Index>(topo.g, 0)};
    for (Index i = 0; i < topo.g; ++i) {
        const GroupCounts c = group_counts(topo, i, e);
        bool local = false;
        bool tight = false;
        for (Index j = 0; j < topo.N && !tight; ++j) {
            bool ok = c.core + c.tails[j] <= b;
            bool eq = c.core + c.tails[j] == b;
            for (Index l = 0; l < topo.N; ++l) {
                if (l == j) continue;
                ok = ok && c.tails[l] <= b;
                eq = eq && c.tails[l] == b;
            }
            if (ok && !local) {
                local = true;
                res.witnesses[i] = j;
            }
            if (ok && eq) {
                tight = true;
                res.witnesses[i] = j;
            }
        }
        if (!local) return {PatternKind::NotLocal, {}};
        if (!tight) res.kind = PatternKind::LocallyCorrectable;
    }
    return res;
}

Index group_excess(const Topology& topo, Index group, const IndexSet& erased) {
    IndexSet e = erased;
    std::sort(e.begin(), e.end());
    const GroupCounts c = group_counts(topo, group, e);
    const Index b = topo.delta - 1;
    Index tails_total = 0;
    for (Index j = 0; j < topo.N; ++j) tails_total += excess(c.tails[j], b);
    Index best = SIZE_MAX;
    for (Index j = 0; j < topo.N; ++j) {
        const Index cost = excess(c.core + c.tails[j], b) + tails_total - excess(c.tails[j], b);
        best = std::min(best, cost);
    }
    return best;
}

bool is_mr_correctable_pattern(const Topology& topo, Index h, const IndexSet& erased) {
    for (Index v : erased) {
        if (v >= topo.n) throw Error(ErrorCode::IndexOutOfRange, "coordinate outside the code length");
    }
    Index removals = 0;
    for (Index i = 0; i < topo.g && removals <= h; ++i) removals += group_excess(topo, i, erased);
    return removals <= h;
}

std::vector<IndexSet> group_maximal_patterns(const Topology& topo) {
    const Index b = topo.delta - 1;
    std::set<IndexSet> seen;
    for (Index j = 0; j < topo.N; ++j) {
        // Choice lists: one (delta-1)-subset of R_{1,j}, then one of every other tail.
        std::vector<std::vector<IndexSet>> choices;
        std::vector<IndexSet> first;
        for_each_subset(topo.repair_set_size(), b, [&](const IndexSet& s) {
            IndexSet mapped;
            for (Index x : s) mapped.push_back(x < topo.t ? x : topo.t + j * topo.tail_size() + (x - topo.t));
            first.push_back(mapped);
            return true;
        });
        choices.push_back(first);
        for (Index l = 0; l < topo.N; ++l) {
            if (l == j) continue;
            std::vector<IndexSet> opts;
            for_each_subset(topo.tail_size(), b, [&](const IndexSet& s) {
                IndexSet mapped;
                for (Index x : s) mapped.push_back(topo.t + l * topo.tail_size() + x);
                opts.push_back(mapped);
                return true;
            });
            choices.push_back(opts);
        }
        std::vector<Index> idx(choices.size(), 0);
        while (true) {
            IndexSet pat;
            for (Index c = 0; c < choices.size(); ++c) {
                const auto& part = choices[c][idx[c]];
                pat.insert(pat.end(), part.begin(), part.end());
            }
            std::sort(pat.begin(), pat.end());
            seen.insert(pat);
            Index pos = choices.size();
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < choices[pos].size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    return {seen.begin(), seen.end()};
}

std::uint64_t count_maximal_patterns(const Topology& topo) {
    const std::uint64_t per = group_maximal_patterns(topo).size();
    std::uint64_t total = 1;
    for (Index i = 0; i < topo.g; ++i) {
        if (per != 0 && total > UINT64_MAX / per) return UINT64_MAX;
        total *= per;
    }
    return total;
}

bool for_each_maximal_pattern(const Topology& topo, const std::function<bool(const IndexSet&)>& f, std::uint64_t cap) {
    const auto per = group_maximal_patterns(topo);
    const std::uint64_t total = count_maximal_patterns(topo);
    if (total > cap) {
        throw Error(ErrorCode::EnumerationCapExceeded,
                    std::to_string(total) + " maximal patterns exceed the cap " + std::to_string(cap));
    }
    std::vector<Index> idx(topo.g, 0);
    const Index S = topo.group_size();
    IndexSet pat;
    while (true) {
        pat.clear();
        for (Index i = 0; i < topo.g; ++i)
            for (Index x : per[idx[i]]) pat.push_back(i * S + x);
        if (!f(pat)) return false;
        Index pos = topo.g;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < per.size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) return true;
    }
}

std::vector<IndexSet> enumerate_maximal_patterns(const Topology& topo, std::uint64_t cap) {
    std::vector<IndexSet> out;
    for_each_maximal_pattern(topo, [&](const IndexSet& p) { return out.push_back(p), true; }, cap);
    return out;
}

IndexSet to_one_based(const IndexSet& s) {
    IndexSet out(s);
    for (auto& v : out) ++v;
    return out;
}

IndexSet from_one_based(const std::vector<std::int64_t>& s, Index n) {
    IndexSet out;
    for (auto v : s) {
        if (v < 1 || static_cast<Index>(v) > n) {
            throw Error(ErrorCode::IndexOutOfRange, "coordinate " + std::to_string(v) + " outside [1, " + num(n) + "]");
        }
        out.push_back(static_cast<Index>(v) - 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const char* to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::LocallyCorrectable: return "locally_correctable";
        case PatternKind::Maximal: return "maximal";
        case PatternKind::NotLocal: return "not_local";
    }
    return "?";
}

const char* to_string(TopologyMode mode) { return mode == TopologyMode::Plain ? "plain" : "availability"; }

}  // namespace mrlrc
