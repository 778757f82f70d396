#pragma once

// Coordinate layout of an LRC with locality r, local distance delta, core size t,
// g groups and availability N, plus the erasure-pattern taxonomy built on it.
//
// Coordinates are 0-based here. Group i occupies
//   [i*S, (i+1)*S),   S = t + N(r + delta - 1 - t),
// with the core T_i in its first t positions and the j-th tail R_{i,j} \ T_i in the
// next block of r + delta - 1 - t positions. External interfaces add 1.

#include <cstdint>
#include <functional>
#include <vector>

#include "mrlrc/matrix.hpp"

namespace mrlrc {

enum class TopologyMode { Plain, Availability };

struct Topology {
    Index r = 0;
    Index delta = 0;
    Index t = 0;
    Index g = 0;
    Index N = 0;
    TopologyMode mode = TopologyMode::Availability;
    Index n = 0;

    Index tail_size() const noexcept { return r + delta - 1 - t; }
    Index group_size() const noexcept { return t + N * tail_size(); }
    Index repair_set_size() const noexcept { return r + delta - 1; }
    /// g(t + N(r - t)): the dimension when no heavy parities are used.
    Index info_capacity() const noexcept { return g * (t + N * (r - t)); }
    /// gN(delta - 1): local parities, and the size of every maximal pattern.
    Index local_parity_count() const noexcept { return g * N * (delta - 1); }

    IndexSet group(Index i) const;
    IndexSet core(Index i) const;
    IndexSet tail(Index i, Index j) const;
    IndexSet repair_set(Index i, Index j) const;
    /// Every repair set, ordered by (group, j).
    std::vector<IndexSet> repair_sets() const;
    /// The union of all cores.
    IndexSet all_cores() const;
    Index group_of(Index coord) const { return coord / group_size(); }
};

/// Throws BadParams naming the violated inequality.
Topology make_topology(Index r, Index delta, Index t, Index g, Index N, TopologyMode mode = TopologyMode::Availability);

/// h = g(t + N(r - t)) - k; throws DimensionTooLarge when k exceeds the capacity.
Index heavy_parity_count(const Topology& topo, Index k);

enum class PatternKind { LocallyCorrectable, Maximal, NotLocal };

struct PatternClass {
    PatternKind kind = PatternKind::NotLocal;
    /// Witness j_i for each group when the pattern is locally correctable or maximal.
    std::vector<Index> witnesses;
};

/// Throws IndexOutOfRange for coordinates >= n.
PatternClass classify_pattern(const Topology& topo, const IndexSet& erased);

/// Fewest erasures to drop from group i (under its best witness) to leave a locally
/// correctable remainder.
Index group_excess(const Topology& topo, Index group, const IndexSet& erased);

/// True iff erased = E1 u E2 with E2 locally correctable and |E1| <= h.
/// Groups are independent, so this is the sum of the per-group excesses compared to h.
bool is_mr_correctable_pattern(const Topology& topo, Index h, const IndexSet& erased);

inline constexpr std::uint64_t kPatternCap = 1'000'000;

/// Distinct maximal patterns inside one group, as offsets into the group, sorted.
std::vector<IndexSet> group_maximal_patterns(const Topology& topo);

/// Product of the per-group counts.
std::uint64_t count_maximal_patterns(const Topology& topo);

/// Streams every maximal pattern once, in lexicographic order of the per-group choices.
/// Returns false if f stopped the stream. Throws EnumerationCapExceeded with the count.
bool for_each_maximal_pattern(const Topology& topo, const std::function<bool(const IndexSet&)>& f,
                              std::uint64_t cap = kPatternCap);

std::vector<IndexSet> enumerate_maximal_patterns(const Topology& topo, std::uint64_t cap = kPatternCap);

IndexSet to_one_based(const IndexSet& s);
/// Validates and sorts; throws IndexOutOfRange for 0 or values above n.
IndexSet from_one_based(const std::vector<std::int64_t>& s, Index n);

const char* to_string(PatternKind kind);
const char* to_string(TopologyMode mode);

}  // namespace mrlrc
