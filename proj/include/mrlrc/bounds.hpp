#pragma once

// Closed-form bounds: the l(P, h) sandwich and the field-size lower bounds for h <= g.

#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrlrc/topology.hpp"

namespace mrlrc {

using BigRational = boost::multiprecision::cpp_rational;

/// (gN(delta-1) + h, g(N(delta-1) + t) + h).
std::pair<Index, Index> ell_bounds(const Topology& topo, Index h);

struct BoundInputs {
    Index r = 0;
    Index delta = 0;
    Index t = 0;
    Index g = 0;
    Index N = 0;
    Index h = 0;

    Index a() const noexcept { return N * (delta - 1); }
    static BoundInputs from(const Topology& topo, Index h) { return {topo.r, topo.delta, topo.t, topo.g, topo.N, h}; }
};

enum class Regime { A, B, None };

const char* to_string(Regime regime);

/// Regime A: a + 2 <= h <= g. Regime B: 2 <= h <= min{a + 1, g}. Otherwise None.
Regime select_regime(const BoundInputs& b);

struct LowerBound {
    Regime regime = Regime::None;
    std::optional<BigRational> value;
    /// floor(value) for reporting.
    std::optional<boost::multiprecision::cpp_int> floor;
    /// value < 2: the bound says nothing about the field.
    bool vacuous = false;
    std::string formula;
};

/// Regime A: t (g/(h-1) - 1) C(r+delta-1-t, delta-1)^N - 4.
/// Regime B: t (g/(h-1) - 1) C(r+L-t, L)^N - 4 with L = floor((h-2)/N).
LowerBound lower_bound_field(const BoundInputs& b);

boost::multiprecision::cpp_int binomial(Index n, Index k);

}  // namespace mrlrc
