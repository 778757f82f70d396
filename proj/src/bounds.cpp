#include "mrlrc/bounds.hpp"

#include "mrlrc/error.hpp"

namespace mrlrc {

using boost::multiprecision::cpp_int;

std::pair<Index, Index> ell_bounds(const Topology& topo, Index h) {
    const Index d1 = topo.delta - 1;
    return {topo.g * topo.N * d1 + h, topo.g * (topo.N * d1 + topo.t) + h};
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::A: return "A";
        case Regime::B: return "B";
        case Regime::None: return "none";
    }
    return "none";
}

Regime select_regime(const BoundInputs& b) {
    if (b.h < 2 || b.h > b.g) return Regime::None;
    if (b.h >= b.a() + 2) return Regime::A;
    return Regime::B;
}

cpp_int binomial(Index n, Index k) {
    if (k > n) return 0;
    cpp_int out = 1;
    for (Index i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
    return out;
}

LowerBound lower_bound_field(const BoundInputs& b) {
    if (b.delta < 1 || b.t > b.r || b.N < 1 || b.g < 1)
        throw Error(ErrorCode::BadParams, "bound inputs need delta >= 1, t <= r, N >= 1, g >= 1");
    LowerBound out;
    out.regime = select_regime(b);
    if (out.regime == Regime::None) {
        out.formula = "no bound: needs 2 <= h <= g";
        return out;
    }
    Index top = 0, bottom = 0;
    if (out.regime == Regime::A) {
        top = b.r + b.delta - 1 - b.t;
        bottom = b.delta - 1;
        out.formula = "t(g/(h-1) - 1) * C(r+delta-1-t, delta-1)^N - 4";
    } else {
        const Index L = (b.h - 2) / b.N;
        top = b.r + L - b.t;
        bottom = L;
        out.formula = "t(g/(h-1) - 1) * C(r+L-t, L)^N - 4, L = floor((h-2)/N)";
    }
    cpp_int power = 1;
    const cpp_int c = binomial(top, bottom);
    for (Index i = 0; i < b.N; ++i) power *= c;
    const BigRational ratio(cpp_int(b.g), cpp_int(b.h - 1));
    const BigRational value = BigRational(cpp_int(b.t)) * (ratio - 1) * BigRational(power) - 4;
    out.value = value;
    const cpp_int num = numerator(value), den = denominator(value);
    cpp_int fl = num / den;
    if (num < 0 && fl * den != num) fl -= 1;
    out.floor = fl;
    out.vacuous = value < 2;
    return out;
}

}  // namespace mrlrc
