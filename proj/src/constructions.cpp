#include "mrlrc/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "mrlrc/error.hpp"
#include "mrlrc/localmds.hpp"
#include "mrlrc/rng.hpp"
#include "mrlrc/sumrank.hpp"

namespace mrlrc {

namespace {

std::string num(std::uint64_t v) { return std::to_string(v); }

BigInt big_pow(std::uint64_t base, Index e) {
    BigInt v = 1;
    for (Index i = 0; i < e; ++i) v *= base;
    return v;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::ConstraintViolated, what);
}

void require_availability(const Topology& topo, const char* who) {
    require(topo.t <= topo.delta - 1 && topo.t <= topo.r,
            std::string(who) + " needs t <= min{delta - 1, r} (t = " + num(topo.t) + ", delta = " + num(topo.delta) +
                ", r = " + num(topo.r) + ")");
}

// Copies an (rows x cols) GF(q) block into a dense buffer at (r0, c0).
void put(std::vector<Elem>& d, Index width, Index r0, Index c0, const Matrix& block) {
    for (Index i = 0; i < block.rows(); ++i)
        for (Index j = 0; j < block.cols(); ++j) d[(r0 + i) * width + c0 + j] = block(i, j);
}

Matrix sub(const Matrix& m, Index r0, Index r1, Index c0, Index c1) {
    IndexSet rows(r1 - r0), cols(c1 - c0);
    std::iota(rows.begin(), rows.end(), r0);
    std::iota(cols.begin(), cols.end(), c0);
    return restrict_columns(restrict_rows(m, rows), cols);
}

Matrix lift(const ff::FieldTower& T, const Matrix& m) {
    return map_entries(m, T.top_ptr(), [&](Elem x) { return T.embed(x); });
}

// P_0: for each repair set j, the rows [I_t | B at tail j] and [0 | C at tail j].
Matrix local_parity_block(const Topology& topo, const Matrix& Aprime) {
    const Index b = topo.delta - 1;
    const Index S = topo.group_size();
    const Index tail = topo.tail_size();
    const Matrix B = sub(Aprime, 0, topo.t, topo.t, Aprime.cols());
    const Matrix C = sub(Aprime, topo.t, b, topo.t, Aprime.cols());
    std::vector<Elem> d(topo.N * b * S, 0);
    for (Index j = 0; j < topo.N; ++j) {
        const Index r0 = j * b;
        for (Index i = 0; i < topo.t; ++i) d[(r0 + i) * S + i] = 1;
        put(d, S, r0, topo.t + j * tail, B);
        put(d, S, r0 + topo.t, topo.t + j * tail, C);
    }
    return Matrix(Aprime.field_ptr(), topo.N * b, S, std::move(d));
}

std::vector<Matrix> repeat(const Matrix& m, Index times) { return std::vector<Matrix>(times, m); }

ff::TowerPtr tower_for(const FieldPlan& plan) {
    return ff::FieldTower::create(plan.p, plan.e, static_cast<int>(std::max<Index>(plan.m, 1)));
}

MrLrcCode start(const Topology& topo, const FieldPlan& plan, Index k, Index h) {
    MrLrcCode code;
    code.topo = topo;
    code.kind = plan.kind;
    code.plan = plan;
    code.tower = tower_for(plan);
    code.k = k;
    code.h = h;
    return code;
}

void finish(MrLrcCode& code) {
    if (!code.G) code.G = generator_from_parity(code.H);
    if (code.G->rows() != code.k) {
        throw Error(ErrorCode::RankDeficient,
                    "construction produced dimension " + num(code.G->rows()) + " instead of " + num(code.k));
    }
}

}  // namespace

const char* to_string(CodeKind kind) {
    switch (kind) {
        case CodeKind::Gen: return "gen";
        case CodeKind::Pc1: return "pc1";
        case CodeKind::Pc2: return "pc2";
    }
    return "?";
}

CodeKind parse_kind(const std::string& name) {
    if (name == "gen") return CodeKind::Gen;
    if (name == "pc1") return CodeKind::Pc1;
    if (name == "pc2") return CodeKind::Pc2;
    throw Error(ErrorCode::InvalidInput, "unknown construction kind '" + name + "' (expected gen, pc1 or pc2)");
}

std::uint64_t next_prime_power(std::uint64_t v) {
    for (std::uint64_t q = std::max<std::uint64_t>(v, 2);; ++q) {
        const auto f = ff::prime_factors(q);
        if (f.size() == 1) return q;
    }
}

FieldPlan plan_field(const Topology& topo, CodeKind kind, Index h) {
    FieldPlan plan;
    plan.kind = kind;
    plan.q_target = std::max<std::uint64_t>(topo.g + 1, topo.r + topo.delta - 1);
    plan.q = next_prime_power(plan.q_target);
    plan.p = ff::prime_factors(plan.q).front();
    for (std::uint64_t v = plan.q; v > 1; v /= plan.p) ++plan.e;
    require(h <= topo.info_capacity(),
            "h <= g(t + N(r - t)) violated (h = " + num(h) + ", capacity = " + num(topo.info_capacity()) + ")");
    const std::string qt = num(plan.q_target);
    switch (kind) {
        case CodeKind::Gen: {
            require(topo.t <= topo.r, "gen needs t <= r");
            plan.m = topo.t + topo.N * (topo.r - topo.t);
            plan.table_bound = big_pow(plan.q_target, plan.m);
            plan.table_formula = qt + "^" + num(plan.m);
            break;
        }
        case CodeKind::Pc1: {
            require_availability(topo, "pc1");
            require(h <= topo.r, "pc1 needs h <= r (h = " + num(h) + ", r = " + num(topo.r) + ")");
            plan.m = h * topo.N;
            plan.table_bound = big_pow(plan.q_target, plan.m);
            plan.table_formula = qt + "^" + num(plan.m);
            break;
        }
        case CodeKind::Pc2: {
            require_availability(topo, "pc2");
            plan.ell = topo.g * (topo.N * (topo.delta - 1) + topo.t) + h;
            const std::uint64_t v = topo.n / topo.g - 1;
            plan.s = 1;
            for (std::uint64_t qs = plan.q; qs < v; qs *= plan.q) ++plan.s;
            plan.m = plan.s * plan.ell;
            plan.table_bound = big_pow(v, plan.ell);
            plan.table_formula = num(v) + "^" + num(plan.ell);
            break;
        }
    }
    plan.realized = big_pow(plan.q, std::max<Index>(plan.m, 1));
    return plan;
}

Matrix MrLrcCode::generator() const { return G ? *G : generator_from_parity(H); }

Matrix gen_block_d(const Topology& topo, const Matrix& A) {
    const Index rows = topo.t + topo.N * (topo.r - topo.t);
    const Index S = topo.group_size();
    const Index tail = topo.tail_size();
    const Matrix B = sub(A, 0, topo.t, topo.t, A.cols());
    const Matrix C = sub(A, topo.t, topo.r, topo.t, A.cols());
    std::vector<Elem> d(rows * S, 0);
    for (Index i = 0; i < topo.t; ++i) d[i * S + i] = 1;
    for (Index j = 0; j < topo.N; ++j) {
        put(d, S, 0, topo.t + j * tail, B);
        put(d, S, topo.t + j * (topo.r - topo.t), topo.t + j * tail, C);
    }
    return Matrix(A.field_ptr(), rows, S, std::move(d));
}

MrLrcCode construct_gen(const Topology& topo, Index k) {
    const Index h = heavy_parity_count(topo, k);
    MrLrcCode code = start(topo, plan_field(topo, CodeKind::Gen, h), k, h);
    const auto& T = *code.tower;
    code.A = structured_mds({T.base_ptr(), topo.repair_set_size(), topo.r}, topo.t, {topo.r});
    const Matrix D = gen_block_d(topo, *code.A);

    code.beta = T.polynomial_basis(static_cast<int>(code.plan.m));
    code.a = T.distinct_norm_elements(static_cast<int>(topo.g));
    // gamma = (beta_1, ..., beta_m) D
    const Matrix beta_row(T.top_ptr(), 1, code.beta.size(), code.beta);
    const Matrix gamma = multiply(beta_row, lift(T, D));
    code.G = linearized_rows(T, code.a, gamma.row(0), k);
    code.H = parity_from_generator(*code.G);
    finish(code);
    return code;
}

MrLrcCode construct_pc1(const Topology& topo, Index h) {
    const FieldPlan plan = plan_field(topo, CodeKind::Pc1, h);
    MrLrcCode code = start(topo, plan, topo.info_capacity() - h, h);
    const auto& T = *code.tower;
    const Index b = topo.delta - 1;
    const Index S = topo.group_size();
    const Index tail = topo.tail_size();
    code.A = h == 0 ? structured_mds({T.base_ptr(), topo.repair_set_size(), b}, topo.t, {b}, true)
                    : structured_mds({T.base_ptr(), topo.repair_set_size(), h + b}, topo.t, {b, h}, true);
    const Matrix Aprime = sub(*code.A, 0, b, 0, code.A->cols());
    const Matrix P0 = local_parity_block(topo, Aprime);
    code.P = block_diag(repeat(P0, topo.g));

    std::vector<Matrix> parts{lift(T, *code.P)};
    if (h > 0) {
        // Q: h N x S with D placed on tail j in row band j.
        const Matrix D = sub(*code.A, b, b + h, topo.t, code.A->cols());
        std::vector<Elem> qd(h * topo.N * S, 0);
        for (Index j = 0; j < topo.N; ++j) put(qd, S, j * h, topo.t + j * tail, D);
        const Matrix Q = lift(T, Matrix(T.base_ptr(), h * topo.N, S, std::move(qd)));

        code.a = T.distinct_norm_elements(static_cast<int>(topo.g));
        code.beta = T.polynomial_basis(static_cast<int>(plan.m));
        const Matrix outer = linearized_rows(T, code.a, code.beta, h);
        std::vector<Matrix> heavy;
        for (Index i = 0; i < topo.g; ++i) heavy.push_back(multiply(sub(outer, 0, h, i * plan.m, (i + 1) * plan.m), Q));
        parts.push_back(hstack(heavy));
    }
    code.H = vstack(parts);
    finish(code);
    return code;
}

MrLrcCode construct_pc2(const Topology& topo, Index h) {
    const FieldPlan plan = plan_field(topo, CodeKind::Pc2, h);
    MrLrcCode code = start(topo, plan, topo.info_capacity() - h, h);
    code.ell = plan.ell;
    const auto& T = *code.tower;
    const Index b = topo.delta - 1;
    const Index width = topo.n / topo.g;
    code.A = structured_mds({T.base_ptr(), topo.repair_set_size(), b}, topo.t, {b}, true);
    code.P = block_diag(repeat(local_parity_block(topo, *code.A), topo.g));

    // l x width parity-check of an extended RS code over GF(q^s), expanded column-wise
    // over GF(q) into an (s*l) x width matrix, then contracted against the polynomial
    // basis of GF(q^m).
    const auto Ts = ff::FieldTower::create(plan.p, plan.e, static_cast<int>(plan.s));
    const auto& small = Ts->top();
    const Index s = plan.s;
    const Index ell = plan.ell;
    std::vector<Elem> expanded(s * ell * width, 0);
    for (Index j = 0; j < width; ++j) {
        for (Index i = 0; i < ell; ++i) {
            Elem entry;
            if (j < small.order()) {
                entry = small.pow(static_cast<Elem>(j), i);
            } else {
                entry = i + 1 == ell ? 1 : 0;
            }
            const auto c = Ts->coordinates(entry);
            for (Index u = 0; u < s; ++u) expanded[(i * s + u) * width + j] = c[u];
        }
    }
    const Matrix Hexp(T.base_ptr(), s * ell, width, std::move(expanded));
    const auto alpha = T.polynomial_basis(static_cast<int>(plan.m));
    const Matrix alpha_row(T.top_ptr(), 1, alpha.size(), alpha);
    const Matrix S = multiply(alpha_row, lift(T, Hexp));
    code.beta.assign(S.row(0).begin(), S.row(0).end());

    // Spot-check the independence level on the expanded columns.
    const Index level = std::min(ell, width);
    Rng rng(0);
    std::uint64_t checked = 0;
    bool exhaustive = true;
    for_each_subset(width, level, [&](const IndexSet& cols) {
        if (++checked > 20'000) return exhaustive = false;
        if (rank(restrict_columns(Hexp, cols)) != level) {
            throw Error(ErrorCode::RankDeficient, "evaluation set is not l-wise independent");
        }
        return true;
    });
    if (!exhaustive) {
        for (int trial = 0; trial < 1000; ++trial) {
            const auto cols = rng.subset(width, level);
            if (rank(restrict_columns(Hexp, cols)) != level) {
                throw Error(ErrorCode::RankDeficient, "evaluation set is not l-wise independent");
            }
        }
    }

    std::vector<Matrix> parts{lift(T, *code.P)};
    if (h > 0) {
        code.a = T.distinct_norm_elements(static_cast<int>(topo.g));
        parts.push_back(linearized_rows(T, code.a, code.beta, h));
    }
    code.H = vstack(parts);
    finish(code);
    return code;
}

MrLrcCode construct(const Topology& topo, CodeKind kind, Index k_or_h) {
    switch (kind) {
        case CodeKind::Gen: return construct_gen(topo, k_or_h);
        case CodeKind::Pc1: return construct_pc1(topo, k_or_h);
        case CodeKind::Pc2: return construct_pc2(topo, k_or_h);
    }
    throw Error(ErrorCode::InvalidInput, "unknown kind");
}

Matrix generator_from_parity(const Matrix& H) {
    if (rank(H) != H.rows()) throw Error(ErrorCode::RankDeficient, "parity-check rows are dependent");
    return transpose(right_kernel(H));
}

Matrix parity_from_generator(const Matrix& G) {
    if (rank(G) != G.rows()) throw Error(ErrorCode::RankDeficient, "generator rows are dependent");
    return transpose(right_kernel(G));
}

MrLrcCode systematic_info_placement(const MrLrcCode& code) {
    const Topology& topo = code.topo;
    if (code.k > topo.g * topo.t) {
        throw Error(ErrorCode::ConstraintViolated,
                    "k <= gt violated (k = " + num(code.k) + ", gt = " + num(topo.g * topo.t) + ")");
    }
    const Matrix G = code.generator();
    const IndexSet cores = topo.all_cores();
    const Echelon ech = rref(restrict_columns(G, cores));
    if (ech.pivots.size() < code.k) {
        throw Error(ErrorCode::NotInformationAvailable,
                    "rank of G on the cores is " + num(ech.pivots.size()) + " < k = " + num(code.k));
    }
    IndexSet info;
    for (Index p : ech.pivots) info.push_back(cores[p]);
    MrLrcCode out = code;
    out.G = systematic_form(G, info);
    out.info_set = info;
    return out;
}

}  // namespace mrlrc
