#pragma once

// The three explicit MR-LRC constructions and their field-size planner.
//
//   gen : generator-matrix construction, outer linearized RS code times diag(D, ..., D)
//   pc1 : parity-check construction with local bands [A'; D] and an h-dimensional outer code
//   pc2 : parity-check construction with an l-wise independent evaluation set

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrlrc/matrix.hpp"
#include "mrlrc/topology.hpp"

namespace mrlrc {

using BigInt = boost::multiprecision::cpp_int;

enum class CodeKind { Gen, Pc1, Pc2 };

const char* to_string(CodeKind kind);
/// Throws InvalidInput for unknown names.
CodeKind parse_kind(const std::string& name);

struct FieldPlan {
    CodeKind kind = CodeKind::Gen;
    /// max{g + 1, r + delta - 1}.
    std::uint64_t q_target = 0;
    /// Least prime power >= q_target, realized as p^e.
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    int e = 0;
    /// Degree of the top field over GF(q).
    Index m = 0;
    /// pc2 only: independence level and sub-extension degree (q^s >= n/g - 1).
    Index ell = 0;
    Index s = 0;
    /// Closed-form table value: q_target^(t+N(r-t)), q_target^(hN) or (n/g - 1)^(g(N(delta-1)+t)+h).
    BigInt table_bound;
    std::string table_formula;
    /// q^m for the field actually used.
    BigInt realized;
};

/// Throws ConstraintViolated naming the failed inequality.
FieldPlan plan_field(const Topology& topo, CodeKind kind, Index h);

/// Least prime power >= v (v >= 2).
std::uint64_t next_prime_power(std::uint64_t v);

struct MrLrcCode {
    Topology topo;
    CodeKind kind = CodeKind::Gen;
    ff::TowerPtr tower;
    FieldPlan plan;
    Index k = 0;
    Index h = 0;
    /// pc2: the independence level used for the evaluation set.
    Index ell = 0;
    std::vector<Elem> a;
    /// Evaluation points of the outer code: the GF(q)-basis (gen, pc1) or the set S (pc2).
    std::vector<Elem> beta;
    std::optional<Matrix> G;
    Matrix H{nullptr, 0, 0};
    /// Local parity rows over GF(q): block-diagonal in the groups (pc1, pc2).
    std::optional<Matrix> P;
    /// Local generator A over GF(q).
    std::optional<Matrix> A;
    /// Information set inside the cores, once systematic_info_placement has run.
    IndexSet info_set;

    Index n() const noexcept { return topo.n; }
    /// G if present, otherwise derived from H.
    Matrix generator() const;
};

/// Outer linearized RS code times diag(D, ..., D). Accepts plain topologies (t <= r).
MrLrcCode construct_gen(const Topology& topo, Index k);
/// Requires h <= r and an availability topology.
MrLrcCode construct_pc1(const Topology& topo, Index h);
/// Requires h <= g(t + N(r - t)) and an availability topology.
MrLrcCode construct_pc2(const Topology& topo, Index h);
MrLrcCode construct(const Topology& topo, CodeKind kind, Index k_or_h);

/// Basis of the null space, one codeword per row. Throws RankDeficient on dependent rows.
Matrix generator_from_parity(const Matrix& H);
Matrix parity_from_generator(const Matrix& G);

/// Makes G systematic on k coordinates of the cores. Throws ConstraintViolated when
/// k > gt and NotInformationAvailable (with the rank reached) when no such set exists.
MrLrcCode systematic_info_placement(const MrLrcCode& code);

/// The block D of the generator construction: (t + N(r-t)) x (t + N(r+delta-1-t)).
Matrix gen_block_d(const Topology& topo, const Matrix& A);

}  // namespace mrlrc
