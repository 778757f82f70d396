#include "mrlrc/verify.hpp"

#include <algorithm>
#include <chrono>

#include "mrlrc/error.hpp"
#include "mrlrc/localmds.hpp"
#include "mrlrc/rng.hpp"

namespace mrlrc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

IndexSet complement(const IndexSet& s, Index n) {
    IndexSet out;
    out.reserve(n - s.size());
    std::size_t j = 0;
    for (Index i = 0; i < n; ++i) {
        if (j < s.size() && s[j] == i) {
            ++j;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

IndexSet map_through(const IndexSet& local, const IndexSet& global) {
    IndexSet out;
    out.reserve(local.size());
    for (Index i : local) out.push_back(global[i]);
    return out;
}

void record(MrReport& report, PatternFailure failure, std::size_t max_recorded) {
    ++report.failure_count;
    if (report.failures.size() < max_recorded) report.failures.push_back(std::move(failure));
}

// Singular k-minor of the k x (k+h) matrix M (as columns of M), or nothing when M is MDS.
// The dual code is tested instead when it is smaller: a k-subset is an information set of
// the code iff its complement is one of the dual.
std::optional<PatternFailure> mds_failure(const Matrix& M) {
    const Index k = M.rows();
    const Index len = M.cols();
    const Index rk = rank(M);
    if (rk < k) {
        PatternFailure f;
        f.reason = "mds";
        f.rank_defect = k - rk;
        return f;
    }
    if (k == 0 || len == k) return std::nullopt;
    IndexSet bad;
    const Index h = len - k;
    if (h < k) {
        const Matrix dual = transpose(right_kernel(M));
        const IndexSet dual_bad = first_singular_minor(dual);
        if (!dual_bad.empty()) bad = complement(dual_bad, len);
    } else {
        bad = first_singular_minor(M);
    }
    if (bad.empty()) return std::nullopt;
    PatternFailure f;
    f.reason = "mds";
    f.minor = std::move(bad);
    return f;
}

}  // namespace

std::string code_id(const MrLrcCode& code) {
    const Topology& t = code.topo;
    return std::string(to_string(code.kind)) + "(r=" + std::to_string(t.r) + ",delta=" + std::to_string(t.delta) +
           ",t=" + std::to_string(t.t) + ",g=" + std::to_string(t.g) + ",N=" + std::to_string(t.N) +
           ",k=" + std::to_string(code.k) + ",h=" + std::to_string(code.h) + ")";
}

MrReport verify_mr_exhaustive(const MrLrcCode& code, const VerifyOptions& opts) {
    const auto start = Clock::now();
    MrReport report;
    report.code_id = code_id(code);
    report.mode = "exhaustive";

    const Matrix G = code.generator();
    const Topology& topo = code.topo;
    const Index n = topo.n;
    const Index d1 = topo.delta - 1;

    for (const IndexSet& R : topo.repair_sets()) {
        const Index full = rank(restrict_columns(G, R));
        bool keep_going = for_each_subset(R.size(), d1, [&](const IndexSet& s) {
            ++report.local_sets_checked;
            const IndexSet removed = map_through(s, R);
            const IndexSet rest = complement(s, R.size());
            const Index rk = rank(restrict_columns(G, map_through(rest, R)));
            if (rk != full) {
                PatternFailure f;
                f.reason = "local";
                f.pattern = removed;
                f.rank_defect = full - rk;
                record(report, std::move(f), opts.max_recorded);
                if (opts.stop_at_first) return false;
            }
            return true;
        });
        if (!keep_going) break;
    }

    if (!(opts.stop_at_first && report.failure_count > 0)) {
        for_each_maximal_pattern(
            topo,
            [&](const IndexSet& E) {
                ++report.patterns_checked;
                const IndexSet rest = complement(E, n);
                if (auto f = mds_failure(restrict_columns(G, rest))) {
                    f->pattern = E;
                    f->minor = map_through(f->minor, rest);
                    record(report, std::move(*f), opts.max_recorded);
                    if (opts.stop_at_first) return false;
                }
                return true;
            },
            opts.pattern_cap);
    }

    report.wall_time_seconds = seconds_since(start);
    return report;
}

MrReport verify_mr_sampled(const MrLrcCode& code, std::uint64_t trials, std::uint64_t seed,
                           std::size_t max_recorded) {
    if (trials == 0) throw Error(ErrorCode::BadParams, "sampled verification needs trials >= 1");
    const auto start = Clock::now();
    MrReport report;
    report.code_id = code_id(code);
    report.mode = "sampled";
    report.seed = seed;
    report.trials = trials;

    const Topology& topo = code.topo;
    const auto per_group = group_maximal_patterns(topo);
    const Index S = topo.group_size();
    Rng rng(seed);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        IndexSet E;
        for (Index i = 0; i < topo.g; ++i) {
            const IndexSet& pick = per_group[rng.below(per_group.size())];
            for (Index off : pick) E.push_back(i * S + off);
        }
        const IndexSet rest = complement(E, topo.n);
        const Index extra = std::min<Index>(code.h, rest.size());
        for (Index i : rng.subset(rest.size(), extra)) E.push_back(rest[i]);
        std::sort(E.begin(), E.end());

        ++report.patterns_checked;
        const Index rk = rank(restrict_columns(code.H, E));
        if (rk != E.size()) {
            PatternFailure f;
            f.reason = "rank";
            f.pattern = E;
            f.rank_defect = E.size() - rk;
            record(report, std::move(f), max_recorded);
        }
    }
    report.wall_time_seconds = seconds_since(start);
    return report;
}

Decoder::Decoder(const MrLrcCode& code) : code_(&code), H_(code.H), sets_(code.topo.repair_sets()) {
    const Matrix G = code.generator();
    if (H_.rows() == 0 && H_.cols() == 0) H_ = parity_from_generator(G);
    local_.reserve(sets_.size());
    for (const IndexSet& R : sets_) local_.push_back(transpose(right_kernel(restrict_columns(G, R))));
}

DecodeResult Decoder::decode(const std::vector<std::optional<Elem>>& word) const {
    const Index n = code_->n();
    if (word.size() != n)
        throw Error(ErrorCode::LengthMismatch,
                    "word has " + std::to_string(word.size()) + " symbols, code length is " + std::to_string(n));
    const ff::Field& F = H_.field();
    DecodeResult out;
    out.codeword.assign(n, 0);
    std::vector<bool> known(n, false);
    for (Index i = 0; i < n; ++i) {
        if (word[i]) {
            F.check(*word[i]);
            out.codeword[i] = *word[i];
            known[i] = true;
        }
    }

    // Solve checks restricted to `cols` for the unknown columns; survivors feed the right-hand side.
    auto try_fill = [&](const Matrix& checks, const IndexSet& cols) -> std::optional<SolveStatus> {
        IndexSet unknown_local, known_local;
        for (Index c = 0; c < cols.size(); ++c) (known[cols[c]] ? known_local : unknown_local).push_back(c);
        if (unknown_local.empty()) return std::nullopt;
        const Matrix A = restrict_columns(checks, unknown_local);
        std::vector<Elem> rhs(checks.rows(), 0);
        for (Index row = 0; row < checks.rows(); ++row) {
            Elem acc = 0;
            for (Index c : known_local) acc = F.add(acc, F.mul(checks(row, c), out.codeword[cols[c]]));
            rhs[row] = F.neg(acc);
        }
        const SolveResult res = solve(A, rhs);
        if (res.status == SolveStatus::Unique) {
            for (Index u = 0; u < unknown_local.size(); ++u) {
                out.codeword[cols[unknown_local[u]]] = res.x[u];
                known[cols[unknown_local[u]]] = true;
            }
        }
        return res.status;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (Index s = 0; s < sets_.size(); ++s) {
            const IndexSet& R = sets_[s];
            Index missing = 0;
            for (Index c : R) missing += known[c] ? 0 : 1;
            if (missing == 0 || missing > local_[s].rows()) continue;
            if (try_fill(local_[s], R) == SolveStatus::Unique) {
                out.locally_repaired += missing;
                out.symbols_read += R.size() - local_[s].rows();
                out.repair_sets_used.push_back(s);
                progress = true;
            }
        }
    }

    IndexSet all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    Index missing = 0;
    for (Index i = 0; i < n; ++i) missing += known[i] ? 0 : 1;
    if (missing > 0) {
        IndexSet erased;
        for (Index i = 0; i < n; ++i)
            if (!known[i]) erased.push_back(i);
        const auto status = try_fill(H_, all);
        if (status == SolveStatus::Inconsistent)
            throw Error(ErrorCode::InvalidInput, "surviving symbols are inconsistent with the code");
        if (status == SolveStatus::NotUnique) {
            out.status = DecodeStatus::Unrecoverable;
            out.rank_defect = erased.size() - rank(restrict_columns(H_, erased));
            return out;
        }
        out.globally_repaired = missing;
        out.symbols_read += code_->k;
    }

    const std::vector<Elem> syndrome = mul_vec_right(H_, out.codeword);
    if (std::any_of(syndrome.begin(), syndrome.end(), [](Elem x) { return x != 0; }))
        throw Error(ErrorCode::InvalidInput, "surviving symbols are inconsistent with the code");
    return out;
}

bool Decoder::recoverable(const IndexSet& erased) const {
    return rank(restrict_columns(H_, erased)) == erased.size();
}

DecodeResult decode_erasures(const MrLrcCode& code, const std::vector<std::optional<Elem>>& word) {
    return Decoder(code).decode(word);
}

std::vector<Elem> encode(const MrLrcCode& code, const std::vector<Elem>& message) {
    if (message.size() != code.k)
        throw Error(ErrorCode::LengthMismatch, "message has " + std::to_string(message.size()) +
                                                   " symbols, code dimension is " + std::to_string(code.k));
    const Matrix G = code.generator();
    for (Elem x : message) G.field().check(x);
    return mul_vec_left(message, G);
}

Index ell_exact(const Matrix& P, Index h, Index max_cols) {
    const Index n = P.cols();
    if (n > max_cols)
        throw Error(ErrorCode::DimensionTooLarge,
                    "exact l(P, h) needs at most " + std::to_string(max_cols) + " columns, got " + std::to_string(n));
    const Index rk = rank(P);
    for (Index s = std::min(n, rk + h);; --s) {
        bool found = false;
        for_each_subset(n, s, [&](const IndexSet& E) {
            if (s - rank(restrict_columns(P, E)) <= h) found = true;
            return !found;
        });
        if (found || s == 0) return s;
    }
}

bool construction3_pattern_check(const MrLrcCode& code, const IndexSet& erased) {
    if (code.kind != CodeKind::Pc2 || !code.P)
        throw Error(ErrorCode::WrongKind, "pattern check applies to pc2 codes only");
    for (Index i : erased)
        if (i >= code.n()) throw Error(ErrorCode::IndexOutOfRange, "coordinate " + std::to_string(i) + " out of range");
    if (erased.size() > code.ell) return false;
    return erased.size() - rank(restrict_columns(*code.P, erased)) <= code.h;
}

}  // namespace mrlrc
