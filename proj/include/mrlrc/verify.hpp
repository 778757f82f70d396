#pragma once

// MR verification (exhaustive and sampled), erasure decoding and exact l(P, h).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrlrc/constructions.hpp"

namespace mrlrc {

struct PatternFailure {
    /// "local" (a repair set cannot absorb delta - 1 erasures), "mds" (a singular
    /// k-minor of G restricted to the complement), or "rank" (sampled mode).
    std::string reason;
    IndexSet pattern;  // erased coordinates, 0-based
    IndexSet minor;    // failing columns, 0-based (empty for rank failures)
    Index rank_defect = 0;
};

struct MrReport {
    std::string code_id;
    std::string mode;  // "exhaustive" or "sampled"
    std::uint64_t patterns_checked = 0;
    std::uint64_t local_sets_checked = 0;
    std::uint64_t failure_count = 0;
    std::vector<PatternFailure> failures;  // at most max_recorded entries
    std::optional<Index> ell_exact;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double wall_time_seconds = 0.0;

    bool pass() const noexcept { return failure_count == 0; }
};

struct VerifyOptions {
    std::uint64_t pattern_cap = kPatternCap;
    std::size_t max_recorded = 16;
    /// Stop after the first failure.
    bool stop_at_first = false;
};

/// Checks every repair set for local distance >= delta, then every maximal pattern E
/// for an MDS restriction G|_{[n] \ E} of dimension k and length k + h.
/// Short identifier such as "pc1(r=2,delta=2,t=1,g=2,N=2,k=5,h=1)".
std::string code_id(const MrLrcCode& code);

MrReport verify_mr_exhaustive(const MrLrcCode& code, const VerifyOptions& opts = {});

/// Draws `trials` patterns (a uniform maximal pattern plus h extra coordinates) and
/// checks rank(H|_E) = |E|. Throws BadParams when trials = 0.
MrReport verify_mr_sampled(const MrLrcCode& code, std::uint64_t trials, std::uint64_t seed,
                           std::size_t max_recorded = 16);

enum class DecodeStatus { Recovered, Unrecoverable };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Recovered;
    std::vector<Elem> codeword;   // complete when Recovered
    Index locally_repaired = 0;   // symbols filled by local repair sets
    Index globally_repaired = 0;  // symbols filled by the global solve
    /// Reads needed: an information set of survivors per local repair (the local
    /// dimension), plus k for a global solve.
    Index symbols_read = 0;
    std::vector<Index> repair_sets_used;  // indices into Topology::repair_sets()
    Index rank_defect = 0;        // |E| - rank(H|_E) when Unrecoverable
};

/// Caches the parity checks of a code for repeated decoding.
class Decoder {
public:
    explicit Decoder(const MrLrcCode& code);

    /// word[i] empty marks an erasure. Throws InvalidInput when the surviving symbols
    /// are inconsistent with every codeword, LengthMismatch on a wrong length.
    DecodeResult decode(const std::vector<std::optional<Elem>>& word) const;

    /// Can E be filled in from the survivors (local peeling, then a global rank test)?
    bool recoverable(const IndexSet& erased) const;

    const Matrix& local_checks(Index set) const { return local_[set]; }

private:
    const MrLrcCode* code_;
    Matrix H_;
    std::vector<IndexSet> sets_;
    std::vector<Matrix> local_;  // parity checks of the code restricted to each repair set
};

DecodeResult decode_erasures(const MrLrcCode& code, const std::vector<std::optional<Elem>>& word);

/// Encodes a message of length k as x * G.
std::vector<Elem> encode(const MrLrcCode& code, const std::vector<Elem>& message);

inline constexpr Index kEllExactMaxColumns = 20;

/// max |E| with |E| - rank(P|_E) <= h, by decreasing-size subset search.
Index ell_exact(const Matrix& P, Index h, Index max_cols = kEllExactMaxColumns);

/// True iff |E| <= ell and |E| - rank(P|_E) <= h. Throws WrongKind unless pc2.
bool construction3_pattern_check(const MrLrcCode& code, const IndexSet& erased);

}  // namespace mrlrc
