#pragma once

// Seeded storage-failure simulator: draw erasures, repair locally where a repair set
// suffices, fall back to the global decoder, and account for reads.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrlrc/verify.hpp"

namespace mrlrc {

enum class FailureModel {
    /// f uniformly random coordinates.
    UniformNodes,
    /// delta - 1 consecutive coordinates inside one uniformly chosen group.
    PerGroupBurst,
    /// A uniform maximal pattern plus extra uniformly random coordinates.
    AdversarialMaximal,
};

const char* to_string(FailureModel model);
/// Accepts "uniform", "burst" and "adversarial". Throws InvalidInput.
FailureModel parse_failure_model(const std::string& name);

struct SimConfig {
    std::uint64_t trials = 1000;
    FailureModel model = FailureModel::UniformNodes;
    /// UniformNodes: number of failed coordinates.
    Index failures = 1;
    /// AdversarialMaximal: extra failures; unset draws uniformly from [0, h].
    std::optional<Index> extra;
    std::uint64_t seed = 1;
};

struct SimReport {
    std::string code_id;
    SimConfig config;
    std::uint64_t local_repair = 0;
    std::uint64_t global_repair = 0;
    std::uint64_t data_loss = 0;
    /// data_loss on patterns that is_mr_correctable_pattern accepts.
    std::uint64_t unexpected_loss = 0;
    std::uint64_t symbols_repaired = 0;
    std::uint64_t symbols_read = 0;
    std::uint64_t single_failure_trials = 0;
    Index max_single_failure_reads = 0;
    /// For locally repaired symbols, intact repair sets that could serve the read.
    std::uint64_t parallel_sets_total = 0;
    std::uint64_t locally_repaired_symbols = 0;
    /// gN(delta - 1) against kN(delta - 1) with k = gt.
    Index local_parities = 0;
    Index baseline_local_parities = 0;
    std::vector<IndexSet> loss_witnesses;  // first few
};

/// Throws BadParams for trials = 0 or failures > n.
SimReport simulate(const MrLrcCode& code, const SimConfig& config);

nlohmann::json sim_report_json(const SimReport& report);

}  // namespace mrlrc
