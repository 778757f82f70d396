#include "mrlrc/sim.hpp"

#include <algorithm>

#include "mrlrc/error.hpp"
#include "mrlrc/rng.hpp"

namespace mrlrc {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

IndexSet draw(const MrLrcCode& code, const SimConfig& cfg, const std::vector<IndexSet>& group_patterns, Rng& rng) {
    const Topology& topo = code.topo;
    const Index n = topo.n;
    switch (cfg.model) {
        case FailureModel::UniformNodes: return rng.subset(n, cfg.failures);
        case FailureModel::PerGroupBurst: {
            const Index S = topo.group_size();
            const Index len = std::min(topo.delta - 1, S);
            const Index start = rng.below(topo.g) * S + rng.below(S - len + 1);
            IndexSet e(len);
            for (Index i = 0; i < len; ++i) e[i] = start + i;
            return e;
        }
        case FailureModel::AdversarialMaximal: {
            IndexSet e;
            const Index S = topo.group_size();
            for (Index i = 0; i < topo.g; ++i)
                for (Index off : group_patterns[rng.below(group_patterns.size())]) e.push_back(i * S + off);
            IndexSet rest;
            for (Index i = 0, j = 0; i < n; ++i) {
                if (j < e.size() && e[j] == i) ++j;
                else rest.push_back(i);
            }
            const Index extra = std::min<Index>(cfg.extra ? *cfg.extra : rng.below(code.h + 1), rest.size());
            for (Index i : rng.subset(rest.size(), extra)) e.push_back(rest[i]);
            std::sort(e.begin(), e.end());
            return e;
        }
    }
    return {};
}

}  // namespace

const char* to_string(FailureModel model) {
    switch (model) {
        case FailureModel::UniformNodes: return "uniform";
        case FailureModel::PerGroupBurst: return "burst";
        case FailureModel::AdversarialMaximal: return "adversarial";
    }
    return "?";
}

FailureModel parse_failure_model(const std::string& name) {
    if (name == "uniform") return FailureModel::UniformNodes;
    if (name == "burst") return FailureModel::PerGroupBurst;
    if (name == "adversarial") return FailureModel::AdversarialMaximal;
    throw Error(ErrorCode::InvalidInput, "unknown failure model '" + name + "' (expected uniform, burst or adversarial)");
}

SimReport simulate(const MrLrcCode& code, const SimConfig& cfg) {
    if (cfg.trials == 0) throw Error(ErrorCode::BadParams, "simulation needs trials >= 1");
    if (cfg.model == FailureModel::UniformNodes && cfg.failures > code.n())
        throw Error(ErrorCode::BadParams, "failures = " + std::to_string(cfg.failures) + " exceeds n = " +
                                              std::to_string(code.n()));
    const Topology& topo = code.topo;
    SimReport rep;
    rep.code_id = code_id(code);
    rep.config = cfg;
    rep.local_parities = topo.local_parity_count();
    rep.baseline_local_parities = topo.g * topo.t * topo.N * (topo.delta - 1);

    const Decoder dec(code);
    const Matrix G = code.generator();
    const auto sets = topo.repair_sets();
    const auto group_patterns = group_maximal_patterns(topo);
    const Elem order = G.field().order();
    Rng rng(cfg.seed);
    std::vector<Elem> message(code.k);

    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
        for (auto& x : message) x = rng.below(order);
        const std::vector<Elem> c = mul_vec_left(message, G);
        const IndexSet E = draw(code, cfg, group_patterns, rng);
        std::vector<std::optional<Elem>> word(c.begin(), c.end());
        for (Index i : E) word[i].reset();

        const DecodeResult res = dec.decode(word);
        if (res.status != DecodeStatus::Recovered || res.codeword != c) {
            ++rep.data_loss;
            if (is_mr_correctable_pattern(topo, code.h, E)) ++rep.unexpected_loss;
            if (rep.loss_witnesses.size() < kMaxWitnesses) rep.loss_witnesses.push_back(E);
            continue;
        }
        if (res.globally_repaired > 0) ++rep.global_repair;
        else ++rep.local_repair;
        rep.symbols_repaired += E.size();
        rep.symbols_read += res.symbols_read;
        if (E.size() == 1) {
            ++rep.single_failure_trials;
            rep.max_single_failure_reads = std::max(rep.max_single_failure_reads, res.symbols_read);
        }
        if (res.globally_repaired == 0) {
            for (Index e : E) {
                ++rep.locally_repaired_symbols;
                for (const IndexSet& R : sets) {
                    if (!std::binary_search(R.begin(), R.end(), e)) continue;
                    const bool intact = std::none_of(R.begin(), R.end(), [&](Index x) {
                        return x != e && std::binary_search(E.begin(), E.end(), x);
                    });
                    if (intact) ++rep.parallel_sets_total;
                }
            }
        }
    }
    return rep;
}

nlohmann::json sim_report_json(const SimReport& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["code_id"] = r.code_id;
    j["rng"] = Rng::kName;
    j["seed"] = r.config.seed;
    j["trials"] = r.config.trials;
    j["failure_model"] = to_string(r.config.model);
    if (r.config.model == FailureModel::UniformNodes) j["failures"] = r.config.failures;
    if (r.config.model == FailureModel::AdversarialMaximal) {
        if (r.config.extra) j["extra"] = *r.config.extra;
        else j["extra"] = "uniform in [0, h]";
    }
    j["outcomes"] = {{"local_repair", r.local_repair}, {"global_repair", r.global_repair}, {"data_loss", r.data_loss}};
    j["unexpected_loss"] = r.unexpected_loss;
    const double trials = static_cast<double>(r.config.trials);
    j["rates"] = {{"local_repair", r.local_repair / trials},
                  {"global_repair", r.global_repair / trials},
                  {"data_loss", r.data_loss / trials}};
    nlohmann::json cost;
    cost["symbols_repaired"] = r.symbols_repaired;
    cost["symbols_read"] = r.symbols_read;
    cost["reads_per_repaired_symbol"] =
        r.symbols_repaired ? static_cast<double>(r.symbols_read) / static_cast<double>(r.symbols_repaired) : 0.0;
    cost["single_failure_trials"] = r.single_failure_trials;
    cost["max_single_failure_reads"] = r.max_single_failure_reads;
    cost["mean_parallel_repair_sets"] =
        r.locally_repaired_symbols
            ? static_cast<double>(r.parallel_sets_total) / static_cast<double>(r.locally_repaired_symbols)
            : 0.0;
    j["repair_cost"] = cost;
    j["overhead"] = {{"local_parities", r.local_parities}, {"baseline_local_parities_k_eq_gt", r.baseline_local_parities}};
    nlohmann::json w = nlohmann::json::array();
    for (const auto& e : r.loss_witnesses) w.push_back(to_one_based(e));
    j["loss_witnesses"] = w;
    return j;
}

}  // namespace mrlrc
