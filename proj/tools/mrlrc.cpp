// mrlrc: construct, verify, encode/decode, simulate and bound MR-LRC codes.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification failure.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mrlrc/bounds.hpp"
#include "mrlrc/constructions.hpp"
#include "mrlrc/error.hpp"
#include "mrlrc/io.hpp"
#include "mrlrc/sim.hpp"
#include "mrlrc/verify.hpp"

namespace fs = std::filesystem;
using namespace mrlrc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct Params {
    Index r = 0, delta = 0, t = 0, g = 0, N = 1;
    std::optional<Index> k, h;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--r", r, "locality")->required();
        cmd->add_option("--delta", delta, "local distance")->required();
        cmd->add_option("--t", t, "core size")->required();
        cmd->add_option("--g", g, "number of groups")->required();
        cmd->add_option("--N", N, "availability")->required();
        auto* ko = cmd->add_option("--k", k, "dimension");
        cmd->add_option("--h", h, "heavy parities")->excludes(ko);
    }

    // Availability layout when t <= delta - 1, plain otherwise.
    Topology topology() const {
        const TopologyMode mode = t + 1 <= delta ? TopologyMode::Availability : TopologyMode::Plain;
        return make_topology(r, delta, t, g, N, mode);
    }

    Index heavy(const Topology& topo) const {
        if (k) return heavy_parity_count(topo, *k);
        if (h) return *h;
        throw Error(ErrorCode::BadParams, "one of --k or --h is required");
    }
};

fs::path bundle_path(const std::string& arg) {
    const fs::path p(arg);
    return fs::is_directory(p) ? p / "code.json" : p;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") std::cout << text;
    else io::write_text(path, text);
}

io::Json bounds_json(const Topology& topo, Index h) {
    io::Json j;
    j["schema_version"] = io::kSchemaVersion;
    j["params"] = {{"r", topo.r}, {"delta", topo.delta}, {"t", topo.t}, {"g", topo.g}, {"N", topo.N}};
    j["n"] = topo.n;
    j["h"] = h;
    j["k"] = topo.info_capacity() >= h ? topo.info_capacity() - h : 0;
    std::vector<FieldPlan> plans;
    io::Json inapplicable = io::Json::array();
    for (CodeKind kind : {CodeKind::Gen, CodeKind::Pc1, CodeKind::Pc2}) {
        try {
            plans.push_back(plan_field(topo, kind, h));
        } catch (const Error& e) {
            inapplicable.push_back({{"kind", to_string(kind)}, {"violated", e.what()}});
        }
    }
    std::stable_sort(plans.begin(), plans.end(),
                     [](const FieldPlan& a, const FieldPlan& b) { return a.table_bound < b.table_bound; });
    io::Json applicable = io::Json::array();
    for (const auto& p : plans) applicable.push_back(io::plan_json(p));
    j["constructions"] = applicable;
    j["inapplicable"] = inapplicable;
    const auto [lo, hi] = ell_bounds(topo, h);
    j["ell_bounds"] = {lo, hi};
    j["lower_bound"] = io::lower_bound_json(lower_bound_field(BoundInputs::from(topo, h)));
    return j;
}

void print_bounds(const io::Json& j) {
    std::cout << "n = " << j["n"] << ", k = " << j["k"] << ", h = " << j["h"] << "\n";
    for (const auto& p : j["constructions"])
        std::cout << "  " << p["kind"].get<std::string>() << ": " << p["table_formula"].get<std::string>() << " = "
                  << p["table_value"].get<std::string>() << "  (realized GF(" << p["q"] << "^" << p["m"]
                  << ") of size " << p["realized_field_size"].get<std::string>() << ")\n";
    for (const auto& p : j["inapplicable"])
        std::cout << "  " << p["kind"].get<std::string>() << ": n/a, " << p["violated"].get<std::string>() << "\n";
    std::cout << "  l(P, h) in [" << j["ell_bounds"][0] << ", " << j["ell_bounds"][1] << "]\n";
    const auto& lb = j["lower_bound"];
    std::cout << "  lower bound: regime " << lb["regime"].get<std::string>();
    if (lb.contains("value"))
        std::cout << ", |F| >= " << lb["value"].get<std::string>() << (lb["vacuous"].get<bool>() ? " (vacuous)" : "");
    std::cout << "\n";
}

void print_failures(const MrReport& rep) {
    for (const auto& f : rep.failures) {
        std::cerr << "  " << f.reason << " failure, pattern {";
        const IndexSet p = to_one_based(f.pattern);
        for (std::size_t i = 0; i < p.size(); ++i) std::cerr << (i ? "," : "") << p[i];
        std::cerr << "}";
        if (!f.minor.empty()) {
            const IndexSet m = to_one_based(f.minor);
            std::cerr << ", singular minor {";
            for (std::size_t i = 0; i < m.size(); ++i) std::cerr << (i ? "," : "") << m[i];
            std::cerr << "}";
        }
        if (f.rank_defect) std::cerr << ", rank defect " << f.rank_defect;
        std::cerr << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximally recoverable LRCs with availability"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "build a code and write an MRLRC v1 bundle");
    Params cparams;
    std::string kind_name, out_dir;
    bool systematic = false;
    construct_cmd->add_option("--kind", kind_name, "gen, pc1 or pc2")->required();
    cparams.add_to(construct_cmd);
    construct_cmd->add_option("--out", out_dir, "bundle directory")->required();
    construct_cmd->add_flag("--systematic", systematic, "place the information set inside the cores (k <= gt)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check the MR property of a bundle");
    std::string vbundle, vmode = "exhaustive", vreport;
    std::uint64_t vtrials = 10000, vseed = 1;
    bool vell = false;
    verify_cmd->add_option("--bundle", vbundle, "code.json or its directory")->required();
    verify_cmd->add_option("--mode", vmode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    verify_cmd->add_option("--trials", vtrials, "sampled mode trials");
    verify_cmd->add_option("--seed", vseed, "sampled mode seed");
    verify_cmd->add_option("--report", vreport, "JSON report path (default stdout)");
    verify_cmd->add_flag("--ell-exact", vell, "also compute l(P, h) exactly (pc1/pc2, n <= 20)");

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "encode a message of k symbols");
    std::string ebundle, emessage, eout;
    encode_cmd->add_option("--bundle", ebundle)->required();
    encode_cmd->add_option("--message", emessage, "file of k symbols")->required();
    encode_cmd->add_option("--out", eout, "codeword file (default stdout)");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "fill in erasures marked '?'");
    std::string dbundle, dword, dout, dreport;
    decode_cmd->add_option("--bundle", dbundle)->required();
    decode_cmd->add_option("--word", dword, "file of n symbols with '?' erasures")->required();
    decode_cmd->add_option("--out", dout, "codeword file (default stdout)");
    decode_cmd->add_option("--report", dreport, "JSON decode report");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "seeded failure simulation");
    std::string sbundle, smodel = "uniform", sreport;
    SimConfig scfg;
    std::optional<Index> sextra;
    sim_cmd->add_option("--bundle", sbundle)->required();
    sim_cmd->add_option("--trials", scfg.trials);
    sim_cmd->add_option("--model", smodel, "uniform, burst or adversarial")
        ->check(CLI::IsMember({"uniform", "burst", "adversarial"}));
    sim_cmd->add_option("--failures", scfg.failures, "uniform model: failed symbols per trial");
    sim_cmd->add_option("--extra", sextra, "adversarial model: extra failures (default uniform in [0, h])");
    sim_cmd->add_option("--seed", scfg.seed);
    sim_cmd->add_option("--report", sreport, "JSON report path (default stdout)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "field sizes of the three constructions and lower bounds");
    Params bparams;
    bool bjson = false;
    bparams.add_to(bounds_cmd);
    bounds_cmd->add_flag("--json", bjson, "print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*construct_cmd) {
            const Topology topo = cparams.topology();
            const CodeKind kind = parse_kind(kind_name);
            const Index h = cparams.heavy(topo);
            if (h > topo.info_capacity())
                throw Error(ErrorCode::ConstraintViolated, "h <= g(t + N(r - t)) violated");
            MrLrcCode code = kind == CodeKind::Gen ? construct_gen(topo, topo.info_capacity() - h)
                                                   : construct(topo, kind, h);
            if (systematic) code = systematic_info_placement(code);
            const fs::path path = io::save_bundle(code, out_dir);
            std::cout << "wrote " << path.string() << "\n";
            std::cout << code_id(code) << ": n = " << code.n() << ", field GF(" << code.tower->q() << "^"
                      << code.tower->m() << ")\n";
            print_bounds(bounds_json(topo, h));
            return kExitOk;
        }
        if (*verify_cmd) {
            const MrLrcCode code = io::load_bundle(bundle_path(vbundle));
            MrReport rep = vmode == "sampled" ? verify_mr_sampled(code, vtrials, vseed) : verify_mr_exhaustive(code);
            if (vell) {
                if (!code.P) throw Error(ErrorCode::WrongKind, "--ell-exact needs the local parity matrix P");
                rep.ell_exact = ell_exact(*code.P, code.h);
            }
            emit(io::dump(io::report_json(rep)), vreport);
            std::cerr << rep.code_id << ": " << rep.mode << ", " << rep.patterns_checked << " patterns, "
                      << rep.failure_count << " failures, " << rep.wall_time_seconds << " s -> "
                      << (rep.pass() ? "PASS" : "FAIL") << "\n";
            print_failures(rep);
            return rep.pass() ? kExitOk : kExitFailed;
        }
        if (*encode_cmd) {
            const MrLrcCode code = io::load_bundle(bundle_path(ebundle));
            emit(io::format_vector(encode(code, io::parse_vector(io::read_text(emessage)))), eout);
            return kExitOk;
        }
        if (*decode_cmd) {
            const MrLrcCode code = io::load_bundle(bundle_path(dbundle));
            const DecodeResult res = decode_erasures(code, io::parse_word(io::read_text(dword)));
            if (!dreport.empty()) io::write_text(dreport, io::dump(io::decode_json(res)));
            if (res.status == DecodeStatus::Unrecoverable) {
                std::cerr << "unrecoverable: rank defect " << res.rank_defect << "\n";
                return kExitFailed;
            }
            emit(io::format_vector(res.codeword), dout);
            std::cerr << "recovered " << res.locally_repaired << " locally, " << res.globally_repaired
                      << " globally, " << res.symbols_read << " symbols read\n";
            return kExitOk;
        }
        if (*sim_cmd) {
            const MrLrcCode code = io::load_bundle(bundle_path(sbundle));
            scfg.model = parse_failure_model(smodel);
            scfg.extra = sextra;
            const SimReport rep = simulate(code, scfg);
            emit(io::dump(sim_report_json(rep)), sreport);
            std::cerr << rep.code_id << ": " << rep.local_repair << " local, " << rep.global_repair << " global, "
                      << rep.data_loss << " lost of " << scfg.trials << "\n";
            return rep.unexpected_loss == 0 ? kExitOk : kExitFailed;
        }
        if (*bounds_cmd) {
            const Topology topo = bparams.topology();
            const io::Json j = bounds_json(topo, bparams.heavy(topo));
            if (bjson) std::cout << io::dump(j);
            else print_bounds(j);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
