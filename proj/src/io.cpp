#include "mrlrc/io.hpp"

#include <fstream>
#include <sstream>

#include "mrlrc/error.hpp"
#include "mrlrc/rng.hpp"

namespace mrlrc::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::uint64_t parse_u64(const std::string& token, const std::string& what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        parse_error("expected a non-negative integer for " + what + ", got '" + token + "'");
    try {
        return std::stoull(token);
    } catch (const std::exception&) {
        parse_error(what + " out of range: '" + token + "'");
    }
}

std::uint64_t header_field(std::istringstream& head, const std::string& key) {
    std::string tok;
    if (!(head >> tok) || tok.rfind(key + "=", 0) != 0) parse_error("SRMAT header: expected '" + key + "=<value>'");
    return parse_u64(tok.substr(key.size() + 1), key);
}

struct Header {
    std::uint64_t p, e, rows, cols;
};

Header read_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) parse_error("SRMAT: empty input");
    std::istringstream head(line);
    std::string magic;
    head >> magic;
    if (magic != "srmat") parse_error("SRMAT: header must start with 'srmat'");
    Header h{};
    h.p = header_field(head, "p");
    h.e = header_field(head, "e");
    h.rows = header_field(head, "rows");
    h.cols = header_field(head, "cols");
    std::string extra;
    if (head >> extra) parse_error("SRMAT header: unexpected token '" + extra + "'");
    if (h.e < 1 || h.e > 64) parse_error("SRMAT header: bad extension degree");
    return h;
}

Matrix read_body(std::istream& in, const Header& h, const ff::FieldPtr& field) {
    std::vector<Elem> data;
    data.reserve(h.rows * h.cols);
    std::string line;
    for (std::uint64_t r = 0; r < h.rows; ++r) {
        if (!std::getline(in, line)) parse_error("SRMAT: expected " + std::to_string(h.rows) + " rows");
        std::istringstream row(line);
        std::string tok;
        std::uint64_t c = 0;
        while (row >> tok) {
            const Elem x = parse_u64(tok, "matrix entry");
            if (!field->contains(x)) parse_error("SRMAT: entry " + tok + " is not in GF(" + std::to_string(field->order()) + ")");
            data.push_back(x);
            ++c;
        }
        if (c != h.cols) parse_error("SRMAT: row " + std::to_string(r + 1) + " has " + std::to_string(c) + " entries");
    }
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) parse_error("SRMAT: trailing data");
    return Matrix(field, h.rows, h.cols, std::move(data));
}

template <typename T>
T get(const Json& j, const char* key) {
    if (!j.contains(key)) parse_error(std::string("bundle: missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        parse_error(std::string("bundle: bad value for '") + key + "': " + e.what());
    }
}

Json index_set(const IndexSet& s) { return to_one_based(s); }

}  // namespace

void write_srmat(std::ostream& out, const Matrix& m) {
    out << "srmat p=" << m.field().characteristic() << " e=" << m.field().degree() << " rows=" << m.rows()
        << " cols=" << m.cols() << '\n';
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
}

std::string to_srmat(const Matrix& m) {
    std::ostringstream out;
    write_srmat(out, m);
    return out.str();
}

Matrix read_srmat(std::istream& in) {
    const Header h = read_header(in);
    if (!ff::is_prime(h.p)) parse_error("SRMAT header: p is not prime");
    return read_body(in, h, ff::Field::create(h.p, static_cast<int>(h.e)));
}

Matrix read_srmat(std::istream& in, const ff::FieldPtr& field) {
    const Header h = read_header(in);
    if (h.p != field->characteristic() || h.e != static_cast<std::uint64_t>(field->degree()))
        throw Error(ErrorCode::MixedFields, "SRMAT field GF(" + std::to_string(h.p) + "^" + std::to_string(h.e) +
                                                ") does not match GF(" + std::to_string(field->order()) + ")");
    return read_body(in, h, field);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void save_srmat(const fs::path& path, const Matrix& m) { write_text(path, to_srmat(m)); }

Matrix load_srmat(const fs::path& path, const ff::FieldPtr& field) {
    std::istringstream in(read_text(path));
    return read_srmat(in, field);
}

Json bundle_json(const MrLrcCode& code) {
    const Topology& t = code.topo;
    Json j;
    j["format"] = "MRLRC";
    j["version"] = 1;
    j["kind"] = to_string(code.kind);
    j["mode"] = to_string(t.mode);
    j["r"] = t.r;
    j["delta"] = t.delta;
    j["t"] = t.t;
    j["g"] = t.g;
    j["N"] = t.N;
    j["n"] = t.n;
    j["k"] = code.k;
    j["h"] = code.h;
    j["ell"] = code.ell;
    j["p"] = code.tower->p();
    j["s"] = code.tower->s();
    j["m"] = code.tower->m();
    j["modulus"] = code.tower->top().modulus();
    j["a"] = code.a;
    j["beta"] = code.beta;
    j["info_set"] = to_one_based(code.info_set);
    Json mats;
    if (code.G) mats["G"] = "G.srmat";
    mats["H"] = "H.srmat";
    if (code.P) mats["P"] = "P.srmat";
    j["matrices"] = mats;
    return j;
}

fs::path save_bundle(const MrLrcCode& code, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    if (code.G) save_srmat(dir / "G.srmat", *code.G);
    save_srmat(dir / "H.srmat", code.H);
    if (code.P) save_srmat(dir / "P.srmat", *code.P);
    const fs::path path = dir / "code.json";
    write_text(path, dump(bundle_json(code)));
    return path;
}

MrLrcCode load_bundle(const fs::path& json_path) {
    Json j;
    try {
        j = Json::parse(read_text(json_path));
    } catch (const nlohmann::json::parse_error& e) {
        parse_error(std::string("bundle JSON: ") + e.what());
    }
    if (get<std::string>(j, "format") != "MRLRC" || get<int>(j, "version") != 1)
        parse_error("bundle: expected format MRLRC version 1");
    const std::string mode_name = get<std::string>(j, "mode");
    TopologyMode mode;
    if (mode_name == "plain") mode = TopologyMode::Plain;
    else if (mode_name == "availability") mode = TopologyMode::Availability;
    else parse_error("bundle: unknown mode '" + mode_name + "'");

    MrLrcCode code;
    code.kind = parse_kind(get<std::string>(j, "kind"));
    code.topo = make_topology(get<Index>(j, "r"), get<Index>(j, "delta"), get<Index>(j, "t"), get<Index>(j, "g"),
                              get<Index>(j, "N"), mode);
    if (get<Index>(j, "n") != code.topo.n) parse_error("bundle: n disagrees with the topology");
    code.k = get<Index>(j, "k");
    code.h = get<Index>(j, "h");
    code.ell = get<Index>(j, "ell");
    code.plan = plan_field(code.topo, code.kind, code.h);
    const auto p = get<std::uint64_t>(j, "p");
    const auto s = get<int>(j, "s");
    const auto m = get<int>(j, "m");
    if (!ff::is_prime(p) || s < 1 || m < 1) parse_error("bundle: bad field parameters");
    code.tower = ff::FieldTower::create(p, s, m);
    if (get<ff::Poly>(j, "modulus") != code.tower->top().modulus())
        parse_error("bundle: modulus is not the canonical one for GF(" + std::to_string(code.tower->top().order()) + ")");
    code.a = get<std::vector<Elem>>(j, "a");
    code.beta = get<std::vector<Elem>>(j, "beta");
    for (Elem x : code.a) code.tower->top().check(x);
    for (Elem x : code.beta) code.tower->top().check(x);
    code.info_set = from_one_based(get<std::vector<std::int64_t>>(j, "info_set"), code.topo.n);

    const Json mats = get<Json>(j, "matrices");
    const fs::path dir = json_path.parent_path();
    auto rel = [&](const char* key) { return dir / get<std::string>(mats, key); };
    code.H = load_srmat(rel("H"), code.tower->top_ptr());
    if (mats.contains("G")) code.G = load_srmat(rel("G"), code.tower->top_ptr());
    if (mats.contains("P")) code.P = load_srmat(rel("P"), code.tower->base_ptr());

    auto require_shape = [&](const Matrix& M, Index rows, const char* name) {
        if (M.cols() != code.topo.n || M.rows() != rows)
            parse_error(std::string("bundle: ") + name + " has shape " + std::to_string(M.rows()) + "x" +
                        std::to_string(M.cols()));
    };
    require_shape(code.H, code.topo.n - code.k, "H");
    if (code.G) require_shape(*code.G, code.k, "G");
    return code;
}

std::vector<std::optional<Elem>> parse_word(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::optional<Elem>> out;
    std::string tok;
    while (in >> tok) {
        if (tok == "?") out.emplace_back();
        else out.emplace_back(parse_u64(tok, "symbol"));
    }
    return out;
}

std::string format_word(const std::vector<std::optional<Elem>>& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += word[i] ? std::to_string(*word[i]) : "?";
    }
    return out + '\n';
}

std::vector<Elem> parse_vector(const std::string& text) {
    std::vector<Elem> out;
    for (const auto& x : parse_word(text)) {
        if (!x) parse_error("erasure mark not allowed here");
        out.push_back(*x);
    }
    return out;
}

std::string format_vector(const std::vector<Elem>& v) {
    return format_word(std::vector<std::optional<Elem>>(v.begin(), v.end()));
}

Json report_json(const MrReport& report) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["code_id"] = report.code_id;
    j["mode"] = report.mode;
    j["verdict"] = report.pass() ? "pass" : "fail";
    j["patterns_checked"] = report.patterns_checked;
    j["local_sets_checked"] = report.local_sets_checked;
    j["failure_count"] = report.failure_count;
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        Json e;
        e["reason"] = f.reason;
        e["pattern"] = index_set(f.pattern);
        e["minor"] = index_set(f.minor);
        e["rank_defect"] = f.rank_defect;
        failures.push_back(e);
    }
    j["failures"] = failures;
    if (report.ell_exact) j["ell_exact"] = *report.ell_exact;
    if (report.mode == "sampled") {
        j["seed"] = report.seed;
        j["trials"] = report.trials;
        j["rng"] = Rng::kName;
    }
    return j;
}

Json plan_json(const FieldPlan& plan) {
    Json j;
    j["kind"] = to_string(plan.kind);
    j["q_target"] = plan.q_target;
    j["q"] = plan.q;
    j["p"] = plan.p;
    j["e"] = plan.e;
    j["m"] = plan.m;
    if (plan.kind == CodeKind::Pc2) {
        j["ell"] = plan.ell;
        j["s"] = plan.s;
    }
    j["table_formula"] = plan.table_formula;
    j["table_value"] = plan.table_bound.str();
    j["realized_field_size"] = plan.realized.str();
    return j;
}

Json lower_bound_json(const LowerBound& lb) {
    Json j;
    j["regime"] = to_string(lb.regime);
    j["formula"] = lb.formula;
    if (lb.value) {
        j["value"] = lb.value->str();
        j["floor"] = lb.floor->str();
        j["vacuous"] = lb.vacuous;
    }
    return j;
}

Json decode_json(const DecodeResult& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["status"] = r.status == DecodeStatus::Recovered ? "recovered" : "unrecoverable";
    j["locally_repaired"] = r.locally_repaired;
    j["globally_repaired"] = r.globally_repaired;
    j["symbols_read"] = r.symbols_read;
    if (r.status == DecodeStatus::Unrecoverable) j["rank_defect"] = r.rank_defect;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + '\n'; }

}  // namespace mrlrc::io
