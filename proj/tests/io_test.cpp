#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "mrlrc/error.hpp"
#include "mrlrc/io.hpp"
#include "mrlrc/rng.hpp"

using namespace mrlrc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mrlrc_io_test_" + name);
    fs::remove_all(dir);
    return dir;
}

Matrix random_matrix(const ff::FieldPtr& F, Index r, Index c, Rng& rng) {
    std::vector<Elem> d(r * c);
    for (auto& x : d) x = rng.below(F->order());
    return Matrix(F, r, c, d);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidInput;
}

}  // namespace

TEST(Srmat, HeaderAndRows) {
    const auto F = ff::Field::create(3, 2);
    const Matrix M = Matrix::from_rows(F, {{0, 1, 8}, {4, 5, 2}});
    EXPECT_EQ(io::to_srmat(M), "srmat p=3 e=2 rows=2 cols=3\n0 1 8\n4 5 2\n");
}

TEST(Srmat, RoundTripIsExact) {
    Rng rng(4);
    for (auto [p, e] : {std::pair{2, 1}, {2, 8}, {3, 5}, {5, 2}, {7, 1}, {2, 24}}) {
        const auto F = ff::Field::create(p, e);
        const Matrix M = random_matrix(F, 3, 7, rng);
        const std::string text = io::to_srmat(M);
        std::istringstream in(text);
        const Matrix back = io::read_srmat(in);
        EXPECT_TRUE(back.field().same_as(*F));
        EXPECT_EQ(back, M);
        EXPECT_EQ(io::to_srmat(back), text);
    }
}

TEST(Srmat, EmptyShapes) {
    const auto F = ff::Field::create(5, 1);
    std::istringstream in(io::to_srmat(Matrix(F, 0, 4)));
    const Matrix back = io::read_srmat(in);
    EXPECT_EQ(back.rows(), 0u);
    EXPECT_EQ(back.cols(), 4u);
}

TEST(Srmat, MalformedInputRejected) {
    const auto F = ff::Field::create(3, 1);
    for (const char* text : {"", "matrix p=3 e=1 rows=1 cols=1\n0\n", "srmat p=3 e=1 rows=2 cols=2\n0 1\n",
                             "srmat p=3 e=1 rows=1 cols=2\n0 1 2\n", "srmat p=3 e=1 rows=1 cols=2\n0 3\n",
                             "srmat p=3 e=1 rows=1 cols=2\n0 x\n", "srmat p=4 e=1 rows=0 cols=0\n",
                             "srmat p=3 e=1 rows=1 cols=1\n1\n2\n"}) {
        std::istringstream in(text);
        EXPECT_EQ(code_of([&] { io::read_srmat(in); }), ErrorCode::ParseError) << text;
    }
    std::istringstream in("srmat p=3 e=2 rows=0 cols=0\n");
    EXPECT_EQ(code_of([&] { io::read_srmat(in, F); }), ErrorCode::MixedFields);
}

TEST(Bundle, RoundTripEveryKind) {
    const std::vector<MrLrcCode> codes = {
        construct_gen(make_topology(2, 2, 1, 2, 2), 5),
        construct_gen(make_topology(3, 2, 2, 2, 2, TopologyMode::Plain), 6),
        construct_pc1(make_topology(2, 2, 1, 2, 2), 2),
        construct_pc2(make_topology(2, 2, 1, 2, 1), 1),
    };
    int i = 0;
    for (const MrLrcCode& code : codes) {
        const fs::path dir = scratch("rt" + std::to_string(i++));
        const fs::path json = io::save_bundle(code, dir);
        const MrLrcCode back = io::load_bundle(json);
        EXPECT_EQ(back.kind, code.kind);
        EXPECT_EQ(back.topo.n, code.topo.n);
        EXPECT_EQ(back.topo.mode, code.topo.mode);
        EXPECT_EQ(back.k, code.k);
        EXPECT_EQ(back.h, code.h);
        EXPECT_EQ(back.ell, code.ell);
        EXPECT_EQ(back.a, code.a);
        EXPECT_EQ(back.beta, code.beta);
        EXPECT_EQ(back.H, code.H);
        EXPECT_EQ(back.G.has_value(), code.G.has_value());
        if (code.G) EXPECT_EQ(*back.G, *code.G);
        EXPECT_EQ(back.P.has_value(), code.P.has_value());
        if (code.P) EXPECT_EQ(*back.P, *code.P);
        EXPECT_TRUE(back.tower->top().same_as(code.tower->top()));
        EXPECT_EQ(io::dump(io::bundle_json(back)), io::read_text(json));
        fs::remove_all(dir);
    }
}

TEST(Bundle, SavedBytesAreStable) {
    const MrLrcCode code = construct_pc1(make_topology(2, 2, 1, 2, 2), 1);
    const fs::path a = scratch("stable_a"), b = scratch("stable_b");
    io::save_bundle(code, a);
    io::save_bundle(construct_pc1(make_topology(2, 2, 1, 2, 2), 1), b);
    for (const char* f : {"code.json", "H.srmat", "P.srmat"}) EXPECT_EQ(io::read_text(a / f), io::read_text(b / f));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Bundle, CorruptedMatrixFailsVerification) {
    const MrLrcCode code = construct_gen(make_topology(2, 2, 1, 2, 2), 5);
    const fs::path dir = scratch("corrupt");
    const fs::path json = io::save_bundle(code, dir);
    io::save_srmat(dir / "G.srmat", code.G->with_entry(0, 0, 0));
    const MrReport rep = verify_mr_exhaustive(io::load_bundle(json));
    EXPECT_FALSE(rep.pass());
    EXPECT_FALSE(rep.failures.empty());
    fs::remove_all(dir);
}

TEST(Bundle, BadInputsRejected) {
    const MrLrcCode code = construct_pc1(make_topology(2, 2, 1, 2, 2), 1);
    const fs::path dir = scratch("bad");
    const fs::path json = io::save_bundle(code, dir);
    EXPECT_EQ(code_of([&] { io::load_bundle(dir / "missing.json"); }), ErrorCode::IoError);
    io::write_text(dir / "broken.json", "{");
    EXPECT_EQ(code_of([&] { io::load_bundle(dir / "broken.json"); }), ErrorCode::ParseError);
    auto j = io::bundle_json(code);
    j.erase("kind");
    io::write_text(dir / "nokind.json", io::dump(j));
    EXPECT_EQ(code_of([&] { io::load_bundle(dir / "nokind.json"); }), ErrorCode::ParseError);
    j = io::bundle_json(code);
    j["modulus"] = std::vector<int>{2, 0, 0, 0, 1};
    io::write_text(dir / "mod.json", io::dump(j));
    EXPECT_EQ(code_of([&] { io::load_bundle(dir / "mod.json"); }), ErrorCode::ParseError);
    j = io::bundle_json(code);
    j["k"] = code.k + 1;
    io::write_text(dir / "k.json", io::dump(j));
    EXPECT_EQ(code_of([&] { io::load_bundle(dir / "k.json"); }), ErrorCode::ParseError);
    fs::remove_all(dir);
}

TEST(Words, ErasureMarks) {
    const auto w = io::parse_word("3 ? 0\n12 ?");
    ASSERT_EQ(w.size(), 5u);
    EXPECT_EQ(*w[0], 3u);
    EXPECT_FALSE(w[1]);
    EXPECT_EQ(*w[3], 12u);
    EXPECT_EQ(io::format_word(w), "3 ? 0 12 ?\n");
    EXPECT_EQ(io::parse_vector("1 2 3"), (std::vector<Elem>{1, 2, 3}));
    EXPECT_THROW(io::parse_vector("1 ?"), Error);
    EXPECT_THROW(io::parse_word("1 -2"), Error);
}

TEST(Reports, JsonShape) {
    const MrLrcCode code = construct_gen(make_topology(2, 2, 1, 2, 2), 5);
    const MrReport bad = verify_mr_exhaustive([&] {
        MrLrcCode c = code;
        c.G = c.G->with_entry(0, 0, 0);
        return c;
    }());
    const auto j = io::report_json(bad);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["verdict"], "fail");
    EXPECT_FALSE(j.contains("wall_time"));
    ASSERT_FALSE(j["failures"].empty());
    for (const auto& f : j["failures"])
        for (const auto& x : f["pattern"]) EXPECT_GE(x.get<int>(), 1);
    const auto s = io::report_json(verify_mr_sampled(code, 50, 9));
    EXPECT_EQ(s["seed"], 9);
    EXPECT_EQ(s["rng"], Rng::kName);
    EXPECT_EQ(io::dump(s), io::dump(io::report_json(verify_mr_sampled(code, 50, 9))));
}
