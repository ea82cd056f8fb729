#include <catch2/catch_amalgamated.hpp>

#include "ndg/serialize.hpp"
#include "ndg/verify.hpp"
#include "test_util.hpp"

using namespace ndg;
using namespace ndgtest;

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

TEST_CASE("minimal workspace: field only") {
    json j;
    j["field"] = json{{"kind", "cyclotomic"}, {"N", 3}};
    Workspace ws = load_workspace(j);
    CHECK(ws.field.N() == 3);
    CHECK(ws.complexes.empty());
}

TEST_CASE("fixture loads and the block is contractible") {
    Workspace ws = load_workspace_file(std::string(FIXTURE_DIR) + "/basic.json");
    const NComplex& x = ws.complex_at("X");
    for (int i = -1; i <= 3; ++i)
        for (int r = 1; r <= 2; ++r) CHECK(homology(x, i, r).h_dim == 0);
    CHECK(is_acyclic(x, true));
    const NamedMap& f = ws.map_at("F");
    CHECK(is_chain_map(f.map, x, x));
}

TEST_CASE("invalid complex reports the name and degree") {
    try {
        load_workspace_file(std::string(FIXTURE_DIR) + "/invalid.json");
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.code() == errc::validation_error);
        std::string msg = e.what();
        CHECK(msg.find("BAD") != std::string::npos);
        CHECK(msg.find("degree 0") != std::string::npos);
    }
}

TEST_CASE("parse errors are distinguished from validation errors") {
    json j;
    j["field"] = json{{"kind", "prime"}, {"p", 7}, {"N", 3}};
    j["complexes"]["X"] = json{{"dims", {{"0", 1}}}, {"d", json::object()}};
    j["complexes"]["X"]["dims"]["0"] = 1;
    Workspace ws = load_workspace(j);
    CHECK(ws.complex_at("X").dim(0) == 1);

    json bad = j;
    bad["complexes"]["X"]["d"]["0"] = json::array();  // wrong row count (needs 0 rows... empty ok)
    CHECK_NOTHROW(load_workspace(bad));

    json bad2 = j;
    bad2["field"]["kind"] = "galois";
    CHECK_THROWS_AS(load_workspace(bad2), Error);
}

TEST_CASE("workspace round-trips byte-identically") {
    Field f = prime_field(7, 3, 2);
    Workspace ws;
    ws.spec = f.spec();
    ws.field = f;
    ws.complexes.emplace("X", block_complex(f, {0, 3, 2}));
    ws.complexes.emplace("K", unit_complex(f));
    NamedMap nm;
    nm.source = "X";
    nm.target = "X";
    nm.map = identity_map(f, ws.complex_at("X").space());
    ws.maps.emplace("Id", std::move(nm));
    auto cat = std::make_shared<const NdgCategory>(truncated_polynomial_category(f));
    ws.categories.emplace("T", cat);
    ws.modules.emplace("R", representable(cat, "*", Side::right));
    ws.module_base["R"] = "T";
    ws.bimodules.emplace("A", regular_bimodule(cat));
    ws.bimodule_bases["A"] = {"T", "T"};

    json first = save_workspace(ws);
    Workspace ws2 = load_workspace(first);
    json second = save_workspace(ws2);
    CHECK(first == second);
    CHECK(first.dump() == second.dump());

    // loaded workspace behaves identically
    CHECK(ws2.complex_at("X") == ws.complex_at("X"));
    CHECK(khom_module(ws2.module_at("R"), ws2.module_at("R"), 0, KhomFlavor::susp0) ==
          khom_module(ws.module_at("R"), ws.module_at("R"), 0, KhomFlavor::susp0));
}

TEST_CASE("cyclotomic scalars serialize as rational coefficient arrays") {
    Field f = cyc_field(4);
    Workspace ws;
    ws.spec = f.spec();
    ws.field = f;
    GradedSpace s{{0, 1}, {1, 1}};
    std::map<int, Matrix> d;
    Matrix m(f, 1, 1);
    m.at(0, 0) = f.mul(f.q(), f.from_rational(mpq_class(1, 2)));  // q/2
    d[0] = m;
    ws.complexes.emplace("X", validate_ncomplex(f, s, d));
    json j = save_workspace(ws);
    CHECK(j["complexes"]["X"]["d"]["0"][0][0] == json::array({"0", "1/2"}));
    Workspace ws2 = load_workspace(j);
    CHECK(ws2.complex_at("X") == ws.complex_at("X"));
}

TEST_CASE("verify suite reports are deterministic for a fixed seed") {
    SuiteOpts opts;
    opts.seed = 12345;
    opts.n_lo = 2;
    opts.n_hi = 3;
    opts.trials = 10;
    opts.repro_path.clear();
    Report a = run_verify_suite("hexagon", opts);
    Report b = run_verify_suite("hexagon", opts);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.all_pass());
}

TEST_CASE("unknown suite raises UnknownSuite") {
    SuiteOpts opts;
    try {
        run_verify_suite("nope", opts);
        FAIL("expected UnknownSuite");
    } catch (const Error& e) {
        CHECK(e.code() == errc::unknown_suite);
    }
}

TEST_CASE("unknown names raise UnknownName") {
    json j;
    j["field"] = json{{"kind", "prime"}, {"p", 7}, {"N", 3}};
    Workspace ws = load_workspace(j);
    CHECK_THROWS_AS(ws.complex_at("missing"), Error);
    CHECK_THROWS_AS(ws.module_at("missing"), Error);
}
