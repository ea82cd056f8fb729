// ndgtool: exact N-complex / NDG-category toolbox.
//
// Subcommands: check, homology, cone, contract, homspace, khom, adjoint,
// verify. Input is a single JSON workspace file; all arithmetic is exact.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "ndg/serialize.hpp"
#include "ndg/verify.hpp"

using namespace ndg;

namespace {

struct GlobalOpts {
    std::string format = "json";
    bool timing = false;
};

void emit(const Report& rep, const GlobalOpts& g) {
    if (g.format == "tsv")
        std::cout << rep.to_tsv();
    else
        std::cout << rep.to_json().dump(2) << "\n";
}

std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NDGTOOL_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string checksum_map(const Field& f, const GradedMap& g) {
    std::string buf;
    for (auto& [i, m] : g.components()) {
        buf += std::to_string(i) + ":";
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) buf += f.to_string(m.at(r, c)) + ",";
    }
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(buf)));
    return hex;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact N-complex and NDG-category computations"};
    app.require_subcommand(1);
    app.fallthrough(true);  // allow --format/--timing after the subcommand
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    app.add_flag("--timing", g.timing, "include wall-clock timing in the report");

    std::string file, cname, mname, srcname, tgtname, xname, yname, bname, flavor = "susp0";
    std::string window = "-4..4", suite, nrange, repro = "ndgtool_repro.json";
    int nshift = 0, trials = 0;
    std::uint64_t seed = default_seed();
    bool all_r = false;

    auto* c_check = app.add_subcommand("check", "load and fully validate a workspace file");
    c_check->add_option("file", file)->required();

    auto* c_hom = app.add_subcommand("homology", "amplitude homology table of a complex");
    c_hom->add_option("file", file)->required();
    c_hom->add_option("--complex", cname)->required();
    c_hom->add_option("--window", window, "degree window a..b");

    auto* c_cone = app.add_subcommand("cone", "mapping cone of a named chain map");
    c_cone->add_option("file", file)->required();
    c_cone->add_option("--map", mname)->required();
    c_cone->add_option("--window", window);

    auto* c_contract =
        app.add_subcommand("contract", "staircase normal form of an acyclic complex");
    c_contract->add_option("file", file)->required();
    c_contract->add_option("--complex", cname)->required();

    auto* c_homspace = app.add_subcommand("homspace", "dimensions of the q-twisted hom complex");
    c_homspace->add_option("file", file)->required();
    c_homspace->add_option("--source", srcname)->required();
    c_homspace->add_option("--target", tgtname)->required();

    auto* c_khom = app.add_subcommand("khom", "homotopy-category hom dimension");
    c_khom->add_option("file", file)->required();
    c_khom->add_option("--source", srcname)->required();
    c_khom->add_option("--target", tgtname)->required();
    c_khom->add_option("--n", nshift);
    c_khom->add_option("--flavor", flavor)->check(CLI::IsMember({"susp0", "susp1"}));

    auto* c_adj = app.add_subcommand("adjoint", "bimodule tensor-hom adjunction verdict");
    c_adj->add_option("file", file)->required();
    c_adj->add_option("--x", xname)->required();
    c_adj->add_option("--bimodule", bname)->required();
    c_adj->add_option("--y", yname)->required();

    auto* c_verify = app.add_subcommand("verify", "run a seeded theorem-verification suite");
    c_verify->add_option("--suite", suite)->required();
    c_verify->add_option("--N", nrange, "N range a..b (suite default when absent)");
    c_verify->add_option("--trials", trials);
    c_verify->add_option("--seed", seed);
    c_verify->add_flag("--all-r", all_r, "also verify every amplitude where r=1 suffices");
    c_verify->add_option("--repro", repro, "failure reproducer path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.seed = seed;
    try {
        if (c_check->parsed()) {
            rep.command = "check " + file;
            Workspace ws = load_workspace_file(file);
            rep.add("parse", true);
            rep.add("validate", true,
                    "complexes=" + std::to_string(ws.complexes.size()) +
                        " maps=" + std::to_string(ws.maps.size()) +
                        " categories=" + std::to_string(ws.categories.size()) +
                        " modules=" + std::to_string(ws.modules.size()) +
                        " bimodules=" + std::to_string(ws.bimodules.size()));
        } else if (c_hom->parsed()) {
            rep.command = "homology --complex " + cname + " --window " + window;
            Workspace ws = load_workspace_file(file);
            const NComplex& x = ws.complex_at(cname);
            auto [lo, hi] = parse_range(window);
            for (int i = lo; i <= hi; ++i)
                for (int r = 1; r <= ws.field.N() - 1; ++r) {
                    HomologySlice h = homology(x, i, r);
                    rep.add("H^" + std::to_string(i) + "_(" + std::to_string(r) + ")", true,
                            "z=" + std::to_string(h.z_dim) + " b=" + std::to_string(h.b_dim) +
                                " h=" + std::to_string(h.h_dim));
                }
        } else if (c_cone->parsed()) {
            rep.command = "cone --map " + mname;
            Workspace ws = load_workspace_file(file);
            const NamedMap& nm = ws.map_at(mname);
            require(nm.map.degree() == 0, errc::bad_arguments, "cone needs a degree-0 map");
            Triangle tr = cone(nm.map, ws.complex_at(nm.source), ws.complex_at(nm.target));
            for (auto& [i, dm] : tr.z.space())
                rep.add("Z^" + std::to_string(i), true, "dim=" + std::to_string(dm));
            auto [lo, hi] = parse_range(window);
            HexagonReport hx = hexagon_report(tr, lo, hi);
            rep.add("hexagon-exact", hx.all_exact,
                    "positions=" + std::to_string(hx.positions.size()));
        } else if (c_contract->parsed()) {
            rep.command = "contract --complex " + cname;
            Workspace ws = load_workspace_file(file);
            Contraction c = contract_acyclic(ws.complex_at(cname));
            for (auto& [start, mult] : c.blocks)
                rep.add("block@" + std::to_string(start), true, "mult=" + std::to_string(mult));
            rep.add("basis-change", true, "fnv1a=" + checksum_map(ws.field, c.basis_change));
        } else if (c_homspace->parsed()) {
            rep.command = "homspace --source " + srcname + " --target " + tgtname;
            Workspace ws = load_workspace_file(file);
            if (ws.modules.count(srcname)) {
                ModuleHom mh = module_hom_complex(ws.module_at(srcname), ws.module_at(tgtname));
                for (auto& [i, dm] : mh.cx.space())
                    rep.add("Hom^" + std::to_string(i), true, "dim=" + std::to_string(dm));
            } else {
                NComplex h = hom_complex(ws.complex_at(srcname), ws.complex_at(tgtname));
                for (auto& [i, dm] : h.space())
                    rep.add("Hom^" + std::to_string(i), true, "dim=" + std::to_string(dm));
            }
        } else if (c_khom->parsed()) {
            rep.command = "khom --source " + srcname + " --target " + tgtname + " --n " +
                          std::to_string(nshift) + " --flavor " + flavor;
            Workspace ws = load_workspace_file(file);
            KhomFlavor fl = (flavor == "susp0") ? KhomFlavor::susp0 : KhomFlavor::susp1;
            int dim = 0;
            if (ws.modules.count(srcname))
                dim = khom_module(ws.module_at(srcname), ws.module_at(tgtname), nshift, fl);
            else
                dim = khom_dim(ws.complex_at(srcname), ws.complex_at(tgtname), nshift, fl);
            rep.add("khom", true, "dim=" + std::to_string(dim));
        } else if (c_adj->parsed()) {
            rep.command = "adjoint --x " + xname + " --bimodule " + bname + " --y " + yname;
            Workspace ws = load_workspace_file(file);
            AdjunctionReport ar =
                adjunction_check(ws.module_at(xname), ws.bimodule_at(bname), ws.module_at(yname));
            rep.add("alpha-dims-match", ar.dims_match);
            rep.add("alpha-invertible", ar.invertible);
            rep.add("alpha-chain-commutes", ar.chain_commutes);
            rep.add("chain-map-sets", ar.lhs_z0 == ar.rhs_z0,
                    "lhs=" + std::to_string(ar.lhs_z0) + " rhs=" + std::to_string(ar.rhs_z0));
            rep.add("homotopy-classes", ar.lhs_h0 == ar.rhs_h0,
                    "lhs=" + std::to_string(ar.lhs_h0) + " rhs=" + std::to_string(ar.rhs_h0));
        } else if (c_verify->parsed()) {
            SuiteOpts opts;
            opts.seed = seed;
            opts.trials = trials;
            opts.all_r = all_r;
            opts.repro_path = repro;
            if (!nrange.empty()) {
                auto [lo, hi] = parse_range(nrange);
                opts.n_lo = lo;
                opts.n_hi = hi;
            }
            rep = run_verify_suite(suite, opts);
            rep.seed = seed;
        }
    } catch (const Error& e) {
        rep.add(errc_name(e.code()), false, e.what());
        bool usage = e.code() == errc::parse_error || e.code() == errc::bad_arguments ||
                     e.code() == errc::unknown_suite || e.code() == errc::unknown_name;
        rep.with_timing = g.timing;
        emit(rep, g);
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        rep.add("error", false, e.what());
        emit(rep, g);
        return 2;
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.with_timing = g.timing;
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    emit(rep, g);
    return rep.all_pass() ? 0 : 1;
}
