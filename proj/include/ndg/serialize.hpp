#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ndg/cat_ops.hpp"

namespace ndg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// scalars: prime elements as decimal strings, cyclotomic elements as arrays
// of "a" / "a/b" rational strings (coefficients mod Phi_N, low degree first)

inline std::string rational_to_string(const mpq_class& v) {
    return v.get_den() == 1 ? v.get_num().get_str() : v.get_str();
}

inline mpq_class rational_from_string(const std::string& s) {
    try {
        mpq_class v(s);
        v.canonicalize();
        return v;
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad rational literal '" + s + "'");
    }
}

inline json scalar_to_json(const Field& f, const Scalar& s) {
    if (f.kind() == FieldKind::prime) return std::to_string(std::get<std::uint64_t>(s));
    json arr = json::array();
    for (const auto& c : std::get<std::vector<mpq_class>>(s)) arr.push_back(rational_to_string(c));
    return arr;
}

inline Scalar scalar_from_json(const Field& f, const json& j) {
    if (f.kind() == FieldKind::prime) {
        require(j.is_string(), errc::parse_error, "prime scalar must be a string");
        return f.from_rational(rational_from_string(j.get<std::string>()));
    }
    require(j.is_array(), errc::parse_error, "cyclotomic scalar must be a coefficient array");
    std::vector<mpq_class> c(static_cast<std::size_t>(f.ext_degree()), mpq_class(0));
    require(j.size() <= c.size(), errc::parse_error, "cyclotomic coefficient array too long");
    for (std::size_t i = 0; i < j.size(); ++i)
        c[i] = rational_from_string(j[i].get<std::string>());
    return Scalar(std::move(c));
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.field(), m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Field& f, const json& j, int rows, int cols,
                               const std::string& where) {
    require(j.is_array() && static_cast<int>(j.size()) == rows, errc::parse_error,
            where + ": expected " + std::to_string(rows) + " rows");
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        require(j[static_cast<std::size_t>(i)].is_array() &&
                    static_cast<int>(j[static_cast<std::size_t>(i)].size()) == cols,
                errc::parse_error, where + ": expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_json(f, j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// field spec

inline json field_spec_to_json(const FieldSpec& s) {
    json j;
    j["kind"] = (s.kind == FieldKind::prime) ? "prime" : "cyclotomic";
    j["N"] = s.N;
    if (s.kind == FieldKind::prime) {
        j["p"] = s.p;
        if (s.q_value) j["q"] = *s.q_value;
    }
    return j;
}

inline FieldSpec field_spec_from_json(const json& j) {
    FieldSpec s;
    require(j.is_object() && j.contains("kind") && j.contains("N"), errc::parse_error,
            "field spec needs kind and N");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "prime")
        s.kind = FieldKind::prime;
    else if (kind == "cyclotomic")
        s.kind = FieldKind::cyclotomic;
    else
        fail(errc::parse_error, "unknown field kind '" + kind + "'");
    s.N = j["N"].get<int>();
    if (s.kind == FieldKind::prime) {
        require(j.contains("p"), errc::parse_error, "prime field spec needs p");
        s.p = j["p"].get<std::uint64_t>();
        if (j.contains("q")) s.q_value = j["q"].get<std::uint64_t>();
    }
    return s;
}

// ---------------------------------------------------------------------------
// complexes and graded maps

inline json complex_to_json(const NComplex& x) {
    json dims = json::object();
    for (auto& [i, dm] : x.space()) dims[std::to_string(i)] = dm;
    json d = json::object();
    for (auto& [i, m] : x.diffs())
        if (!m.is_zero()) d[std::to_string(i)] = matrix_to_json(m);
    return json{{"dims", dims}, {"d", d}};
}

inline NComplex complex_from_json(const Field& f, const json& j, const std::string& name) {
    require(j.is_object() && j.contains("dims"), errc::parse_error,
            "complex '" + name + "' needs dims");
    GradedSpace s;
    for (auto& [k, v] : j["dims"].items()) s[std::stoi(k)] = v.get<int>();
    std::map<int, Matrix> d;
    if (j.contains("d"))
        for (auto& [k, v] : j["d"].items()) {
            int i = std::stoi(k);
            d[i] = matrix_from_json(f, v, dim_at(s, i + 1), dim_at(s, i),
                                    "complex '" + name + "' differential at " + k);
        }
    try {
        return validate_ncomplex(f, std::move(s), std::move(d), name);
    } catch (const Error& e) {
        if (e.code() == errc::parse_error) throw;
        fail(errc::validation_error, std::string(e.what()) + " (complex '" + name + "')");
    }
}

struct NamedMap {
    std::string source, target;
    GradedMap map;
};

inline json map_to_json(const NamedMap& nm) {
    json comps = json::object();
    for (auto& [i, m] : nm.map.components())
        if (!m.is_zero()) comps[std::to_string(i)] = matrix_to_json(m);
    return json{{"source", nm.source},
                {"target", nm.target},
                {"degree", nm.map.degree()},
                {"components", comps}};
}

// ---------------------------------------------------------------------------
// sparse tables: arrays [ldeg, lidx, rdeg, ridx, column]

inline json table_to_json(const Table& t) {
    json arr = json::array();
    for (auto& [k, col] : t) {
        json colj = json::array();
        for (int i = 0; i < col.rows(); ++i) colj.push_back(scalar_to_json(col.field(), col.at(i, 0)));
        arr.push_back(json::array({k[0], k[1], k[2], k[3], colj}));
    }
    return arr;
}

inline Table table_from_json(const Field& f, const json& j, const std::string& where,
                             std::function<int(int)> target_dim) {
    Table t;
    require(j.is_array(), errc::parse_error, where + ": table must be an array of 5-tuples");
    for (const auto& e : j) {
        require(e.is_array() && e.size() == 5, errc::parse_error,
                where + ": each table entry is [ldeg, lidx, rdeg, ridx, column]");
        int ldeg = e[0].get<int>(), lidx = e[1].get<int>();
        int rdeg = e[2].get<int>(), ridx = e[3].get<int>();
        int dim = target_dim(ldeg + rdeg);
        require(static_cast<int>(e[4].size()) == dim, errc::parse_error,
                where + ": column length mismatch");
        Matrix col(f, dim, 1);
        for (int i = 0; i < dim; ++i)
            col.at(i, 0) = scalar_from_json(f, e[4][static_cast<std::size_t>(i)]);
        t[{ldeg, lidx, rdeg, ridx}] = std::move(col);
    }
    return t;
}

// ---------------------------------------------------------------------------
// workspace

struct Workspace {
    FieldSpec spec;
    Field field;
    std::map<std::string, NComplex> complexes;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, std::shared_ptr<const NdgCategory>> categories;
    std::map<std::string, NdgModule> modules;
    std::map<std::string, std::string> module_base;
    std::map<std::string, NdgBimodule> bimodules;
    std::map<std::string, std::pair<std::string, std::string>> bimodule_bases;

    const NComplex& complex_at(const std::string& n) const {
        auto it = complexes.find(n);
        require(it != complexes.end(), errc::unknown_name, "no complex named '" + n + "'");
        return it->second;
    }
    const NamedMap& map_at(const std::string& n) const {
        auto it = maps.find(n);
        require(it != maps.end(), errc::unknown_name, "no map named '" + n + "'");
        return it->second;
    }
    const NdgModule& module_at(const std::string& n) const {
        auto it = modules.find(n);
        require(it != modules.end(), errc::unknown_name, "no module named '" + n + "'");
        return it->second;
    }
    const NdgBimodule& bimodule_at(const std::string& n) const {
        auto it = bimodules.find(n);
        require(it != bimodules.end(), errc::unknown_name, "no bimodule named '" + n + "'");
        return it->second;
    }
    std::shared_ptr<const NdgCategory> category_at(const std::string& n) const {
        auto it = categories.find(n);
        require(it != categories.end(), errc::unknown_name, "no category named '" + n + "'");
        return it->second;
    }
};

inline std::pair<std::string, std::string> split2(const std::string& key) {
    auto pos = key.find('|');
    require(pos != std::string::npos, errc::parse_error, "expected 'a|b' key, got '" + key + "'");
    return {key.substr(0, pos), key.substr(pos + 1)};
}

inline std::tuple<std::string, std::string, std::string> split3(const std::string& key) {
    auto p1 = key.find('|');
    auto p2 = (p1 == std::string::npos) ? std::string::npos : key.find('|', p1 + 1);
    require(p2 != std::string::npos, errc::parse_error, "expected 'a|b|c' key, got '" + key + "'");
    return {key.substr(0, p1), key.substr(p1 + 1, p2 - p1 - 1), key.substr(p2 + 1)};
}

inline Workspace load_workspace(const json& j) {
    require(j.is_object() && j.contains("field"), errc::parse_error, "workspace needs a field");
    Workspace ws;
    ws.spec = field_spec_from_json(j["field"]);
    ws.field = make_field(ws.spec);
    const Field& f = ws.field;

    if (j.contains("complexes"))
        for (auto& [name, cj] : j["complexes"].items())
            ws.complexes.emplace(name, complex_from_json(f, cj, name));

    if (j.contains("maps"))
        for (auto& [name, mj] : j["maps"].items()) {
            require(mj.contains("source") && mj.contains("target") && mj.contains("degree"),
                    errc::parse_error, "map '" + name + "' needs source/target/degree");
            NamedMap nm;
            nm.source = mj["source"].get<std::string>();
            nm.target = mj["target"].get<std::string>();
            const NComplex& src = ws.complex_at(nm.source);
            const NComplex& dst = ws.complex_at(nm.target);
            int deg = mj["degree"].get<int>();
            nm.map = GradedMap(f, deg, src.space(), dst.space());
            if (mj.contains("components"))
                for (auto& [k, v] : mj["components"].items()) {
                    int i = std::stoi(k);
                    nm.map.set(i, matrix_from_json(f, v, dst.dim(i + deg), src.dim(i),
                                                   "map '" + name + "' component " + k));
                }
            ws.maps.emplace(name, std::move(nm));
        }

    if (j.contains("categories"))
        for (auto& [name, cj] : j["categories"].items()) {
            NdgCategory cat;
            cat.field = f;
            require(cj.contains("objects"), errc::parse_error,
                    "category '" + name + "' needs objects");
            for (const auto& o : cj["objects"]) cat.objects.push_back(o.get<std::string>());
            if (cj.contains("hom"))
                for (auto& [key, hj] : cj["hom"].items()) {
                    auto [a, b] = split2(key);
                    cat.hom[{a, b}] = complex_from_json(f, hj, name + ".hom(" + key + ")");
                }
            require(cj.contains("units"), errc::parse_error,
                    "category '" + name + "' needs units");
            for (auto& [obj, uj] : cj["units"].items()) {
                auto it = cat.hom.find({obj, obj});
                int dm = (it != cat.hom.end()) ? it->second.dim(0) : 0;
                Matrix u(f, dm, 1);
                require(static_cast<int>(uj.size()) == dm, errc::parse_error,
                        "unit of " + obj + " has wrong length");
                for (int i = 0; i < dm; ++i)
                    u.at(i, 0) = scalar_from_json(f, uj[static_cast<std::size_t>(i)]);
                cat.unit[obj] = std::move(u);
            }
            if (cj.contains("compose"))
                for (auto& [key, tj] : cj["compose"].items()) {
                    auto [a, b, c] = split3(key);
                    const std::string aa = a, cc = c;
                    NdgCategory* catp = &cat;
                    cat.comp[{a, b, c}] = table_from_json(
                        f, tj, name + ".compose(" + key + ")",
                        [catp, aa, cc](int deg) { return catp->hom_at(aa, cc).dim(deg); });
                }
            try {
                ws.categories.emplace(
                    name, std::make_shared<const NdgCategory>(validate_category(std::move(cat))));
            } catch (const Error& e) {
                if (e.code() == errc::parse_error) throw;
                fail(errc::validation_error,
                     std::string(e.what()) + " (category '" + name + "')");
            }
        }

    if (j.contains("modules"))
        for (auto& [name, mj] : j["modules"].items()) {
            require(mj.contains("base") && mj.contains("side"), errc::parse_error,
                    "module '" + name + "' needs base and side");
            NdgModule m;
            std::string base = mj["base"].get<std::string>();
            m.base = ws.category_at(base);
            std::string side = mj["side"].get<std::string>();
            require(side == "right" || side == "left", errc::parse_error,
                    "module '" + name + "' side must be right or left");
            m.side = (side == "right") ? Side::right : Side::left;
            if (mj.contains("value"))
                for (auto& [obj, vj] : mj["value"].items())
                    m.value.emplace(obj, complex_from_json(f, vj, name + ".value(" + obj + ")"));
            if (mj.contains("action"))
                for (auto& [key, tj] : mj["action"].items()) {
                    auto [a1, a2] = split2(key);
                    NdgModule* mp = &m;
                    std::string a2c = a2;
                    m.act[{a1, a2}] = table_from_json(
                        f, tj, name + ".action(" + key + ")",
                        [mp, a2c](int deg) { return mp->value_at(a2c).dim(deg); });
                }
            try {
                ws.modules.emplace(name, validate_module(std::move(m)));
                ws.module_base[name] = base;
            } catch (const Error& e) {
                if (e.code() == errc::parse_error) throw;
                fail(errc::validation_error, std::string(e.what()) + " (module '" + name + "')");
            }
        }

    if (j.contains("bimodules"))
        for (auto& [name, mj] : j["bimodules"].items()) {
            require(mj.contains("left_base") && mj.contains("right_base"), errc::parse_error,
                    "bimodule '" + name + "' needs left_base and right_base");
            std::string lb = mj["left_base"].get<std::string>();
            std::string rb = mj["right_base"].get<std::string>();
            NdgBimodule m;
            if (mj.contains("value"))
                for (auto& [key, vj] : mj["value"].items()) {
                    auto [a, b] = split2(key);
                    m.value.emplace(std::make_pair(a, b),
                                    complex_from_json(f, vj, name + ".value(" + key + ")"));
                }
            NdgBimodule* mp = &m;
            if (mj.contains("left_action"))
                for (auto& [key, tj] : mj["left_action"].items()) {
                    auto [b1, b2, a] = split3(key);
                    std::string a2 = a, bb = b2;
                    m.lact[{b1, b2, a}] = table_from_json(
                        f, tj, name + ".left_action(" + key + ")",
                        [mp, a2, bb](int deg) { return mp->value_at(a2, bb).dim(deg); });
                }
            if (mj.contains("right_action"))
                for (auto& [key, tj] : mj["right_action"].items()) {
                    auto [a1, a2, b] = split3(key);
                    std::string ac = a2, bc = b;
                    m.ract[{a1, a2, b}] = table_from_json(
                        f, tj, name + ".right_action(" + key + ")",
                        [mp, ac, bc](int deg) { return mp->value_at(ac, bc).dim(deg); });
                }
            try {
                ws.bimodules.emplace(name, validate_bimodule(std::move(m), ws.category_at(lb),
                                                             ws.category_at(rb)));
                ws.bimodule_bases[name] = {lb, rb};
            } catch (const Error& e) {
                if (e.code() == errc::parse_error) throw;
                fail(errc::validation_error,
                     std::string(e.what()) + " (bimodule '" + name + "')");
            }
        }
    return ws;
}

inline Workspace load_workspace_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::parse_error, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
    }
    return load_workspace(j);
}

inline json save_workspace(const Workspace& ws) {
    json j;
    j["field"] = field_spec_to_json(ws.spec);
    if (!ws.complexes.empty()) {
        json cs = json::object();
        for (auto& [name, c] : ws.complexes) cs[name] = complex_to_json(c);
        j["complexes"] = std::move(cs);
    }
    if (!ws.maps.empty()) {
        json ms = json::object();
        for (auto& [name, m] : ws.maps) ms[name] = map_to_json(m);
        j["maps"] = std::move(ms);
    }
    if (!ws.categories.empty()) {
        json cs = json::object();
        for (auto& [name, cat] : ws.categories) {
            json cj;
            cj["objects"] = cat->objects;
            json homj = json::object();
            for (auto& [key, h] : cat->hom)
                homj[key.first + "|" + key.second] = complex_to_json(h);
            cj["hom"] = std::move(homj);
            json units = json::object();
            for (auto& [obj, u] : cat->unit) {
                json arr = json::array();
                for (int i = 0; i < u.rows(); ++i)
                    arr.push_back(scalar_to_json(ws.field, u.at(i, 0)));
                units[obj] = std::move(arr);
            }
            cj["units"] = std::move(units);
            json comps = json::object();
            for (auto& [key, t] : cat->comp)
                comps[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key)] =
                    table_to_json(t);
            cj["compose"] = std::move(comps);
            cs[name] = std::move(cj);
        }
        j["categories"] = std::move(cs);
    }
    if (!ws.modules.empty()) {
        json ms = json::object();
        for (auto& [name, m] : ws.modules) {
            json mj;
            mj["base"] = ws.module_base.at(name);
            mj["side"] = (m.side == Side::right) ? "right" : "left";
            json vals = json::object();
            for (auto& [obj, v] : m.value) vals[obj] = complex_to_json(v);
            mj["value"] = std::move(vals);
            json acts = json::object();
            for (auto& [key, t] : m.act) acts[key.first + "|" + key.second] = table_to_json(t);
            mj["action"] = std::move(acts);
            ms[name] = std::move(mj);
        }
        j["modules"] = std::move(ms);
    }
    if (!ws.bimodules.empty()) {
        json ms = json::object();
        for (auto& [name, m] : ws.bimodules) {
            json mj;
            mj["left_base"] = ws.bimodule_bases.at(name).first;
            mj["right_base"] = ws.bimodule_bases.at(name).second;
            json vals = json::object();
            for (auto& [key, v] : m.value) vals[key.first + "|" + key.second] = complex_to_json(v);
            mj["value"] = std::move(vals);
            json lacts = json::object();
            for (auto& [key, t] : m.lact)
                lacts[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key)] =
                    table_to_json(t);
            mj["left_action"] = std::move(lacts);
            json racts = json::object();
            for (auto& [key, t] : m.ract)
                racts[std::get<0>(key) + "|" + std::get<1>(key) + "|" + std::get<2>(key)] =
                    table_to_json(t);
            mj["right_action"] = std::move(racts);
            ms[name] = std::move(mj);
        }
        j["bimodules"] = std::move(ms);
    }
    return j;
}

} // namespace ndg
