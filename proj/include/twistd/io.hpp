#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "twistd/bicrossed.hpp"
#include "twistd/cochain.hpp"
#include "twistd/exponent.hpp"
#include "twistd/group.hpp"
#include "twistd/twisted_double.hpp"
#include "twistd/axioms.hpp"

namespace twistd {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json group_to_json(const GroupTable& G) {
    json j;
    j["order"] = G.n;
    json table = json::array();
    for (int i = 0; i < G.n; ++i) {
        json row = json::array();
        for (int k = 0; k < G.n; ++k) row.push_back(G.mul(i, k));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["names"] = G.names;
    return j;
}

inline GroupTable group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw IoError("group file: missing order/table");
    GroupTable G;
    G.n = j["order"].get<int>();
    if (G.n < 1) throw IoError("group file: bad order");
    const json& table = j["table"];
    if (!table.is_array() || static_cast<int>(table.size()) != G.n)
        throw IoError("group file: table has wrong shape");
    G.mult.resize(static_cast<size_t>(G.n) * G.n);
    for (int i = 0; i < G.n; ++i) {
        const json& row = table[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != G.n)
            throw IoError("group file: table row has wrong length");
        for (int k = 0; k < G.n; ++k) {
            int v = row[static_cast<size_t>(k)].get<int>();
            if (v < 0 || v >= G.n) throw IoError("group file: entry out of range");
            G.mult[static_cast<size_t>(i) * G.n + k] = v;
        }
    }
    if (j.contains("names")) {
        if (!j["names"].is_array() || static_cast<int>(j["names"].size()) != G.n)
            throw IoError("group file: names have wrong length");
        G.names = j["names"].get<std::vector<std::string>>();
    }
    try {
        G.compute_inverses();
        G.default_names();
        G.validate();
    } catch (const std::exception& e) {
        throw IoError(std::string("group file: ") + e.what());
    }
    return G;
}

inline Phase phase_from_json(const json& j) {
    if (!j.is_string()) throw IoError("phase: expected a \"p/q\" string");
    auto p = Phase::parse(j.get<std::string>());
    if (!p) throw IoError("phase: cannot parse " + j.get<std::string>());
    return *p;
}

// Sparse cocycle document: omitted triples carry phase 0.
inline json cocycle_to_json(const Cochain3& w, const std::string& kind = "raw") {
    json j;
    j["kind"] = kind;
    j["group_ref"] = group_to_json(w.group);
    json entries = json::array();
    int n = w.group.n;
    for (ElemId a = 0; a < n; ++a)
        for (ElemId b = 0; b < n; ++b)
            for (ElemId c = 0; c < n; ++c) {
                const Phase& p = w.at(a, b, c);
                if (!p.is_zero()) entries.push_back(json::array({a, b, c, p.str()}));
            }
    j["entries"] = std::move(entries);
    return j;
}

inline Cochain3 cocycle_from_json(const json& j, std::optional<GroupTable> group = std::nullopt) {
    if (!j.is_object() || !j.contains("entries")) throw IoError("cocycle file: missing entries");
    if (!group) {
        if (!j.contains("group_ref") || !j["group_ref"].is_object())
            throw IoError("cocycle file: group_ref missing (paths must be resolved by the caller)");
        group = group_from_json(j["group_ref"]);
    }
    Cochain3 w(std::move(*group));
    for (const json& e : j["entries"]) {
        if (!e.is_array() || e.size() != 4) throw IoError("cocycle file: bad entry");
        int a = e[0].get<int>(), b = e[1].get<int>(), c = e[2].get<int>();
        if (a < 0 || a >= w.group.n || b < 0 || b >= w.group.n || c < 0 || c >= w.group.n)
            throw IoError("cocycle file: index out of range");
        w.set(phase_from_json(e[3]), a, b, c);
    }
    if (!w.is_normalized()) throw IoError("cocycle file: cochain is not normalized");
    return w;
}

inline json cochain2_to_json(const Cochain2& t, const std::string& kind = "witness") {
    json j;
    j["kind"] = kind;
    j["group_ref"] = group_to_json(t.group);
    json entries = json::array();
    for (ElemId a = 0; a < t.group.n; ++a)
        for (ElemId b = 0; b < t.group.n; ++b) {
            const Phase& p = t.at(a, b);
            if (!p.is_zero()) entries.push_back(json::array({a, b, p.str()}));
        }
    j["entries"] = std::move(entries);
    return j;
}

inline json matched_pair_to_json(const MatchedPair& mp) {
    json j;
    j["F_ref"] = group_to_json(mp.F);
    j["Gamma_ref"] = group_to_json(mp.Gamma);
    json af = json::array(), ag = json::array();
    for (ElemId g = 0; g < mp.Gamma.n; ++g) {
        json rf = json::array(), rg = json::array();
        for (ElemId x = 0; x < mp.F.n; ++x) {
            rf.push_back(mp.tr(g, x));
            rg.push_back(mp.tl(g, x));
        }
        af.push_back(std::move(rf));
        ag.push_back(std::move(rg));
    }
    j["act_on_F"] = std::move(af);
    j["act_on_Gamma"] = std::move(ag);
    return j;
}

inline MatchedPair matched_pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("F_ref") || !j.contains("Gamma_ref") ||
        !j.contains("act_on_F") || !j.contains("act_on_Gamma"))
        throw IoError("matched-pair file: missing fields");
    MatchedPair mp;
    mp.F = group_from_json(j["F_ref"]);
    mp.Gamma = group_from_json(j["Gamma_ref"]);
    auto read_table = [&](const json& tj, int range, std::vector<ElemId>& out) {
        if (!tj.is_array() || static_cast<int>(tj.size()) != mp.Gamma.n)
            throw IoError("matched-pair file: action table shape");
        out.resize(static_cast<size_t>(mp.Gamma.n) * mp.F.n);
        for (int g = 0; g < mp.Gamma.n; ++g) {
            const json& row = tj[static_cast<size_t>(g)];
            if (!row.is_array() || static_cast<int>(row.size()) != mp.F.n)
                throw IoError("matched-pair file: action row shape");
            for (int x = 0; x < mp.F.n; ++x) {
                int v = row[static_cast<size_t>(x)].get<int>();
                if (v < 0 || v >= range) throw IoError("matched-pair file: action out of range");
                out[static_cast<size_t>(g) * mp.F.n + x] = v;
            }
        }
    };
    read_table(j["act_on_F"], mp.F.n, mp.act_on_F);
    read_table(j["act_on_Gamma"], mp.Gamma.n, mp.act_on_Gamma);
    mp.check_units();
    return mp;
}

// Sparse extension datum: sigma entries keyed [x, x', g], tau entries [g, g', x].
inline json datum_to_json(const MatchedPair& mp, const ExtensionDatum& d) {
    json j;
    json sig = json::array(), tau = json::array();
    for (ElemId x = 0; x < mp.F.n; ++x)
        for (ElemId x2 = 0; x2 < mp.F.n; ++x2)
            for (ElemId g = 0; g < mp.Gamma.n; ++g) {
                Phase p = d.sig(mp, x, x2, g);
                if (!p.is_zero()) sig.push_back(json::array({x, x2, g, p.str()}));
            }
    for (ElemId g = 0; g < mp.Gamma.n; ++g)
        for (ElemId g2 = 0; g2 < mp.Gamma.n; ++g2)
            for (ElemId x = 0; x < mp.F.n; ++x) {
                Phase p = d.ta(mp, g, g2, x);
                if (!p.is_zero()) tau.push_back(json::array({g, g2, x, p.str()}));
            }
    j["sigma"] = std::move(sig);
    j["tau"] = std::move(tau);
    return j;
}

inline ExtensionDatum datum_from_json(const json& j, const MatchedPair& mp) {
    if (!j.is_object() || !j.contains("sigma") || !j.contains("tau"))
        throw IoError("datum file: missing sigma/tau");
    ExtensionDatum d = ExtensionDatum::trivial(mp);
    for (const json& e : j["sigma"]) {
        if (!e.is_array() || e.size() != 4) throw IoError("datum file: bad sigma entry");
        int x = e[0].get<int>(), x2 = e[1].get<int>(), g = e[2].get<int>();
        if (x < 0 || x >= mp.F.n || x2 < 0 || x2 >= mp.F.n || g < 0 || g >= mp.Gamma.n)
            throw IoError("datum file: sigma index out of range");
        d.set_sigma(mp, x, x2, g, phase_from_json(e[3]));
    }
    for (const json& e : j["tau"]) {
        if (!e.is_array() || e.size() != 4) throw IoError("datum file: bad tau entry");
        int g = e[0].get<int>(), g2 = e[1].get<int>(), x = e[2].get<int>();
        if (g < 0 || g >= mp.Gamma.n || g2 < 0 || g2 >= mp.Gamma.n || x < 0 || x >= mp.F.n)
            throw IoError("datum file: tau index out of range");
        d.set_tau(mp, g, g2, x, phase_from_json(e[3]));
    }
    return d;
}

// Debug serialization used in reports and golden tests.
inline json mono_to_json(const Monomial& m) {
    const GroupTable& G = m.ctx->group();
    json out = json::array();
    for (const auto& [gkey, t] : m.terms) {
        auto grade = m.decode(gkey);
        auto part = m.decode(t.part);
        json rec;
        json gr = json::array(), pt = json::array();
        for (int i = 0; i < m.degree; ++i) {
            gr.push_back(G.name(grade[static_cast<size_t>(i)]));
            pt.push_back(G.name(part[static_cast<size_t>(i)]));
        }
        rec["grade"] = std::move(gr);
        rec["part"] = std::move(pt);
        rec["phase"] = t.phase.str();
        out.push_back(std::move(rec));
    }
    return out;
}

inline const char* status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

inline json report_to_json(const ExponentReport& r) {
    json j;
    j["schema"] = 1;
    j["instance"] = r.instance;
    j["group_order"] = r.group_order;
    j["exp_G"] = r.exp_G;
    j["beta_order"] = r.beta_order;
    j["beta_order_normalized"] = r.beta_order_normalized;
    j["e_omega_cyclic"] = r.e_omega_cyclic;
    j["exp_omega_G"] = r.exp_omega_G;
    j["routes"] = {{"pi", r.route_pi}, {"ribbon", r.route_ribbon}, {"monodromy", r.route_monodromy}};
    j["exp_double"] = r.exp_double;
    if (r.e_omega_global)
        j["e_omega_global"] = *r.e_omega_global;
    else
        j["e_omega_global"] = nullptr;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["holds"] = c.status == CheckStatus::Pass;
        cj["status"] = status_str(c.status);
        if (c.is_division) {
            cj["dividend"] = c.dividend;
            cj["divisor"] = c.divisor;
        } else {
            cj["dividend"] = nullptr;
            cj["divisor"] = nullptr;
        }
        if (!c.note.empty()) cj["note"] = c.note;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["events"] = r.events;
    return j;
}

inline json axiom_report_to_json(const AxiomReport& r) {
    json arr = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        arr.push_back(std::move(cj));
    }
    return arr;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace twistd
