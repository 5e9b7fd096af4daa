// Batch front end: builds twisted-double instances from builtin descriptors
// or files, runs the exponent reports and theorem batteries, and emits
// machine-readable results. Exit codes: 0 = all checks pass, 1 = input or
// usage error, 2 = a theorem check failed (counterexample evidence).

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include "twistd/twistd.hpp"

using namespace twistd;

namespace {

struct Options {
    long long solver_cap = 12;
    uint64_t seed = 12345;
    int jobs = 1;
    std::string format = "json";
    Phase theta_fault{};
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

Phase parse_phase_or_throw(const std::string& s, const std::string& what) {
    auto p = Phase::parse(s);
    if (!p) throw IoError(what + ": cannot parse phase '" + s + "'");
    return *p;
}

GroupTable builtin_group_or_throw(const std::string& name) {
    auto g = builtin_group(name);
    if (!g) throw IoError("unknown builtin group '" + name + "'");
    return std::move(*g);
}

Instance instance_from_files(const std::string& group_path, const std::string& cocycle_path) {
    json cj = load_json_file(cocycle_path);
    std::optional<GroupTable> G;
    if (!group_path.empty()) G = group_from_json(load_json_file(group_path));
    if (!G && cj.contains("group_ref") && cj["group_ref"].is_string())
        G = group_from_json(load_json_file(cj["group_ref"].get<std::string>()));
    Cochain3 w = cocycle_from_json(cj, std::move(G));
    if (!is_cocycle3(w)) throw IoError(cocycle_path + ": not a 3-cocycle");
    return {group_path.empty() ? cocycle_path : group_path + "+" + cocycle_path,
            Context{std::move(w)}, std::nullopt};
}

Instance instance_bicrossed_files(const std::string& pair_path, const std::string& datum_path) {
    MatchedPair mp = matched_pair_from_json(load_json_file(pair_path));
    ExtensionDatum d = datum_from_json(load_json_file(datum_path), mp);
    try {
        return instance_bicrossed(pair_path + ":" + datum_path, mp, d);
    } catch (const std::runtime_error& e) {
        throw IoError(std::string("bicrossed instance rejected: ") + e.what());
    }
}

// Builtin descriptor grammar:
//   cyclic:N [zeta:p/q]
//   trivial:<group>
//   inflated:<group>:<m>:<zeta>[:qK]
//   bicrossed:<pair file>:<datum file>
std::vector<Instance> parse_instances(const std::vector<std::string>& tokens) {
    std::vector<Instance> out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        auto parts = split(tok, ':');
        if (parts[0] == "cyclic" && parts.size() == 2) {
            int n = std::stoi(parts[1]);
            Phase zeta;
            if (i + 1 < tokens.size() && tokens[i + 1].rfind("zeta:", 0) == 0) {
                zeta = parse_phase_or_throw(tokens[i + 1].substr(5), tok);
                ++i;
            }
            out.push_back(instance_cyclic(n, zeta));
        } else if (parts[0] == "trivial" && parts.size() == 2) {
            out.push_back(instance_trivial(parts[1], builtin_group_or_throw(parts[1])));
        } else if (parts[0] == "inflated" && (parts.size() == 4 || parts.size() == 5)) {
            GroupTable G = builtin_group_or_throw(parts[1]);
            int m = std::stoi(parts[2]);
            Phase zeta = parse_phase_or_throw(parts[3], tok);
            int which = 0;
            if (parts.size() == 5) {
                if (parts[4].size() < 2 || parts[4][0] != 'q') throw IoError("bad quotient tag in " + tok);
                which = std::stoi(parts[4].substr(1));
            }
            out.push_back(instance_inflated(parts[1], G, m, zeta, which));
        } else if (parts[0] == "bicrossed" && parts.size() == 3) {
            out.push_back(instance_bicrossed_files(parts[1], parts[2]));
        } else {
            throw IoError("cannot parse instance descriptor '" + tok + "'");
        }
    }
    return out;
}

struct InstanceResult {
    ExponentReport report;
    AxiomReport axioms;
};

std::vector<InstanceResult> run_instances(std::vector<Instance>& instances, const Options& opt) {
    for (auto& inst : instances) inst.ctx.theta_fault = opt.theta_fault;
    std::vector<InstanceResult> results(instances.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
            const Instance& inst = instances[i];
            BatteryOptions bopts;
            bopts.solver_cap = opt.solver_cap;
            bopts.instance_name = inst.name;
            results[i].report = theorem_battery(inst.ctx, bopts, inst.fiber);
            results[i].axioms = axiom_suite(inst.ctx, exp_omega_modified(inst.ctx.omega));
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

void print_report_table(std::ostream& os, const InstanceResult& r) {
    os << "instance " << r.report.instance << "\n"
       << "  |G|=" << r.report.group_order << " exp G=" << r.report.exp_G
       << " exp_w G=" << r.report.exp_omega_G << " exp D^wG=" << r.report.exp_double
       << " (pi=" << r.report.route_pi << " ribbon=" << r.report.route_ribbon
       << " monodromy=" << r.report.route_monodromy << ")"
       << " beta=" << r.report.beta_order;
    if (r.report.e_omega_global) os << " e(w)=" << *r.report.e_omega_global;
    os << "\n";
    for (const auto& c : r.report.checks) {
        os << "  [" << status_str(c.status) << "] " << c.name;
        if (c.is_division) os << " (" << c.divisor << " | " << c.dividend << ")";
        if (!c.note.empty()) os << " -- " << c.note;
        os << "\n";
    }
    os << "  axioms: " << (r.axioms.all_pass() ? "pass" : "FAIL") << "\n";
    for (const auto& c : r.axioms.checks)
        if (!c.pass) os << "    FAIL " << c.name << " " << c.detail << "\n";
    for (const auto& e : r.report.events) os << "  event: " << e << "\n";
}

int cmd_report(std::vector<std::string> tokens, const std::string& group_path,
               const std::string& cocycle_path, bool dump_elements, const Options& opt) {
    std::vector<Instance> instances;
    if (!cocycle_path.empty()) instances.push_back(instance_from_files(group_path, cocycle_path));
    auto more = parse_instances(tokens);
    for (auto& m : more) instances.push_back(std::move(m));
    if (instances.empty()) throw IoError("report: no instances given");
    auto results = run_instances(instances, opt);
    bool failed = false;
    for (const auto& r : results) {
        if (!r.report.all_pass() || !r.axioms.all_pass()) failed = true;
        if (opt.format == "json") {
            json j = report_to_json(r.report);
            j["axioms"] = axiom_report_to_json(r.axioms);
            if (dump_elements) {
                const Context& ctx = instances[&r - results.data()].ctx;
                json elems;
                for (auto kind : {"beta", "u", "v"})
                    elems[kind] = mono_to_json(canonical_element(ctx, kind));
                j["elements"] = std::move(elems);
            }
            std::cout << j.dump() << "\n";
        } else {
            print_report_table(std::cout, r);
        }
    }
    return failed ? 2 : 0;
}

int cmd_verify(std::vector<std::string> tokens, const std::string& corpus_file,
               bool use_default_corpus, bool probe, const Options& opt) {
    std::vector<Instance> instances;
    if (!corpus_file.empty()) {
        std::ifstream in(corpus_file);
        if (!in) throw IoError("cannot open " + corpus_file);
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
        if (tokens.empty() && !use_default_corpus) throw IoError("verify: empty corpus");
    } else if (tokens.empty()) {
        use_default_corpus = true;
    }
    if (use_default_corpus) {
        CorpusOptions copts;
        copts.seed = opt.seed;
        instances = default_corpus(copts);
    }
    auto more = parse_instances(tokens);
    for (auto& m : more) instances.push_back(std::move(m));
    if (instances.empty()) throw IoError("verify: empty corpus");
    auto results = run_instances(instances, opt);

    int counterexamples = 0;
    json rows = json::array();
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        bool ok = r.report.all_pass() && r.axioms.all_pass();
        if (!ok) ++counterexamples;
        if (opt.format == "json") {
            json row;
            row["instance"] = r.report.instance;
            row["group_order"] = r.report.group_order;
            row["exp_G"] = r.report.exp_G;
            row["exp_omega_G"] = r.report.exp_omega_G;
            row["exp_double"] = r.report.exp_double;
            row["battery"] = r.report.all_pass();
            row["axioms"] = r.axioms.all_pass();
            row["events"] = r.report.events;
            rows.push_back(std::move(row));
        } else {
            std::cout << (ok ? "pass  " : "FAIL  ") << r.report.instance << "  |G|="
                      << r.report.group_order << " exp=" << r.report.exp_G
                      << " exp_w=" << r.report.exp_omega_G
                      << " exp_double=" << r.report.exp_double << "\n";
            for (const auto& c : r.report.checks)
                if (c.status == CheckStatus::Fail) std::cout << "      check failed: " << c.name << "\n";
            for (const auto& c : r.axioms.checks)
                if (!c.pass) std::cout << "      axiom failed: " << c.name << " " << c.detail << "\n";
        }
    }

    json probes;
    if (probe) {
        // question probe over the fiber-functor instances
        json qp = json::array();
        for (const auto& inst : instances) {
            if (!inst.fiber) continue;
            auto res = question_probe(inst.ctx.omega, inst.fiber->F, inst.fiber->Gamma,
                                      opt.solver_cap);
            json row;
            row["instance"] = inst.name;
            row["order_G"] = res.order_G;
            row["exp_G"] = res.exp_G;
            row["e_omega"] = res.e_omega ? json(*res.e_omega) : json(nullptr);
            row["divides"] = res.divides ? json(*res.divides) : json(nullptr);
            qp.push_back(std::move(row));
        }
        probes["question_probe"] = std::move(qp);
        auto d4 = d4_exponent_search(opt.seed);
        json dj;
        dj["accepted_cocycles"] = d4.accepted;
        dj["best_exp"] = d4.best_exp;
        dj["witness"] = d4.witness;
        dj["found_exp_8"] = d4.best_exp == 8;
        probes["d4_search"] = std::move(dj);
    }

    if (opt.format == "json") {
        json out;
        out["schema"] = 1;
        out["seed"] = opt.seed;
        out["instances"] = instances.size();
        out["counterexamples"] = counterexamples;
        out["results"] = std::move(rows);
        if (probe) out["probes"] = std::move(probes);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << instances.size() << " instances, " << counterexamples
                  << " counterexamples\n";
        if (probe && probes.contains("d4_search"))
            std::cout << "d4 search: best exp " << probes["d4_search"]["best_exp"]
                      << " (witness: " << probes["d4_search"]["witness"].get<std::string>()
                      << ")\n";
    }
    return counterexamples > 0 ? 2 : 0;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

int cmd_make(const std::vector<std::string>& params, const std::string& out_path,
             const std::string& datum_out, const Options&) {
    if (params.empty()) throw IoError("make: missing kind (group | cocycle | matched-pair)");
    const std::string& kind = params[0];
    if (kind == "group") {
        if (params.size() == 3 && params[1] == "cyclic") {
            emit(group_to_json(make_cyclic(std::stoi(params[2]))), out_path);
        } else if (params.size() == 2) {
            emit(group_to_json(builtin_group_or_throw(params[1])), out_path);
        } else {
            throw IoError("make group: expected 'cyclic N' or a builtin name");
        }
    } else if (kind == "cocycle") {
        if (params.size() == 4 && params[1] == "cyclic") {
            int n = std::stoi(params[2]);
            Phase zeta = parse_phase_or_throw(params[3], "make cocycle");
            emit(cocycle_to_json(cyclic_standard_cocycle(make_cyclic(n), zeta), "cyclic"), out_path);
        } else if (params.size() == 3 && params[1] == "trivial") {
            emit(cocycle_to_json(Cochain3(builtin_group_or_throw(params[2])), "trivial"), out_path);
        } else if (params.size() == 5 && params[1] == "inflated") {
            GroupTable G = builtin_group_or_throw(params[2]);
            int m = std::stoi(params[3]);
            Phase zeta = parse_phase_or_throw(params[4], "make cocycle");
            auto inst = instance_inflated(params[2], G, m, zeta);
            emit(cocycle_to_json(inst.ctx.omega, "inflated"), out_path);
        } else {
            throw IoError("make cocycle: expected 'cyclic N p/q', 'trivial <group>' or "
                          "'inflated <group> <m> <zeta>'");
        }
    } else if (kind == "matched-pair") {
        if (params.size() != 2) throw IoError("make matched-pair: expected a pair name");
        MatchedPair mp;
        if (params[1] == "s3") {
            mp = matched_pair_s3();
        } else if (params[1] == "c2xc5") {
            mp = matched_pair_trivial(make_cyclic(2), make_cyclic(5));
        } else {
            throw IoError("make matched-pair: unknown pair '" + params[1] + "'");
        }
        emit(matched_pair_to_json(mp), out_path);
        if (!datum_out.empty()) write_json_file(datum_out, datum_to_json(mp, ExtensionDatum::trivial(mp)));
    } else {
        throw IoError("make: unknown kind '" + kind + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact exponent engine for twisted Drinfeld doubles"};
    app.require_subcommand(1);
    Options opt;
    std::string fault_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--solver-cap", opt.solver_cap, "max |G| for the global e(w) computation");
        sub->add_option("--seed", opt.seed, "seed for all sampled randomness");
        sub->add_option("--jobs", opt.jobs, "parallel workers across instances");
        sub->add_option("--format", opt.format, "json | table")
            ->check(CLI::IsMember({"json", "table"}));
    };

    auto* report = app.add_subcommand("report", "exponent report per instance");
    std::vector<std::string> report_tokens;
    std::string group_path, cocycle_path;
    report->add_option("instances", report_tokens, "builtin instance descriptors");
    report->add_option("--group", group_path, "group file");
    report->add_option("--cocycle", cocycle_path, "cocycle file");
    bool dump_elements = false;
    report->add_flag("--dump-elements", dump_elements, "include beta/u/v debug serializations");
    add_common(report);

    auto* verify = app.add_subcommand("verify", "theorem battery over a corpus");
    std::vector<std::string> verify_tokens;
    std::string corpus_file;
    bool use_default = false, probe = false;
    verify->add_option("corpus", verify_tokens, "instance descriptors (default corpus if empty)");
    verify->add_option("--corpus-file", corpus_file, "file listing instance descriptors");
    verify->add_flag("--default-corpus", use_default, "include the builtin corpus");
    verify->add_flag("--probe", probe, "run the cohomological question probe and the D4 search");
    verify->add_option("--inject-theta-fault", fault_str,
                       "test hook: perturb theta by a phase to exercise fault detection")
        ->group("");
    add_common(verify);

    auto* make = app.add_subcommand("make", "emit builtin artifacts as files");
    std::vector<std::string> make_params;
    std::string out_path, datum_out;
    make->add_option("params", make_params, "group cyclic N | cocycle cyclic N p/q | matched-pair s3 | ...");
    make->add_option("--out", out_path, "output file (stdout if omitted)");
    make->add_option("--datum-out", datum_out, "also write a trivial extension datum (matched-pair)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!fault_str.empty()) opt.theta_fault = parse_phase_or_throw(fault_str, "--inject-theta-fault");
        if (report->parsed()) return cmd_report(report_tokens, group_path, cocycle_path, dump_elements, opt);
        if (verify->parsed()) return cmd_verify(verify_tokens, corpus_file, use_default, probe, opt);
        if (make->parsed()) return cmd_make(make_params, out_path, datum_out, opt);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
