// Command-line front end: compute power sums and truncated zeta values in
// the canonical text grammar, run named verification suites over parameter
// grids, and emit machine-readable JSON reports.
//
// Exit codes: 0 = all cases pass, 1 = at least one identity failed,
// 2 = usage error (unknown suite, malformed descriptor).

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fqzeta/fqzeta.hpp"
#include "fqzeta/suites.hpp"

namespace {

using nlohmann::json;
using namespace fqzeta;

constexpr const char* kVersion = "fqzeta 1.0.0";

VarSet parse_varset(const std::string& text) {
    VarSet out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(std::stoi(cur));
    return make_varset(std::move(out));
}

// composition descriptor: "n1:v,v;n2:;n3:v" (empty variable block allowed)
Composition parse_composition(const std::string& text) {
    Composition comp;
    std::istringstream in(text);
    std::string entry;
    while (std::getline(in, entry, ';')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("composition entry needs n:vars");
        long n = std::stol(entry.substr(0, colon));
        comp.entries.emplace_back(n, parse_varset(entry.substr(colon + 1)));
    }
    comp.validate();
    return comp;
}

json report_to_json(const SuiteReport& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases) {
        json jc;
        jc["id"] = c.id;
        jc["status"] = c.pass ? "pass" : "fail";
        for (const auto& [k, v] : c.data) jc[k] = v;
        cases.push_back(std::move(jc));
    }
    json params;
    for (const auto& [k, v] : rep.params) params[k] = v;
    return json{{"schema", "fqzeta-report-v1"},
                {"version", kVersion},
                {"suite", rep.suite},
                {"params", params},
                {"cases", cases},
                {"totals", json{{"cases", rep.cases.size()},
                                {"pass", rep.pass_count()},
                                {"fail", rep.fail_count()}}}};
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw CLI::ValidationError("cannot open output file: " + out_path);
        f << text;
    }
}

long env_thread_count() {
    const char* v = std::getenv("FQZETA_THREADS");
    if (!v) return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1) {
        std::cerr << "FQZETA_THREADS must be a positive integer\n";
        std::exit(2);
    }
    return n;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact twisted power sums and zeta values in Tate algebras over F_q[theta]"};
    app.require_subcommand(1);
    env_thread_count(); // validated; case evaluation is sequential and order-independent

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "compute one object and print its canonical form");
    long cp = 2;
    int ce = 1;
    compute->add_option("--p", cp, "field characteristic")->required();
    compute->add_option("--e", ce, "extension degree (q = p^e)");
    bool powersum = false;
    compute->add_flag("--powersum", powersum, "twisted power sum S_d(k; sigma_U)");
    long ck = 1, cd = 1, cD = 3;
    std::string cU, cmulti, cmzv, cthakur;
    compute->add_option("--k", ck, "power k");
    compute->add_option("--U", cU, "variable set, comma separated (default empty)");
    compute->add_option("--d", cd, "degree d");
    compute->add_option("--multi", cmulti, "multiple power sum, composition n:vars;n:vars");
    compute->add_option("--mzv", cmzv, "truncated zeta value for a composition");
    compute->add_option("--thakur", cthakur, "truncated Thakur zeta value, weights n1,n2,...");
    compute->add_option("--D", cD, "truncation degree for --mzv/--thakur");
    bool show_norms = false;
    compute->add_flag("--norms", show_norms, "also print per-degree Gauss norm exponents");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run one verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name")->required();
    SuiteParams sp;
    long vp = 0;
    int ve = 1;
    verify->add_option("--p", vp, "restrict to one field: characteristic");
    verify->add_option("--e", ve, "extension degree");
    verify->add_option("--sigma", sp.sigma_max, "maximum |Sigma|");
    verify->add_option("--dmax", sp.d_max, "maximum power-sum degree");
    verify->add_option("--D", sp.D, "truncation degree");
    long vb = 0, vN = 0;
    verify->add_option("--b", vb, "prop17 subset size b");
    verify->add_option("--N", vN, "prop17 exponent N");
    std::string vU, vV;
    auto* uopt = verify->add_option("--U", vU, "restrict pair suites to this U (comma separated)");
    auto* vopt = verify->add_option("--V", vV, "restrict pair suites to this V (comma separated)");
    std::string out_path;
    verify->add_option("--out", out_path, "write the JSON report to this path");
    bool timing = false;
    verify->add_flag("--timing", timing, "include wall-clock timing (breaks byte-determinism)");

    // ---- report ----
    auto* report = app.add_subcommand("report", "run every suite on default grids, aggregate JSON");
    std::string rout;
    report->add_option("--out", rout, "write the aggregate JSON to this path");
    bool rtiming = false;
    report->add_flag("--timing", rtiming, "include wall-clock timing (breaks byte-determinism)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            FqField F(cp, ce);
            PowerSums ps(F);
            if (powersum) {
                std::cout << to_string(ps.twisted(ck, parse_varset(cU), cd)) << "\n";
            } else if (!cmulti.empty()) {
                std::cout << to_string(ps.multiple(parse_composition(cmulti), cd)) << "\n";
            } else if (!cmzv.empty()) {
                TruncatedMZV z = mzv_truncated(ps, parse_composition(cmzv), cD);
                std::cout << to_string(z.value) << "\n";
                if (show_norms) {
                    for (size_t d = 0; d < z.degree_norms.size(); ++d)
                        std::cout << "# norm_exp d=" << d << ": " << z.degree_norms[d].str() << "\n";
                    std::cout << "# tail norm_exp bound: " << z.tail_norm_exp.str() << "\n";
                }
            } else if (!cthakur.empty()) {
                std::vector<long> weights;
                std::istringstream in(cthakur);
                std::string w;
                while (std::getline(in, w, ',')) weights.push_back(std::stol(w));
                std::cout << to_string(thakur_mzv_truncated(ps, weights, cD)) << "\n";
            } else {
                std::cerr << "compute: need one of --powersum, --multi, --mzv, --thakur\n";
                return 2;
            }
            return 0;
        }

        if (verify->parsed()) {
            const auto& names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "unknown suite: " << suite << "\nknown suites:";
                for (const auto& n : names) std::cerr << " " << n;
                std::cerr << "\n";
                return 2;
            }
            if (vp) sp.p = vp, sp.e = ve;
            if (vb) sp.b = vb;
            if (vN) sp.N = vN;
            if (*uopt) sp.U = parse_varset(vU);
            if (*vopt) sp.V = parse_varset(vV);
            auto t0 = std::chrono::steady_clock::now();
            SuiteReport r = run_suite(suite, sp);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            json j = report_to_json(r);
            if (timing) j["timing_ms"] = ms;
            emit(j, out_path);
            std::cerr << suite << ": " << r.pass_count() << "/" << r.cases.size() << " cases pass ("
                      << ms << " ms)\n";
            return r.all_pass() ? 0 : 1;
        }

        if (report->parsed()) {
            json suites = json::array();
            bool all_pass = true;
            auto t0 = std::chrono::steady_clock::now();
            for (const auto& name : suite_names()) {
                SuiteReport r = run_suite(name, SuiteParams{});
                all_pass = all_pass && r.all_pass();
                suites.push_back(report_to_json(r));
                std::cerr << name << ": " << r.pass_count() << "/" << r.cases.size() << " pass\n";
            }
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            json j{{"schema", "fqzeta-aggregate-v1"},
                   {"version", kVersion},
                   {"all_pass", all_pass},
                   {"suites", suites}};
            if (rtiming) j["timing_ms"] = ms;
            emit(j, rout);
            std::cerr << "total: " << ms << " ms\n";
            return all_pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
