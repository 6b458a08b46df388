#pragma once

// Named verification suites over parameter grids. Each suite runs a list of
// cases in a fixed order and returns pass/fail results with serialized
// witnesses for every failure; the CLI renders these as JSON. Default grids
// are sized so a full run finishes in seconds.

#include <optional>
#include <sstream>

#include "fqzeta/zeta.hpp"
#include "fqzeta/serialize.hpp"

namespace fqzeta {

struct SuiteParams {
    std::optional<long> p;
    std::optional<int> e;
    long sigma_max = 3;
    long d_max = 3;
    long D = 3;
    std::optional<long> b;    // prop17
    std::optional<long> N;    // prop17
    std::optional<VarSet> U;  // restrict pair-driven suites to one (U, V)
    std::optional<VarSet> V;
};

struct CaseResult {
    std::string id;
    bool pass;
    std::map<std::string, std::string> data; // lhs / rhs / witness / info
};

struct SuiteReport {
    std::string suite;
    std::map<std::string, std::string> params;
    std::vector<CaseResult> cases;

    long pass_count() const {
        long n = 0;
        for (const auto& c : cases) n += c.pass;
        return n;
    }
    long fail_count() const { return static_cast<long>(cases.size()) - pass_count(); }
    bool all_pass() const { return fail_count() == 0; }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "theorem7",   "theorem4", "prop14",  "prop12-solve", "prop3",       "prop17",
        "euler-thakur", "lemma19",  "lemma20", "lemma15-16",   "prop8-10",    "lemma11",
        "lemma13",    "chen",     "euler-product", "closure"};
    return names;
}

namespace suites_detail {

inline std::vector<std::pair<long, int>> field_grid(const SuiteParams& sp,
                                                    std::vector<std::pair<long, int>> defaults) {
    if (sp.p) return {{*sp.p, sp.e.value_or(1)}};
    return defaults;
}

inline std::string qtag(const FqField& F) { return "q=" + std::to_string(F.q()); }

inline VarSet iota_set(long s) {
    VarSet v;
    for (long i = 1; i <= s; ++i) v.push_back(static_cast<int>(i));
    return v;
}

// all ordered pairs of disjoint subsets (U, V) of {1..sigma_max}
template <class Fn>
inline void for_each_disjoint_pair(long sigma_max, Fn&& fn) {
    VarSet sigma = iota_set(sigma_max);
    size_t s = sigma.size();
    for (unsigned um = 0; um < (1u << s); ++um)
        for (unsigned vm = 0; vm < (1u << s); ++vm) {
            if (um & vm) continue;
            fn(mask_to_set(sigma, um), mask_to_set(sigma, vm));
        }
}

inline std::string table_string(const ShuffleTable& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [jmask, val] : t.coeff) {
        if (val == 0) continue;
        if (!first) os << " ";
        first = false;
        os << "f[I=" << detail::set_str(vs_diff(t.sigma, mask_to_set(t.sigma, jmask)))
           << ",J=" << detail::set_str(mask_to_set(t.sigma, jmask)) << "]=" << val;
    }
    if (first) os << "(all zero)";
    return os.str();
}

inline std::string comp_string(const Composition& comp) {
    std::ostringstream os;
    for (size_t i = 0; i < comp.entries.size(); ++i) {
        if (i) os << ";";
        os << comp.entries[i].first << ":" << detail::set_str(comp.entries[i].second);
    }
    return os.str();
}

} // namespace suites_detail

inline SuiteReport run_suite(const std::string& name, const SuiteParams& sp) {
    using namespace suites_detail;
    SuiteReport rep;
    rep.suite = name;
    rep.params["sigma_max"] = std::to_string(sp.sigma_max);
    rep.params["d_max"] = std::to_string(sp.d_max);
    rep.params["D"] = std::to_string(sp.D);
    auto add = [&](std::string id, bool pass) -> CaseResult& {
        rep.cases.push_back({std::move(id), pass, {}});
        return rep.cases.back();
    };

    auto grid = [&](std::vector<std::pair<long, int>> defaults) {
        auto g = field_grid(sp, std::move(defaults));
        std::ostringstream os;
        for (size_t i = 0; i < g.size(); ++i) {
            if (i) os << ",";
            os << "p=" << g[i].first << "^e=" << g[i].second;
        }
        rep.params["fields"] = os.str();
        return g;
    };

    // pair-driven suites honor an explicit (U, V) restriction
    auto pairs = [&](auto&& fn) {
        if (sp.U || sp.V) {
            VarSet U = sp.U.value_or(VarSet{}), V = sp.V.value_or(VarSet{});
            if (!vs_disjoint(U, V)) throw std::invalid_argument("U and V must be disjoint");
            rep.params["U"] = detail::set_str(U);
            rep.params["V"] = detail::set_str(V);
            fn(U, V);
            return;
        }
        for_each_disjoint_pair(sp.sigma_max, fn);
    };

    if (name == "theorem7") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            pairs([&](const VarSet& U, const VarSet& V) {
                for (long d = 0; d <= sp.d_max; ++d) {
                    auto chk = verify_powersum_shuffle(ps, U, V, d);
                    auto& c = add(qtag(F) + "|U=" + detail::set_str(U) + "|V=" + detail::set_str(V) +
                                      "|d=" + std::to_string(d),
                                  chk.ok);
                    if (!chk.ok) {
                        c.data["lhs"] = to_string(chk.lhs);
                        c.data["rhs"] = to_string(chk.rhs);
                    }
                }
            });
        }
    } else if (name == "theorem4") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            pairs([&](const VarSet& U, const VarSet& V) {
                auto res = verify_mzv_shuffle(ps, U, V, sp.D);
                auto& c = add(qtag(F) + "|U=" + detail::set_str(U) + "|V=" + detail::set_str(V) +
                                  "|D=" + std::to_string(sp.D),
                              res.ok);
                if (!res.ok) {
                    std::string bad;
                    for (size_t d = 0; d < res.per_degree.size(); ++d)
                        if (!res.per_degree[d]) bad += (bad.empty() ? "" : ",") + std::to_string(d);
                    c.data["witness"] = "failing degrees: " + bad;
                }
            });
        }
    } else if (name == "prop14") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            pairs([&](const VarSet& U, const VarSet& V) {
                ShuffleTable rule = shuffle_coefficients(F, U, V);
                ShuffleTable solved = shuffle_coefficients_solve(ps, U, V);
                bool same = rule.coeff == solved.coeff;
                bool shape = true;
                for (const auto& [jmask, val] : solved.coeff) {
                    if (val == 0) continue;
                    VarSet J = mask_to_set(solved.sigma, jmask);
                    if (val != F.p() - 1 || J.empty() ||
                        (static_cast<long>(J.size()) - 1) % (F.q() - 1) != 0 ||
                        !(vs_subset(J, U) || vs_subset(J, V)))
                        shape = false;
                }
                auto& c = add(qtag(F) + "|U=" + detail::set_str(U) + "|V=" + detail::set_str(V),
                              same && shape);
                if (!(same && shape)) {
                    c.data["lhs"] = "rule: " + table_string(rule);
                    c.data["rhs"] = "solve: " + table_string(solved);
                }
            });
        }
    } else if (name == "prop12-solve") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            pairs([&](const VarSet& U, const VarSet& V) {
                VarSet sigma = vs_union(U, V);
                ShuffleTable solved = shuffle_coefficients_solve(ps, U, V);
                MPoly lhs = ps.twisted(1, U, 1) * ps.twisted(1, V, 1) - ps.twisted(2, sigma, 1);
                MPoly rhs = MPoly::zero(F);
                for (const auto& [jmask, val] : solved.coeff) {
                    if (val == 0) continue;
                    VarSet I = vs_diff(sigma, mask_to_set(sigma, jmask));
                    rhs = rhs + ps.twisted(1, I, 1) * RatK(F, val);
                }
                bool ok = lhs == rhs;
                auto& c =
                    add(qtag(F) + "|U=" + detail::set_str(U) + "|V=" + detail::set_str(V), ok);
                if (!ok) {
                    c.data["lhs"] = to_string(lhs);
                    c.data["rhs"] = to_string(rhs);
                }
            });
        }
    } else if (name == "prop3") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            std::vector<Composition> comps;
            // depth 1 and 2 over at most two variables, weights at most 2
            std::vector<VarSet> blocks = {{}, {1}, {2}, {1, 2}};
            for (long n1 = 1; n1 <= 2; ++n1)
                for (const auto& U1 : blocks) comps.push_back(Composition{{{n1, U1}}});
            for (long n1 = 1; n1 <= 2; ++n1)
                for (long n2 = 1; n2 <= 2; ++n2)
                    for (const auto& U1 : blocks)
                        for (const auto& U2 : blocks) {
                            if (!vs_disjoint(U1, U2)) continue;
                            comps.push_back(Composition{{{n1, U1}, {n2, U2}}});
                        }
            for (const auto& comp : comps) {
                VarSet sigma = comp.sigma();
                // every k-assignment with entries in {0, 1}
                size_t s = sigma.size();
                for (long N = 0; N <= 2; ++N)
                    for (unsigned km = 0; km < (1u << s); ++km) {
                        SpecPlan plan;
                        plan.N = N;
                        plan.comp = comp;
                        for (size_t i = 0; i < s; ++i) plan.k[sigma[i]] = (km >> i) & 1;
                        if (!plan.admissible(F)) continue;
                        auto res = specialize_to_thakur(ps, plan, sp.D);
                        std::ostringstream id;
                        id << qtag(F) << "|comp=" << comp_string(comp) << "|N=" << N << "|k=";
                        for (size_t i = 0; i < s; ++i) id << ((km >> i) & 1);
                        auto& c = add(id.str(), res.equal);
                        if (!res.equal) {
                            c.data["lhs"] = to_string(res.specialized);
                            c.data["rhs"] = to_string(res.thakur);
                        }
                    }
                SpecPlan witness = nonvanishing_witness(ps, comp);
                long deg = nonvanishing_degree(ps, witness);
                auto& c = add(qtag(F) + "|witness|comp=" + comp_string(comp) +
                                  "|N=" + std::to_string(witness.N),
                              deg >= 0);
                c.data["info"] = deg >= 0 ? "nonzero at D=" + std::to_string(deg) : "no nonzero truncation";
            }
        }
    } else if (name == "prop17") {
        std::vector<std::tuple<long, int, long, long>> cases;
        if (sp.p && sp.b && sp.N) {
            cases.emplace_back(*sp.p, sp.e.value_or(1), *sp.b, *sp.N);
        } else {
            cases = {{2, 1, 2, 1}, {2, 1, 2, 2}, {3, 1, 3, 1}, {3, 1, 3, 2}};
        }
        rep.params["fields"] = "per-case";
        for (auto [p, e, b, N] : cases) {
            FqField F(p, e);
            PowerSums ps(F);
            auto r = ps.prop17(b, N);
            // condition (15) failing is informational; the hard requirement
            // is condition => vanishing, plus individual non-vanishing
            bool ok = (!r.condition15_holds || r.sum_vanishes) && r.individual_nonzero_all;
            auto& c = add(qtag(F) + "|b=" + std::to_string(b) + "|N=" + std::to_string(N), ok);
            c.data["info"] = std::string("condition15_holds=") + (r.condition15_holds ? "true" : "false") +
                             " sum_vanishes=" + (r.sum_vanishes ? "true" : "false") +
                             " individual_nonzero=" + (r.individual_nonzero_all ? "true" : "false");
            if (!r.failing_j.empty()) {
                std::string js;
                for (size_t i = 0; i < r.failing_j.size(); ++i)
                    js += (i ? "," : "") + std::to_string(r.failing_j[i]);
                c.data["info"] += " failing_j=" + js;
            }
            if (!r.sum_vanishes) c.data["witness"] = to_string(r.sum);
        }
    } else if (name == "euler-thakur") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            long dmax = std::max(sp.d_max, 4L);
            auto res = euler_thakur_check(ps, dmax);
            for (long d = 1; d <= dmax; ++d) {
                add(qtag(F) + "|d=" + std::to_string(d) + "|identity",
                    res.per_degree[static_cast<size_t>(d - 1)]);
                add(qtag(F) + "|d=" + std::to_string(d) + "|chain",
                    res.chain_identity[static_cast<size_t>(d - 1)]);
            }
        }
    } else if (name == "lemma19") {
        for (auto [p, e] : grid({{3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            for (long s = 2; s < F.q() && s <= sp.sigma_max; ++s) {
                VarSet sigma = iota_set(s);
                for (int i : sigma)
                    for (int j : sigma) {
                        if (i == j) continue;
                        bool ok = lemma19_check(ps, sigma, i, j, sp.D);
                        add(qtag(F) + "|sigma=" + detail::set_str(sigma) + "|i=" + std::to_string(i) +
                                "|j=" + std::to_string(j),
                            ok);
                    }
            }
        }
    } else if (name == "lemma20") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            long q = F.q();
            VarSet sigma = iota_set(q + 1); // smallest Sigma with distinct splits
            std::vector<VarSet> usets;
            PowerSums::for_each_subset_of_size(sigma, q, [&](const VarSet& u) { usets.push_back(u); });
            for (const auto& U : usets)
                for (const auto& U2 : usets) {
                    bool ok = lemma20_check(ps, U, vs_diff(sigma, U), U2, vs_diff(sigma, U2), sp.D);
                    add(qtag(F) + "|U=" + detail::set_str(U) + "|U'=" + detail::set_str(U2), ok);
                }
        }
    } else if (name == "lemma15-16") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            for (long d = 1; d <= sp.d_max; ++d) {
                auto parts = partition_classes(F, d);
                auto& c = add(qtag(F) + "|d=" + std::to_string(d) + "|partitions", parts.ok);
                c.data["info"] = "|S|=" + std::to_string(parts.classes_S.size()) +
                                 " |S'|=" + std::to_string(parts.classes_Sprime.size());
                if (!parts.ok) c.data["witness"] = parts.failures.front();
                for_each_disjoint_pair(2, [&](const VarSet& U, const VarSet& V) {
                    bool ok = degree_reduction_check(ps, U, V, d);
                    add(qtag(F) + "|d=" + std::to_string(d) + "|reduction|U=" + detail::set_str(U) +
                            "|V=" + detail::set_str(V),
                        ok);
                });
            }
        }
    } else if (name == "prop8-10") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            long smax = std::min(2 * F.q(), 6L);
            auto r = verify_stability(ps, iota_set(smax), F.q() - 1);
            auto& c = add(qtag(F) + "|sigma=" + std::to_string(smax), r.all_ok);
            c.data["info"] = "memberships=" + std::to_string(r.membership_checks) +
                             " expansions=" + std::to_string(r.expansion_checks);
            if (!r.all_ok) c.data["witness"] = r.failures.front();
        }
    } else if (name == "lemma11") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            VarSet sigma = iota_set(sp.sigma_max);
            for (unsigned m = 0; m < (1u << sigma.size()); ++m) {
                VarSet U = mask_to_set(sigma, m);
                for (long n = 0; n <= F.q() - 1; ++n)
                    add(qtag(F) + "|U=" + detail::set_str(U) + "|n=" + std::to_string(n),
                        lemma11_check(ps, U, n));
            }
        }
    } else if (name == "lemma13") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}, {2, 2}})) {
            FqField F(p, e);
            PowerSums ps(F);
            for (long s = 0; s <= sp.sigma_max; ++s) {
                VarSet sigma = iota_set(s);
                PBasis basis = p_basis(ps, sigma);
                size_t rank = pbasis_rank(basis);
                auto& c = add(qtag(F) + "|sigma=" + std::to_string(s) + "|rank",
                              rank == (1u << sigma.size()));
                c.data["info"] = "rank=" + std::to_string(rank);
                for (unsigned m = 0; m < (1u << sigma.size()); ++m) {
                    VarSet U = mask_to_set(sigma, m);
                    RatK img = chen_psi_image(ps.twisted(1, U, 1), sigma);
                    RatK expect = ps.twisted(chen_weight(F, sigma, U), {}, 1).constant_value();
                    bool ok = img == expect;
                    auto& cc = add(qtag(F) + "|sigma=" + std::to_string(s) +
                                       "|psi|U=" + detail::set_str(U),
                                   ok);
                    if (!ok) {
                        cc.data["lhs"] = to_string(img);
                        cc.data["rhs"] = to_string(expect);
                    }
                }
            }
        }
    } else if (name == "chen") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            pairs([&](const VarSet& U, const VarSet& V) {
                auto r = chen_bridge_check(ps, U, V);
                auto& c = add(qtag(F) + "|U=" + detail::set_str(U) + "|V=" + detail::set_str(V), r.ok);
                if (!r.ok) c.data["witness"] = r.failures.front();
            });
        }
    } else if (name == "euler-product") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            std::vector<VarSet> us = {{}, {1}, {1, 2}};
            for (const auto& U : us)
                for (long n = 1; n <= 2; ++n)
                    for (long d = 1; d <= 2; ++d)
                        add(qtag(F) + "|U=" + detail::set_str(U) + "|n=" + std::to_string(n) +
                                "|d=" + std::to_string(d),
                            euler_product_check(ps, U, n, d));
        }
    } else if (name == "closure") {
        for (auto [p, e] : grid({{2, 1}, {3, 1}})) {
            FqField F(p, e);
            PowerSums ps(F);
            auto r = algebra_closure_check(ps, sp.sigma_max, sp.D);
            auto& c = add(qtag(F) + "|sigma_max=" + std::to_string(sp.sigma_max), r.ok);
            c.data["info"] = "cases=" + std::to_string(r.cases);
            if (!r.ok) c.data["witness"] = r.failures.front();
        }
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    return rep;
}

} // namespace fqzeta
