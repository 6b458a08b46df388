#pragma once

// Hyperderivatives D_n in theta (D_n(theta^m) = binom(m,n) theta^{m-n}),
// the bracket polynomials P_U = [1] S_1(1, sigma_U), base-[1] expansions,
// and the F_p-spaces V_Sigma^{(n)} with exact membership tests.

#include <functional>

#include "fqzeta/fp_linalg.hpp"
#include "fqzeta/powersums.hpp"

namespace fqzeta {

// binom(n, k) mod p by Lucas: digitwise products of base-p digits
inline long lucas_binomial(long long n, long long k, long p) {
    if (k < 0 || k > n) return 0;
    long result = 1;
    while (n || k) {
        long long nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // binom(nd, kd) mod p with nd < p: kd! is invertible
        long num = 1, den = 1;
        for (long long i = 0; i < kd; ++i) {
            num = static_cast<long>(num * ((nd - i) % p) % p);
            den = static_cast<long>(den * ((i + 1) % p) % p);
        }
        long deninv = 1, b = den, e = p - 2;
        while (e) {
            if (e & 1) deninv = deninv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        result = result * (num * deninv % p) % p;
        n /= p;
        k /= p;
    }
    return result;
}

inline APoly hyperderive(const APoly& a, long n) {
    if (n < 0) throw std::invalid_argument("hyperderive: negative order");
    if (n == 0) return a;
    const FqField& F = a.field();
    std::vector<fq_idx> out;
    if (a.deg() >= n) {
        out.assign(static_cast<size_t>(a.deg() - n) + 1, 0);
        for (long m = n; m <= a.deg(); ++m) {
            fq_idx c = a.coeffs()[static_cast<size_t>(m)];
            if (c == 0) continue;
            long binom = lucas_binomial(m, n, F.p());
            if (binom) out[static_cast<size_t>(m - n)] = F.mul(c, F.from_int(binom));
        }
    }
    return APoly(F, std::move(out));
}

// F_q[t_Sigma]-linear extension to polynomial-coefficient MPolys
inline MPoly hyperderive(const MPoly& f, long n) {
    if (n == 0) return f;
    MPoly::TermMap terms;
    for (const auto& [m, c] : f.terms()) {
        if (!c.is_polynomial()) throw std::domain_error("hyperderive: rational coefficient");
        APoly d = hyperderive(c.num(), n);
        if (!d.is_zero()) terms.emplace(m, RatK(std::move(d)));
    }
    return MPoly(f.field(), f.vars(), std::move(terms));
}

inline APoly bracket_one(const FqField& F) {
    APoly theta = APoly::theta(F);
    return theta.pow(F.q()) - theta;
}

// B_1(sigma_U) = prod_{i in U} (t_i - theta)
inline MPoly b1_poly(const FqField& F, const VarSet& U) {
    MPoly r = MPoly::one(F);
    MPoly theta = MPoly::constant(F, RatK(APoly::theta(F)));
    for (int i : U) r = r * (MPoly::variable(F, i) - theta);
    return r;
}

// repeated Euclidean division by [1]: f = a_0 + a_1 [1] + ... + a_N [1]^N
// with deg_theta(a_i) < q; reconstruction is exact by construction
inline std::vector<MPoly> bracket_expand(const MPoly& f) {
    const FqField& F = f.field();
    APoly br = bracket_one(F);
    std::vector<MPoly> out;
    MPoly rest = f;
    do {
        auto [q, r] = theta_divrem(rest, br);
        out.push_back(std::move(r));
        rest = std::move(q);
    } while (!rest.is_zero());
    return out;
}

inline std::vector<APoly> bracket_expand(const APoly& f) {
    const FqField& F = f.field();
    APoly br = bracket_one(F);
    std::vector<APoly> out;
    APoly rest = f;
    do {
        auto [q, r] = rest.divrem(br);
        out.push_back(std::move(r));
        rest = std::move(q);
    } while (!rest.is_zero());
    return out;
}

// subset masks are relative to the position of each variable in sigma
inline VarSet mask_to_set(const VarSet& sigma, unsigned mask) {
    VarSet u;
    for (size_t i = 0; i < sigma.size(); ++i)
        if (mask & (1u << i)) u.push_back(sigma[i]);
    return u;
}

// The basis polynomials P_U = [1] S_1(1, sigma_U) for all U subset of sigma,
// each computed both by clearing the denominator of S_1(1, sigma_U) and by
// the closed lambda-sum; the two routes must agree.
struct PBasis {
    VarSet sigma;
    std::vector<MPoly> by_mask; // index = subset mask

    const MPoly& at(unsigned mask) const { return by_mask[mask]; }
    size_t count() const { return by_mask.size(); }
};

inline PBasis p_basis(PowerSums& ps, const VarSet& sigma) {
    const FqField& F = ps.field();
    if (sigma.size() > 20) throw std::invalid_argument("p_basis: sigma too large");
    APoly br = bracket_one(F);
    MPoly theta = MPoly::constant(F, RatK(APoly::theta(F)));
    PBasis basis;
    basis.sigma = sigma;
    for (unsigned mask = 0; mask < (1u << sigma.size()); ++mask) {
        VarSet U = mask_to_set(sigma, mask);
        // route 1: [1] * S_1(1, sigma_U); the denominator must divide [1]
        MPoly p1 = ps.twisted(1, U, 1) * RatK(br);
        if (!p1.is_polynomial()) throw std::logic_error("p_basis: denominator does not divide [1]");
        // route 2: sum_lambda ((theta-lambda)^{q-1} - 1) prod_{i in U}(t_i - lambda)
        MPoly p2 = MPoly::zero(F);
        for (fq_idx lam = 0; lam < F.q(); ++lam) {
            APoly tl = APoly::theta(F) - APoly(F, FqElem(F, lam));
            MPoly factor = MPoly::constant(F, RatK(tl.pow(F.q() - 1) - APoly(F, 1)));
            MPoly lamc = MPoly::constant(F, RatK(APoly(F, FqElem(F, lam))));
            for (int i : U) factor = factor * (MPoly::variable(F, i) - lamc);
            p2 = p2 + factor;
        }
        if (p1 != p2) throw std::logic_error("p_basis: lambda-sum and cleared-denominator routes disagree");
        if (p1.deg_theta() > F.q() - 1) throw std::logic_error("p_basis: theta-degree exceeds q-1");
        if (!prime_field_coeff_check(p1)) throw std::logic_error("p_basis: coefficients leave F_p");
        basis.by_mask.push_back(std::move(p1));
    }
    return basis;
}

// monomial-coordinate form of an F_p-coefficient MPoly: (theta-exponent,
// t-exponent tuple) -> residue; faithful by decode()
struct FpCoords {
    VarSet vars;
    std::map<std::pair<long, Monomial>, long> coords;

    static FpCoords encode(const MPoly& f) {
        const FqField& F = f.field();
        FpCoords out;
        out.vars = f.vars();
        for (const auto& [m, c] : f.terms()) {
            if (!c.is_polynomial()) throw std::domain_error("FpCoords: rational coefficient");
            for (size_t k = 0; k < c.num().coeffs().size(); ++k) {
                fq_idx v = c.num().coeffs()[k];
                if (v == 0) continue;
                if (!F.in_prime_subfield(v)) throw std::domain_error("FpCoords: coefficient not in F_p");
                out.coords[{static_cast<long>(k), m}] = F.coords(v)[0];
            }
        }
        return out;
    }

    MPoly decode(const FqField& F) const {
        std::map<Monomial, std::vector<fq_idx>, GradedLex> polys;
        for (const auto& [key, res] : coords) {
            auto& vec = polys[key.second];
            if (vec.size() <= static_cast<size_t>(key.first)) vec.resize(static_cast<size_t>(key.first) + 1, 0);
            vec[static_cast<size_t>(key.first)] = F.from_int(res);
        }
        MPoly::TermMap terms;
        for (auto& [m, vec] : polys) {
            APoly a(F, std::move(vec));
            if (!a.is_zero()) terms.emplace(m, RatK(std::move(a)));
        }
        return MPoly(F, vars, std::move(terms));
    }
};

// exact membership of f in span_{F_p}{ P_U : |sigma minus U| >= n }; returns
// the basis coordinates (mask -> residue) or nullopt
inline std::optional<std::map<unsigned, long>> vspace_membership(const PBasis& basis, const MPoly& f,
                                                                 long n) {
    const FqField& F = f.field();
    if (!f.is_polynomial()) throw std::invalid_argument("vspace_membership: rational coefficients");
    if (!f.is_zero() && !prime_field_coeff_check(f)) return std::nullopt;
    size_t s = basis.sigma.size();
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        long outside = static_cast<long>(s) - static_cast<long>(__builtin_popcount(mask));
        if (outside >= n) masks.push_back(mask);
    }
    if (masks.empty()) {
        if (f.is_zero()) return std::map<unsigned, long>{};
        return std::nullopt;
    }
    // common coordinate rows over sigma-aligned monomials
    std::map<std::pair<long, Monomial>, size_t> row_of;
    auto collect = [&](const MPoly& g) {
        for (const auto& [m, c] : g.aligned_terms(basis.sigma))
            for (size_t k = 0; k < c.num().coeffs().size(); ++k)
                if (c.num().coeffs()[k] != 0) row_of.emplace(std::make_pair(static_cast<long>(k), m), 0);
    };
    for (unsigned mask : masks) collect(basis.at(mask));
    collect(f);
    size_t nrows = 0;
    for (auto& [key, idx] : row_of) idx = nrows++;
    FpMat A(F.p(), nrows, masks.size());
    std::vector<long> rhs(nrows, 0);
    auto fill = [&](const MPoly& g, std::function<void(size_t, long)> put) {
        for (const auto& [m, c] : g.aligned_terms(basis.sigma))
            for (size_t k = 0; k < c.num().coeffs().size(); ++k) {
                fq_idx v = c.num().coeffs()[k];
                if (v == 0) continue;
                put(row_of.at({static_cast<long>(k), m}), F.coords(v)[0]);
            }
    };
    for (size_t j = 0; j < masks.size(); ++j)
        fill(basis.at(masks[j]), [&](size_t r, long v) { A.set(r, j, v); });
    fill(f, [&](size_t r, long v) { rhs[r] = v; });
    auto sol = fp_solve(A, rhs);
    if (!sol) return std::nullopt;
    std::map<unsigned, long> out;
    for (size_t j = 0; j < masks.size(); ++j)
        if ((*sol)[j] != 0) out[masks[j]] = (*sol)[j];
    return out;
}

inline size_t pbasis_rank(const PBasis& basis) {
    const FqField* F = nullptr;
    std::map<std::pair<long, Monomial>, size_t> row_of;
    for (const auto& p : basis.by_mask) {
        F = &p.field();
        for (const auto& [m, c] : p.aligned_terms(basis.sigma))
            for (size_t k = 0; k < c.num().coeffs().size(); ++k)
                if (c.num().coeffs()[k] != 0) row_of.emplace(std::make_pair(static_cast<long>(k), m), 0);
    }
    size_t nrows = 0;
    for (auto& [key, idx] : row_of) idx = nrows++;
    FpMat A(F->p(), nrows, basis.by_mask.size());
    for (size_t j = 0; j < basis.by_mask.size(); ++j)
        for (const auto& [m, c] : basis.by_mask[j].aligned_terms(basis.sigma))
            for (size_t k = 0; k < c.num().coeffs().size(); ++k) {
                fq_idx v = c.num().coeffs()[k];
                if (v != 0) A.set(row_of.at({static_cast<long>(k), m}), j, F->coords(v)[0]);
            }
    return fp_rank(std::move(A));
}

namespace detail {
inline std::string set_str(const VarSet& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "}";
}
} // namespace detail

struct StabilityReport {
    bool all_ok = true;
    long membership_checks = 0;
    long expansion_checks = 0;
    long derivation_display_checks = 0;
    std::vector<std::string> failures;
};

// Verifies, over every U subset of sigma:
//   - D_n(P_W) in V_U^{(|U\W|+n)} for all W subset of U, 1 <= n <= n_max
//   - the expansion B_1(sigma_U) = sum a_i^U [1]^i has a_i^U in V_U^{(qi)}
//   - D_1(P_U) + sum_{i in U} P_{U\{i}} in V_U^{(2)}
inline StabilityReport verify_stability(PowerSums& ps, const VarSet& sigma, long n_max) {
    const FqField& F = ps.field();
    PBasis basis = p_basis(ps, sigma);
    StabilityReport rep;
    auto fail = [&](std::string msg) {
        rep.all_ok = false;
        rep.failures.push_back(std::move(msg));
    };
    size_t s = sigma.size();
    for (unsigned umask = 0; umask < (1u << s); ++umask) {
        VarSet U = mask_to_set(sigma, umask);
        PBasis ubasis;
        ubasis.sigma = U;
        for (unsigned wm = 0; wm < (1u << U.size()); ++wm) {
            // translate U-relative masks to sigma-relative ones
            VarSet W = mask_to_set(U, wm);
            unsigned smask = 0;
            for (size_t i = 0; i < s; ++i)
                if (std::binary_search(W.begin(), W.end(), sigma[i])) smask |= (1u << i);
            ubasis.by_mask.push_back(basis.at(smask));
        }
        long usize = static_cast<long>(U.size());
        for (unsigned wm = 0; wm < (1u << U.size()); ++wm) {
            long m = usize - static_cast<long>(__builtin_popcount(wm));
            for (long n = 1; n <= n_max; ++n) {
                MPoly dn = hyperderive(ubasis.at(wm), n);
                ++rep.membership_checks;
                if (!vspace_membership(ubasis, dn, m + n))
                    fail("D_" + std::to_string(n) + "(P_W) not in V_U^(" + std::to_string(m + n) +
                         "), U=" + detail::set_str(U) + " Wmask=" + std::to_string(wm));
            }
        }
        // expansion coefficients of B_1(sigma_U)
        auto coeffs = bracket_expand(b1_poly(F, U));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            ++rep.expansion_checks;
            if (!vspace_membership(ubasis, coeffs[i], static_cast<long>(i) * F.q()))
                fail("a_" + std::to_string(i) + " of B_1 not in V_U^(qi), U=" + detail::set_str(U));
        }
        // D_1(P_U) + sum_i P_{U minus i} in V_U^{(2)}
        MPoly disp = hyperderive(ubasis.at((1u << U.size()) - 1), 1);
        for (size_t i = 0; i < U.size(); ++i)
            disp = disp + ubasis.at(static_cast<unsigned>(((1u << U.size()) - 1) ^ (1u << i)));
        ++rep.derivation_display_checks;
        if (!vspace_membership(ubasis, disp, 2))
            fail("D_1(P_U) + sum P_{U-i} not in V_U^(2), U=" + detail::set_str(U));
    }
    return rep;
}

// Lemma 11: || [1] S_1(1+n, sigma_U) - (-1)^n D_n(P_U) || < 1, 0 <= n <= q-1
inline bool lemma11_check(PowerSums& ps, const VarSet& U, long n) {
    const FqField& F = ps.field();
    if (n < 0 || n > F.q() - 1) throw std::invalid_argument("lemma11_check: n out of range");
    MPoly pk = ps.twisted(1 + n, U, 1) * RatK(bracket_one(F));
    MPoly pu = ps.twisted(1, U, 1) * RatK(bracket_one(F));
    MPoly dn = hyperderive(pu, n);
    MPoly diff = (n % 2 == 0) ? pk - dn : pk + dn;
    return gauss_norm_exp(diff) < NormExp::of(0);
}

// Lemma 9: D_n([1]^m) is a polynomial in [1] over F_p of degree at most
// min(m - ceil(n/q), m - 1)
inline bool lemma9_check(const FqField& F, long m, long n) {
    APoly br = bracket_one(F);
    APoly dn = hyperderive(br.pow(m), n);
    auto coeffs = bracket_expand(dn);
    long deg_in_bracket = -1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        if (!coeffs[i].is_constant()) return false; // not a polynomial in [1]
        if (!F.in_prime_subfield(coeffs[i].coeffs()[0])) return false;
        deg_in_bracket = static_cast<long>(i);
    }
    long bound = std::min(m - (n + F.q() - 1) / F.q(), m - 1);
    return deg_in_bracket <= bound;
}

} // namespace fqzeta
