#pragma once

// Sparse multivariate polynomials in the Tate-algebra variables t_i with
// coefficients in K = F_q(theta). Terms are keyed by exponent tuples over a
// sorted variable support set and iterated in graded-lexicographic order;
// unused variables are pruned so equal values have identical representations.

#include <cstdint>
#include <iterator>
#include <map>

#include "fqzeta/ratk.hpp"

namespace fqzeta {

using VarSet = std::vector<int>;        // sorted, duplicate-free
using Monomial = std::vector<std::uint32_t>; // arity = |vars|

inline VarSet make_varset(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (int i : v)
        if (i < 1) throw std::invalid_argument("variable indices must be positive");
    return v;
}

inline VarSet vs_union(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline bool vs_disjoint(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r.empty();
}

inline bool vs_subset(const VarSet& a, const VarSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VarSet vs_diff(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

// graded order: by total degree, then lexicographic on the exponent tuple
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned long da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

class MPoly {
  public:
    using TermMap = std::map<Monomial, RatK, GradedLex>;

    explicit MPoly(const FqField& F) : F_(&F) {}
    MPoly(const FqField& F, VarSet vars, TermMap terms)
        : F_(&F), vars_(std::move(vars)), terms_(std::move(terms)) {
        canonicalize();
    }

    static MPoly zero(const FqField& F) { return MPoly(F); }
    static MPoly constant(const FqField& F, RatK c) {
        MPoly f(F);
        if (!c.is_zero()) f.terms_.emplace(Monomial{}, std::move(c));
        return f;
    }
    static MPoly constant(const FqField& F, long long c) { return constant(F, RatK(F, c)); }
    static MPoly one(const FqField& F) { return constant(F, 1); }
    static MPoly variable(const FqField& F, int i) {
        MPoly f(F);
        f.vars_ = {i};
        f.terms_.emplace(Monomial{1}, RatK(F, 1));
        return f;
    }

    const FqField& field() const { return *F_; }
    const VarSet& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_polynomial() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    MPoly operator+(const MPoly& o) const { return combined(o, false); }
    MPoly operator-(const MPoly& o) const { return combined(o, true); }

    MPoly operator-() const {
        MPoly r(*F_);
        r.vars_ = vars_;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    MPoly operator*(const MPoly& o) const {
        check_field(o);
        if (is_zero() || o.is_zero()) return MPoly(*F_);
        VarSet v = vs_union(vars_, o.vars_);
        TermMap a = aligned_terms(v), b = o.aligned_terms(v);
        // clear denominators, convolve over A, reduce once per monomial
        APoly da = den_lcm(a), db = den_lcm(b);
        std::map<Monomial, APoly, GradedLex> na = cleared(a, da), nb = cleared(b, db);
        std::map<Monomial, APoly, GradedLex> prod;
        for (const auto& [m1, c1] : na)
            for (const auto& [m2, c2] : nb) {
                Monomial m(m1.size());
                for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
                auto it = prod.find(m);
                if (it == prod.end())
                    prod.emplace(std::move(m), c1 * c2);
                else
                    it->second = it->second + c1 * c2;
            }
        APoly d = da * db;
        MPoly r(*F_);
        r.vars_ = v;
        for (auto& [m, c] : prod) {
            RatK rc(std::move(c), d);
            if (!rc.is_zero()) r.terms_.emplace(m, std::move(rc));
        }
        r.canonicalize();
        return r;
    }

    MPoly scaled(const RatK& s) const {
        if (s.is_zero()) return MPoly(*F_);
        MPoly r(*F_);
        r.vars_ = vars_;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    MPoly operator*(const RatK& s) const { return scaled(s); }

    // coefficient of a t-monomial given as var -> exponent (absent vars = 0)
    RatK coeff(const std::map<int, std::uint32_t>& mono) const {
        Monomial key(vars_.size(), 0);
        for (const auto& [v, e] : mono) {
            if (e == 0) continue;
            auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
            if (it == vars_.end() || *it != v) return RatK(*F_); // variable absent
            key[static_cast<size_t>(it - vars_.begin())] = e;
        }
        auto it = terms_.find(key);
        return it == terms_.end() ? RatK(*F_) : it->second;
    }

    RatK constant_value() const {
        if (!vars_.empty()) throw std::domain_error("MPoly: not a constant");
        return terms_.empty() ? RatK(*F_) : terms_.begin()->second;
    }

    // substitution homomorphism t_i -> value; variables absent from the
    // support are ignored
    MPoly specialize(const std::map<int, RatK>& assignment) const {
        MPoly r(*F_);
        VarSet kept;
        std::vector<int> subst_pos; // positions in vars_ that get substituted
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (assignment.count(vars_[i]))
                subst_pos.push_back(static_cast<int>(i));
            else
                kept.push_back(vars_[i]);
        }
        r.vars_ = kept;
        for (const auto& [m, c] : terms_) {
            RatK val = c;
            for (int pos : subst_pos) {
                std::uint32_t e = m[static_cast<size_t>(pos)];
                if (e) val = val * assignment.at(vars_[static_cast<size_t>(pos)]).pow(e);
            }
            Monomial key;
            key.reserve(kept.size());
            for (size_t i = 0; i < vars_.size(); ++i)
                if (!assignment.count(vars_[i])) key.push_back(m[i]);
            auto it = r.terms_.find(key);
            if (it == r.terms_.end())
                r.terms_.emplace(std::move(key), std::move(val));
            else
                it->second = it->second + val;
        }
        r.canonicalize();
        return r;
    }

    // theta-degree of a polynomial-coefficient MPoly (-1 for zero)
    long deg_theta() const {
        long d = -1;
        for (const auto& [m, c] : terms_) {
            if (!c.is_polynomial()) throw std::domain_error("MPoly: deg_theta of non-polynomial coefficients");
            d = std::max(d, c.num().deg());
        }
        return d;
    }

    bool operator==(const MPoly& o) const {
        return F_->same_as(*o.F_) && vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    TermMap aligned_terms(const VarSet& target) const {
        if (vars_ == target) return terms_;
        if (!vs_subset(vars_, target)) throw std::logic_error("MPoly: alignment target must contain support");
        std::vector<size_t> pos(vars_.size());
        for (size_t i = 0; i < vars_.size(); ++i)
            pos[i] = static_cast<size_t>(
                std::lower_bound(target.begin(), target.end(), vars_[i]) - target.begin());
        TermMap out;
        for (const auto& [m, c] : terms_) {
            Monomial key(target.size(), 0);
            for (size_t i = 0; i < m.size(); ++i) key[pos[i]] = m[i];
            out.emplace(std::move(key), c);
        }
        return out;
    }

  private:
    MPoly combined(const MPoly& o, bool subtract) const {
        check_field(o);
        VarSet v = vs_union(vars_, o.vars_);
        TermMap a = aligned_terms(v), b = o.aligned_terms(v);
        for (auto& [m, c] : b) {
            auto it = a.find(m);
            RatK val = subtract ? -c : c;
            if (it == a.end())
                a.emplace(m, std::move(val));
            else
                it->second = it->second + val;
        }
        MPoly r(*F_);
        r.vars_ = v;
        r.terms_ = std::move(a);
        r.canonicalize();
        return r;
    }

    APoly den_lcm(const TermMap& t) const {
        APoly l(*F_, 1);
        for (const auto& [m, c] : t) {
            const APoly& d = c.den();
            l = l * (d / gcd(l, d));
        }
        return l;
    }

    std::map<Monomial, APoly, GradedLex> cleared(const TermMap& t, const APoly& l) const {
        std::map<Monomial, APoly, GradedLex> out;
        for (const auto& [m, c] : t) out.emplace(m, c.num() * (l / c.den()));
        return out;
    }

    void canonicalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        if (vars_.empty()) return;
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [m, c] : terms_)
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) used[i] = true;
        if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
        VarSet nv;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) nv.push_back(vars_[i]);
        TermMap nt;
        for (auto& [m, c] : terms_) {
            Monomial key;
            key.reserve(nv.size());
            for (size_t i = 0; i < m.size(); ++i)
                if (used[i]) key.push_back(m[i]);
            nt.emplace(std::move(key), std::move(c));
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    void check_field(const MPoly& o) const {
        if (!F_->same_as(*o.F_)) throw std::invalid_argument("MPoly: mixed fields");
    }

    const FqField* F_;
    VarSet vars_;
    TermMap terms_;
};

// chi_{t_i}: the F_q-linear ring map A -> F_q[t_i] sending theta to t_i
inline MPoly chi_substitute(const APoly& a, int i) {
    const FqField& F = a.field();
    MPoly::TermMap terms;
    for (size_t k = 0; k < a.coeffs().size(); ++k) {
        fq_idx c = a.coeffs()[k];
        if (c == 0) continue;
        terms.emplace(Monomial{static_cast<std::uint32_t>(k)}, RatK(APoly(F, FqElem(F, c))));
    }
    return MPoly(F, VarSet{i}, std::move(terms));
}

// sigma_U(a) = prod_{i in U} chi_{t_i}(a); the empty product is 1
inline MPoly sigma_eval(const APoly& a, const VarSet& U) {
    MPoly r = MPoly::one(a.field());
    for (int i : U) r = r * chi_substitute(a, i);
    return r;
}

// tau^N: raise every coefficient to the q^N power, t-monomials unchanged
inline MPoly frobenius_twist(const MPoly& f, long N) {
    if (N < 0) throw std::invalid_argument("frobenius_twist: negative twist");
    if (N == 0) return f;
    MPoly::TermMap terms;
    for (const auto& [m, c] : f.terms()) terms.emplace(m, c.frobenius(N));
    return MPoly(f.field(), f.vars(), std::move(terms));
}

inline NormExp gauss_norm_exp(const RatK& c) { return c.norm_exp(); }

inline NormExp gauss_norm_exp(const MPoly& f) {
    NormExp n = NormExp::neg_infinity();
    for (const auto& [m, c] : f.terms()) {
        NormExp cn = c.norm_exp();
        if (n < cn) n = cn;
    }
    return n;
}

// true iff every coefficient lies in the prime field F_p; the input must
// have polynomial coefficients
inline bool prime_field_coeff_check(const MPoly& f) {
    const FqField& F = f.field();
    for (const auto& [m, c] : f.terms()) {
        if (!c.is_polynomial()) throw std::domain_error("prime_field_coeff_check: rational coefficient");
        for (fq_idx v : c.num().coeffs())
            if (!F.in_prime_subfield(v)) return false;
    }
    return true;
}

// divide a polynomial-coefficient MPoly by a pure-theta polynomial g:
// f = quot * g + rem with deg_theta(rem coefficients) < deg g
inline std::pair<MPoly, MPoly> theta_divrem(const MPoly& f, const APoly& g) {
    if (g.is_zero()) throw std::domain_error("theta_divrem: division by zero");
    MPoly::TermMap tq, tr;
    for (const auto& [m, c] : f.terms()) {
        if (!c.is_polynomial()) throw std::domain_error("theta_divrem: rational coefficient");
        auto [q, r] = c.num().divrem(g);
        if (!q.is_zero()) tq.emplace(m, RatK(std::move(q)));
        if (!r.is_zero()) tr.emplace(m, RatK(std::move(r)));
    }
    return {MPoly(f.field(), f.vars(), std::move(tq)), MPoly(f.field(), f.vars(), std::move(tr))};
}

} // namespace fqzeta
