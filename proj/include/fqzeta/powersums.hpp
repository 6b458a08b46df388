#pragma once

// Twisted power sums S_d(k; sigma_U), their partial sums, multiple twisted
// power sums of arbitrary depth, the bracket sequences l_d and b_d, the
// closed forms for S_1(0, .), S_d(1, .) and the linear-dependence report on
// the S_1(0, sigma_V).
//
// Sums over A^+(d) are evaluated over the common denominator
// prod_{a in A^+(d)} a^k, with one gcd reduction per output monomial; a
// PowerSums object memoizes every sum it computes, so identity checks that
// revisit the same (k, U, d) or composition suffix pay once.

#include "fqzeta/mpoly.hpp"

namespace fqzeta {

struct Composition {
    std::vector<std::pair<long, VarSet>> entries; // (weight n_i, block U_i)

    long depth() const { return static_cast<long>(entries.size()); }
    long weight() const {
        long w = 0;
        for (const auto& [n, u] : entries) w += n;
        return w;
    }
    VarSet sigma() const {
        VarSet s;
        for (const auto& [n, u] : entries) s = vs_union(s, u);
        return s;
    }
    void validate() const {
        if (entries.empty()) throw std::invalid_argument("Composition: depth must be >= 1");
        VarSet seen;
        for (const auto& [n, u] : entries) {
            if (n < 1) throw std::invalid_argument("Composition: weights must be >= 1");
            if (!vs_disjoint(seen, u)) throw std::invalid_argument("Composition: blocks must be disjoint");
            seen = vs_union(seen, u);
        }
    }
    bool operator<(const Composition& o) const { return entries < o.entries; }
};

struct BracketSeq {
    long d;
    APoly l;  // (theta - theta^{q^d}) ... (theta - theta^q), l_0 = 1
    MPoly b;  // (t - theta)(t - theta^q) ... (t - theta^{q^{d-1}}), b_0 = 1
};

struct Prop17Report {
    long b, N, c;
    bool condition15_holds;
    std::vector<long> failing_j;     // j where the binomial is a p-adic unit
    bool sum_vanishes;
    bool individual_nonzero_all;
    MPoly sum;                       // Sigma_{|V|=b} S_1(0, sigma_V)
};

// true iff adding x and y in base p produces at least one carry, i.e.
// v_p(binom(x+y, x)) > 0 by Kummer's theorem
inline bool base_p_carry(long long x, long long y, long p) {
    long long carry = 0;
    while (x || y || carry) {
        long long s = x % p + y % p + carry;
        carry = s / p;
        if (carry) return true;
        x /= p;
        y /= p;
    }
    return false;
}

class PowerSums {
  public:
    explicit PowerSums(const FqField& F) : F_(&F) {}

    const FqField& field() const { return *F_; }

    // S_d(k; sigma_U) = sum_{a in A^+(d)} a^{-k} sigma_U(a), k >= 0
    const MPoly& twisted(long k, const VarSet& U, long d) {
        if (k < 0 || d < 0) throw std::invalid_argument("twisted: k and d must be non-negative");
        auto key = std::make_tuple(k, U, d);
        auto it = s_cache_.find(key);
        if (it != s_cache_.end()) return it->second;
        return s_cache_.emplace(std::move(key), compute_twisted(k, U, d)).first->second;
    }

    // F_d(k, sigma_U) = sum_{j=0}^{d-1} S_j(k; sigma_U), d >= 1
    MPoly partial_F(long k, const VarSet& U, long d) {
        if (d < 1) throw std::invalid_argument("partial_F: d must be >= 1");
        MPoly r = MPoly::zero(*F_);
        for (long j = 0; j < d; ++j) r = r + twisted(k, U, j);
        return r;
    }

    // multiple twisted power sum of degree d (depth-1 reduces to twisted;
    // inner sums are evaluated by the suffix recurrence, not r-fold nesting)
    const MPoly& multiple(const Composition& comp, long d) {
        comp.validate();
        if (d < 0) throw std::invalid_argument("multiple: d must be >= 0");
        auto key = std::make_pair(comp, d);
        auto it = m_cache_.find(key);
        if (it != m_cache_.end()) return it->second;
        MPoly value = compute_multiple(comp, d);
        return m_cache_.emplace(std::move(key), std::move(value)).first->second;
    }

    // by value: the backing table may grow (and move) between calls
    APoly l(long d) {
        if (d < 0) throw std::invalid_argument("l: negative index");
        while (static_cast<long>(l_.size()) <= d) {
            if (l_.empty()) l_.push_back(APoly(*F_, 1));
            else {
                long k = static_cast<long>(l_.size());
                long long qk = 1;
                for (long i = 0; i < k; ++i) qk *= F_->q();
                APoly theta = APoly::theta(*F_);
                l_.push_back((theta - theta.pow(qk)) * l_.back());
            }
        }
        return l_[static_cast<size_t>(d)];
    }

    MPoly b(long d, int var) {
        if (d < 0) throw std::invalid_argument("b: negative index");
        while (static_cast<long>(b_coeffs_.size()) <= d) {
            if (b_coeffs_.empty()) {
                b_coeffs_.push_back({APoly(*F_, 1)}); // b_0 = 1
            } else {
                long k = static_cast<long>(b_coeffs_.size()) - 1;
                long long qk = 1;
                for (long i = 0; i < k; ++i) qk *= F_->q();
                // b_{k+1}(t) = b_k(t) * (t - theta^{q^k})
                const auto& prev = b_coeffs_.back();
                std::vector<APoly> next(prev.size() + 1, APoly(*F_));
                APoly root = APoly::theta(*F_).pow(qk);
                for (size_t i = 0; i < prev.size(); ++i) {
                    next[i + 1] = next[i + 1] + prev[i];
                    next[i] = next[i] - prev[i] * root;
                }
                b_coeffs_.push_back(std::move(next));
            }
        }
        const auto& coeffs = b_coeffs_[static_cast<size_t>(d)];
        MPoly::TermMap terms;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero())
                terms.emplace(Monomial{static_cast<std::uint32_t>(i)}, RatK(coeffs[i]));
        return MPoly(*F_, VarSet{var}, std::move(terms));
    }

    BracketSeq brackets(long d, int var = 1) { return BracketSeq{d, l(d), b(d, var)}; }

    // elementary symmetric polynomials e_0..e_{|U|} of the variables t_U
    std::vector<MPoly> elementary_symmetric(const VarSet& U) {
        std::vector<MPoly> e;
        e.push_back(MPoly::one(*F_));
        for (int v : U) {
            MPoly tv = MPoly::variable(*F_, v);
            e.push_back(MPoly::zero(*F_));
            for (size_t j = e.size() - 1; j >= 1; --j) e[j] = e[j] + tv * e[j - 1];
        }
        return e;
    }

    // S_1(0, sigma_U) = -sum_{j=1}^{floor(|U|/(q-1))} e_{|U|-j(q-1)}(t_U).
    // The overall minus sign comes from sum_{lambda} lambda^{j(q-1)} = -1
    // together with (-1)^{j(q-1)} = 1 in F_p; in characteristic 2 it is
    // invisible and the formula reads as usually printed.
    MPoly s1_zero_closed(const VarSet& U) {
        long s = static_cast<long>(U.size());
        auto e = elementary_symmetric(U);
        MPoly r = MPoly::zero(*F_);
        for (long j = 1; j * (F_->q() - 1) <= s; ++j)
            r = r - e[static_cast<size_t>(s - j * (F_->q() - 1))];
        return r;
    }

    // S_d(1, sigma_I) = prod_{i in I} b_d(t_i) / l_d, valid for |I| < q
    MPoly sd_one_closed(const VarSet& I, long d) {
        if (static_cast<long>(I.size()) >= F_->q())
            throw std::invalid_argument("sd_one_closed: requires |I| < q");
        MPoly r = MPoly::one(*F_);
        for (int i : I) r = r * b(d, i);
        return r * RatK(APoly(*F_, 1), l(d));
    }

    // condition (15) by carry counting, the subset sum of S_1(0, sigma_V),
    // and individual non-vanishing, reported independently
    Prop17Report prop17(long b, long N) {
        if (b < F_->q() || N < 1) throw std::invalid_argument("prop17: requires b >= q and N >= 1");
        long p = F_->p();
        long long pn = 1;
        for (long i = 0; i < N; ++i) pn *= p;
        Prop17Report rep{b, N, b + static_cast<long>(pn) - 1, true, {}, false, true, MPoly::zero(*F_)};
        for (long j = 1; j * (p - 1) <= b; ++j) {
            // v_p(binom(c-b+j(p-1), j(p-1))) > 0 iff adding j(p-1) and
            // c-b = p^N - 1 in base p carries
            if (!base_p_carry(j * (p - 1), pn - 1, p)) {
                rep.condition15_holds = false;
                rep.failing_j.push_back(j);
            }
        }
        MPoly sum = MPoly::zero(*F_);
        rep.individual_nonzero_all = true;
        VarSet sigma;
        for (long i = 1; i <= rep.c; ++i) sigma.push_back(static_cast<int>(i));
        for_each_subset_of_size(sigma, b, [&](const VarSet& V) {
            const MPoly& sv = twisted(0, V, 1);
            if (sv.is_zero()) rep.individual_nonzero_all = false;
            sum = sum + sv;
        });
        rep.sum_vanishes = sum.is_zero();
        rep.sum = std::move(sum);
        return rep;
    }

    template <class Fn>
    static void for_each_subset_of_size(const VarSet& sigma, long k, Fn&& fn) {
        size_t n = sigma.size();
        if (k < 0 || static_cast<size_t>(k) > n) return;
        std::vector<size_t> idx(static_cast<size_t>(k));
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        while (true) {
            VarSet v;
            v.reserve(idx.size());
            for (size_t i : idx) v.push_back(sigma[i]);
            fn(v);
            // next lexicographic combination
            size_t i = idx.size();
            while (i-- > 0) {
                if (idx[i] != i + n - idx.size()) {
                    ++idx[i];
                    for (size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) return;
            }
            if (idx.empty()) return;
        }
    }

  private:
    MPoly compute_twisted(long k, const VarSet& U, long d) {
        if (d == 0) return MPoly::one(*F_);
        std::vector<APoly> monics = monic_enumerate(*F_, d);
        if (k == 0) {
            MPoly sum = MPoly::zero(*F_);
            for (const APoly& a : monics) sum = sum + sigma_eval(a, U);
            return sum;
        }
        APoly L(*F_, 1);
        std::vector<APoly> powers;
        powers.reserve(monics.size());
        for (const APoly& a : monics) {
            powers.push_back(a.pow(k));
            L = L * powers.back();
        }
        std::map<Monomial, APoly, GradedLex> acc;
        for (size_t i = 0; i < monics.size(); ++i) {
            APoly cof = L / powers[i];
            MPoly sig = sigma_eval(monics[i], U);
            for (const auto& [m, c] : sig.aligned_terms(U))
                // sigma coefficients are F_q scalars
                if (!c.is_zero()) {
                    auto it = acc.find(m);
                    APoly add = cof.scaled(FqElem(*F_, c.num().coeffs()[0]));
                    if (it == acc.end())
                        acc.emplace(m, std::move(add));
                    else
                        it->second = it->second + add;
                }
        }
        MPoly::TermMap terms;
        for (auto& [m, c] : acc) {
            RatK rc(std::move(c), L);
            if (!rc.is_zero()) terms.emplace(m, std::move(rc));
        }
        return MPoly(*F_, U, std::move(terms));
    }

    MPoly compute_multiple(const Composition& comp, long d) {
        size_t r = comp.entries.size();
        if (r == 1) return twisted(comp.entries[0].first, comp.entries[0].second, d);
        // G[j][m] = sum over m > i_j > ... > i_r >= 0 of the suffix product;
        // G[j][m] = G[j][m-1] + S_{m-1}(n_j) * G[j+1][m-1]
        std::vector<std::vector<MPoly>> G(r + 1);
        for (size_t j = 1; j <= r; ++j) G[j].assign(static_cast<size_t>(d) + 1, MPoly::zero(*F_));
        for (size_t j = r; j >= 2; --j) {
            for (long m = 1; m <= d; ++m) {
                const MPoly& s = twisted(comp.entries[j - 1].first, comp.entries[j - 1].second, m - 1);
                MPoly tail = (j == r) ? MPoly::one(*F_) : G[j + 1][static_cast<size_t>(m - 1)];
                G[j][static_cast<size_t>(m)] = G[j][static_cast<size_t>(m - 1)] + s * tail;
            }
        }
        return twisted(comp.entries[0].first, comp.entries[0].second, d) * G[2][static_cast<size_t>(d)];
    }

    const FqField* F_;
    std::map<std::tuple<long, VarSet, long>, MPoly> s_cache_;
    std::map<std::pair<Composition, long>, MPoly> m_cache_;
    std::vector<APoly> l_;
    std::vector<std::vector<APoly>> b_coeffs_;
};

} // namespace fqzeta
