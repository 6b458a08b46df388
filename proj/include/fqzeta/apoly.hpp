#pragma once

// The ring A = F_q[theta]: dense univariate polynomials, exact arithmetic,
// monic enumeration, trial-division factorization.

#include <algorithm>
#include <utility>

#include "fqzeta/fq.hpp"

namespace fqzeta {

class APoly {
  public:
    explicit APoly(const FqField& F) : F_(&F) {}
    APoly(const FqField& F, long long c) : F_(&F) {
        fq_idx v = F.from_int(c);
        if (v != 0) c_.push_back(v);
    }
    APoly(const FqField& F, FqElem c) : F_(&F) {
        if (!c.is_zero()) c_.push_back(c.index());
    }
    APoly(const FqField& F, std::vector<fq_idx> coeffs) : F_(&F), c_(std::move(coeffs)) { trim(); }

    static APoly theta(const FqField& F) { return APoly(F, std::vector<fq_idx>{0, 1}); }

    const FqField& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    // degree of the zero polynomial is -1 by convention
    long deg() const { return static_cast<long>(c_.size()) - 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    FqElem coeff(size_t i) const { return FqElem(*F_, i < c_.size() ? c_[i] : 0); }
    FqElem lc() const {
        if (c_.empty()) throw std::domain_error("APoly: leading coefficient of zero");
        return FqElem(*F_, c_.back());
    }
    const std::vector<fq_idx>& coeffs() const { return c_; }

    APoly operator+(const APoly& o) const {
        check_field(o);
        std::vector<fq_idx> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = F_->add(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
        return APoly(*F_, std::move(r));
    }

    APoly operator-(const APoly& o) const {
        check_field(o);
        std::vector<fq_idx> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = F_->sub(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
        return APoly(*F_, std::move(r));
    }

    APoly operator-() const {
        std::vector<fq_idx> r(c_);
        for (auto& v : r) v = F_->neg(v);
        return APoly(*F_, std::move(r));
    }

    APoly operator*(const APoly& o) const {
        check_field(o);
        if (c_.empty() || o.c_.empty()) return APoly(*F_);
        std::vector<fq_idx> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            fq_idx a = c_[i];
            if (a == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) continue;
                r[i + j] = F_->add(r[i + j], F_->mul(a, o.c_[j]));
            }
        }
        return APoly(*F_, std::move(r));
    }

    APoly scaled(FqElem s) const {
        std::vector<fq_idx> r(c_);
        for (auto& v : r) v = F_->mul(v, s.index());
        return APoly(*F_, std::move(r));
    }

    // returns (quotient, remainder) with deg rem < deg divisor
    std::pair<APoly, APoly> divrem(const APoly& d) const {
        check_field(d);
        if (d.is_zero()) throw std::domain_error("APoly: division by zero");
        if (deg() < d.deg()) return {APoly(*F_), *this};
        std::vector<fq_idx> rem(c_);
        std::vector<fq_idx> quot(static_cast<size_t>(deg() - d.deg()) + 1, 0);
        fq_idx dlc_inv = F_->inv(d.c_.back());
        for (long i = deg(); i >= d.deg(); --i) {
            fq_idx top = rem[static_cast<size_t>(i)];
            if (top == 0) continue;
            fq_idx f = F_->mul(top, dlc_inv);
            size_t shift = static_cast<size_t>(i - d.deg());
            quot[shift] = f;
            for (size_t j = 0; j < d.c_.size(); ++j)
                rem[shift + j] = F_->sub(rem[shift + j], F_->mul(f, d.c_[j]));
        }
        return {APoly(*F_, std::move(quot)), APoly(*F_, std::move(rem))};
    }

    APoly operator/(const APoly& d) const { return divrem(d).first; }
    APoly operator%(const APoly& d) const { return divrem(d).second; }

    APoly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inv());
    }

    APoly pow(long long n) const {
        if (n < 0) throw std::domain_error("APoly: negative power");
        APoly r(*F_, 1), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    FqElem eval(FqElem x) const {
        FqElem r(*F_, 0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + FqElem(*F_, c_[i]);
        return r;
    }

    bool operator==(const APoly& o) const { return F_->same_as(*o.F_) && c_ == o.c_; }
    bool operator!=(const APoly& o) const { return !(*this == o); }
    // deterministic total order: by degree, then coefficient indices from the top
    bool operator<(const APoly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        for (size_t i = c_.size(); i-- > 0;)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check_field(const APoly& o) const {
        if (!F_->same_as(*o.F_)) throw std::invalid_argument("APoly: mixed fields");
    }

    const FqField* F_;
    std::vector<fq_idx> c_;
};

inline APoly gcd(APoly a, APoly b) {
    while (!b.is_zero()) {
        APoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// All q^d monic polynomials of degree d, ordered lexicographically by the
// coefficient tuple (c_0, ..., c_{d-1}) with F_q elements in index order.
inline std::vector<APoly> monic_enumerate(const FqField& F, long d) {
    if (d < 0) throw std::invalid_argument("monic_enumerate: negative degree");
    long long count = 1;
    for (long i = 0; i < d; ++i) count *= F.q();
    std::vector<APoly> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<fq_idx> c(static_cast<size_t>(d) + 1, 0);
    c[static_cast<size_t>(d)] = 1;
    for (long long n = 0; n < count; ++n) {
        long long m = n;
        for (long i = 0; i < d; ++i) {
            c[static_cast<size_t>(d - 1 - i)] = static_cast<fq_idx>(m % F.q());
            m /= F.q();
        }
        out.emplace_back(F, c);
    }
    return out;
}

inline bool is_irreducible(const APoly& a) {
    if (a.deg() < 1) return false;
    const FqField& F = a.field();
    for (long d = 1; 2 * d <= a.deg(); ++d)
        for (const APoly& div : monic_enumerate(F, d))
            if ((a % div).is_zero()) return false;
    return true;
}

namespace detail {
inline long moebius(long n) {
    long mu = 1;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}
} // namespace detail

// All monic irreducibles of degree exactly d; the count is asserted against
// the necklace formula (1/d) sum_{m|d} mu(m) q^{d/m}.
inline std::vector<APoly> irreducible_enumerate(const FqField& F, long d) {
    if (d < 1) throw std::invalid_argument("irreducible_enumerate: degree must be positive");
    std::vector<APoly> out;
    for (const APoly& a : monic_enumerate(F, d))
        if (is_irreducible(a)) out.push_back(a);
    long long expected = 0;
    for (long m = 1; m <= d; ++m) {
        if (d % m != 0) continue;
        long long qk = 1;
        for (long i = 0; i < d / m; ++i) qk *= F.q();
        expected += detail::moebius(m) * qk;
    }
    expected /= d;
    if (static_cast<long long>(out.size()) != expected)
        throw std::logic_error("irreducible_enumerate: count disagrees with necklace formula");
    return out;
}

// a = lc * prod P_i^{e_i} with P_i monic irreducible, by trial division in
// enumeration order; factors come out sorted by degree, then order.
inline std::vector<std::pair<APoly, int>> apoly_factor(const APoly& a) {
    if (a.is_zero()) throw std::domain_error("apoly_factor: zero input");
    const FqField& F = a.field();
    std::vector<std::pair<APoly, int>> factors;
    APoly rest = a.monic();
    for (long d = 1; rest.deg() > 0 && 2 * d <= rest.deg(); ++d) {
        for (const APoly& p : monic_enumerate(F, d)) {
            if (rest.deg() < 2 * d) break;
            int mult = 0;
            while (true) {
                auto [q, r] = rest.divrem(p);
                if (!r.is_zero()) break;
                rest = q;
                ++mult;
            }
            if (mult > 0) factors.emplace_back(p, mult); // p is irreducible: smaller factors are gone
        }
    }
    if (rest.deg() > 0) factors.emplace_back(rest, 1);
    return factors;
}

} // namespace fqzeta
