#pragma once

// K = F_q(theta) as canonical reduced fractions: gcd(num, den) = 1, den
// monic, zero stored as 0/1. Equality of values is equality of
// representations.

#include "fqzeta/apoly.hpp"

namespace fqzeta {

// Integer exponent of the Gauss norm: |f| = q^value, with value = -inf for 0.
struct NormExp {
    bool neg_inf;
    long long value; // meaningful only when !neg_inf

    static NormExp neg_infinity() { return {true, 0}; }
    static NormExp of(long long v) { return {false, v}; }

    bool operator==(const NormExp& o) const {
        return neg_inf == o.neg_inf && (neg_inf || value == o.value);
    }
    bool operator!=(const NormExp& o) const { return !(*this == o); }
    bool operator<(const NormExp& o) const {
        if (neg_inf) return !o.neg_inf;
        if (o.neg_inf) return false;
        return value < o.value;
    }
    bool operator<=(const NormExp& o) const { return *this < o || *this == o; }

    NormExp operator+(const NormExp& o) const {
        if (neg_inf || o.neg_inf) return neg_infinity();
        return of(value + o.value);
    }

    std::string str() const { return neg_inf ? "-inf" : std::to_string(value); }
};

class RatK {
  public:
    explicit RatK(const FqField& F) : num_(F), den_(F, 1) {}
    RatK(const FqField& F, long long c) : num_(F, c), den_(F, 1) {}
    RatK(APoly num) : num_(std::move(num)), den_(num_.field(), 1) {}
    RatK(APoly num, APoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    const FqField& field() const { return num_.field(); }
    const APoly& num() const { return num_; }
    const APoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatK operator+(const RatK& o) const {
        APoly g = gcd(den_, o.den_);
        APoly dl = den_ / g;
        APoly dr = o.den_ / g;
        return RatK(num_ * dr + o.num_ * dl, dl * o.den_);
    }
    RatK operator-(const RatK& o) const { return *this + (-o); }
    RatK operator-() const { return make_canonical(-num_, den_); }

    RatK operator*(const RatK& o) const {
        // cross-reduce before multiplying to keep the final gcd small
        APoly g1 = gcd(num_, o.den_);
        APoly g2 = gcd(o.num_, den_);
        APoly n = (num_ / g1) * (o.num_ / g2);
        APoly d = (den_ / g2) * (o.den_ / g1);
        return make_canonical(std::move(n), std::move(d));
    }

    RatK operator/(const RatK& o) const {
        if (o.is_zero()) throw std::domain_error("RatK: division by zero");
        return *this * o.inv();
    }

    RatK inv() const {
        if (is_zero()) throw std::domain_error("RatK: inverse of zero");
        return make_canonical(den_, num_);
    }

    RatK pow(long long n) const {
        if (n < 0) return inv().pow(-n);
        // num, den coprime, den monic: powers stay canonical
        RatK r(field(), 1);
        r.num_ = num_.pow(n);
        r.den_ = den_.pow(n);
        return r;
    }

    // coefficientwise Frobenius c -> c^{q^N}
    RatK frobenius(long N = 1) const {
        long long e = 1;
        for (long i = 0; i < N; ++i) e *= field().q();
        return pow(e);
    }

    NormExp norm_exp() const {
        if (is_zero()) return NormExp::neg_infinity();
        return NormExp::of(num_.deg() - den_.deg());
    }

    bool operator==(const RatK& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatK& o) const { return !(*this == o); }

  private:
    static RatK make_canonical(APoly n, APoly d) {
        RatK r(n.field());
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.normalize_lc();
        return r;
    }

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatK: zero denominator");
        if (num_.is_zero()) {
            den_ = APoly(field(), 1);
            return;
        }
        APoly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        normalize_lc();
    }

    void normalize_lc() {
        if (num_.is_zero()) {
            den_ = APoly(field(), 1);
            return;
        }
        if (!den_.is_monic()) {
            FqElem s = den_.lc().inv();
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    APoly num_, den_;
};

inline RatK ratk_reduce(APoly num, APoly den) { return RatK(std::move(num), std::move(den)); }

} // namespace fqzeta
