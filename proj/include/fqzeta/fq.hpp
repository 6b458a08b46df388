#pragma once

// Finite field F_q, q = p^e, with explicit power-basis representation.
// Elements are stored as an index in [0, q); index n has coordinates
// (n mod p, (n/p) mod p, ...) w.r.t. the basis 1, g, g^2, ... where g is
// the residue of x modulo the defining polynomial. Arithmetic goes through
// per-field lookup tables, so q is capped (far above anything this library
// is used for).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqzeta {

using fq_idx = std::uint16_t;

namespace detail {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Arithmetic on F_p[x] as coefficient vectors, used only to bootstrap the
// extension-field tables.
inline std::vector<int> fpx_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> fpx_mul(const std::vector<int>& a, const std::vector<int>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    return fpx_trim(std::move(r));
}

inline std::vector<int> fpx_mod(std::vector<int> a, const std::vector<int>& m, long p) {
    // m monic
    while (a.size() >= m.size() && !m.empty()) {
        a = fpx_trim(std::move(a));
        if (a.size() < m.size()) break;
        int lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            long v = a[shift + i] - static_cast<long>(lead) * m[i];
            a[shift + i] = static_cast<int>(((v % p) + p) % p);
        }
        a = fpx_trim(std::move(a));
    }
    return a;
}

inline bool fpx_is_irreducible(const std::vector<int>& f, long p) {
    // trial division by every monic polynomial of degree 1..deg/2
    if (f.size() < 2) return false;
    size_t deg = f.size() - 1;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        std::vector<int> div(d + 1, 0);
        div[d] = 1;
        // iterate over all p^d choices of lower coefficients
        long total = 1;
        for (size_t i = 0; i < d; ++i) total *= p;
        for (long n = 0; n < total; ++n) {
            long m = n;
            for (size_t i = 0; i < d; ++i) {
                div[i] = static_cast<int>(m % p);
                m /= p;
            }
            if (fpx_mod(f, div, p).empty()) return false;
        }
    }
    return true;
}

} // namespace detail

class FqField {
  public:
    // modulus: coefficients c_0..c_e of a monic irreducible polynomial over
    // F_p (only consulted when e > 1; when absent, the lexicographically
    // least monic irreducible of degree e is chosen).
    explicit FqField(long p, int e = 1, std::optional<std::vector<int>> modulus = std::nullopt)
        : p_(p), e_(e) {
        if (!detail::is_prime(p)) throw std::invalid_argument("FqField: p = " + std::to_string(p) + " is not prime");
        if (e < 1) throw std::invalid_argument("FqField: e must be >= 1");
        long q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            if (q > kMaxQ) throw std::invalid_argument("FqField: q exceeds supported size");
        }
        q_ = q;
        if (e_ == 1) {
            if (modulus) throw std::invalid_argument("FqField: modulus only meaningful for e > 1");
            modulus_ = {0, 1}; // x, unused
        } else {
            if (modulus) {
                modulus_ = *modulus;
                validate_modulus();
            } else {
                modulus_ = default_modulus();
            }
        }
        build_tables();
    }

    long p() const { return p_; }
    int e() const { return e_; }
    long q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    fq_idx zero() const { return 0; }
    fq_idx one() const { return 1; }
    // generator g of the power basis (only meaningful for e > 1)
    fq_idx gen() const { return static_cast<fq_idx>(e_ > 1 ? p_ : 1); }

    fq_idx add(fq_idx a, fq_idx b) const { return add_[idx(a, b)]; }
    fq_idx sub(fq_idx a, fq_idx b) const { return add_[idx(a, neg_[b])]; }
    fq_idx mul(fq_idx a, fq_idx b) const { return mul_[idx(a, b)]; }
    fq_idx neg(fq_idx a) const { return neg_[a]; }
    fq_idx inv(fq_idx a) const {
        if (a == 0) throw std::domain_error("FqField: inverse of zero");
        return inv_[a];
    }

    fq_idx pow(fq_idx a, long long n) const {
        if (n < 0) return pow(inv(a), -n);
        fq_idx r = 1, base = a;
        while (n) {
            if (n & 1) r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    // canonical image of an integer under Z -> F_p -> F_q
    fq_idx from_int(long long n) const {
        long long r = n % p_;
        if (r < 0) r += p_;
        return static_cast<fq_idx>(r);
    }

    // coordinates w.r.t. the power basis, little-endian
    std::vector<int> coords(fq_idx a) const {
        std::vector<int> c(static_cast<size_t>(e_));
        long v = a;
        for (int i = 0; i < e_; ++i) {
            c[static_cast<size_t>(i)] = static_cast<int>(v % p_);
            v /= p_;
        }
        return c;
    }

    bool in_prime_subfield(fq_idx a) const { return pow(a, p_) == a; }

    bool same_as(const FqField& other) const {
        return p_ == other.p_ && e_ == other.e_ && (e_ == 1 || modulus_ == other.modulus_);
    }

  private:
    static constexpr long kMaxQ = 1024;

    size_t idx(fq_idx a, fq_idx b) const { return static_cast<size_t>(a) * static_cast<size_t>(q_) + b; }

    void validate_modulus() {
        if (modulus_.size() != static_cast<size_t>(e_) + 1 || modulus_.back() != 1)
            throw std::invalid_argument("FqField: modulus must be monic of degree e");
        for (int c : modulus_)
            if (c < 0 || c >= p_) throw std::invalid_argument("FqField: modulus coefficients must be reduced mod p");
        if (!detail::fpx_is_irreducible(modulus_, p_))
            throw std::invalid_argument("FqField: modulus is reducible over F_p");
    }

    std::vector<int> default_modulus() const {
        // least monic irreducible of degree e, comparing coefficient tuples
        // (c_0, ..., c_{e-1}) lexicographically
        std::vector<int> f(static_cast<size_t>(e_) + 1, 0);
        f[static_cast<size_t>(e_)] = 1;
        long total = 1;
        for (int i = 0; i < e_; ++i) total *= p_;
        for (long n = 0; n < total; ++n) {
            long m = n;
            for (int i = e_ - 1; i >= 0; --i) {
                f[static_cast<size_t>(i)] = static_cast<int>(m % p_);
                m /= p_;
            }
            if (detail::fpx_is_irreducible(f, p_)) return f;
        }
        throw std::logic_error("FqField: no irreducible modulus found"); // unreachable
    }

    void build_tables() {
        size_t n = static_cast<size_t>(q_);
        add_.resize(n * n);
        mul_.resize(n * n);
        neg_.resize(n);
        inv_.resize(n);
        for (fq_idx a = 0; a < q_; ++a) {
            auto ca = coords(a);
            // negation
            long nv = 0, pw = 1;
            for (int i = 0; i < e_; ++i) {
                nv += ((p_ - ca[static_cast<size_t>(i)]) % p_) * pw;
                pw *= p_;
            }
            neg_[a] = static_cast<fq_idx>(nv);
            for (fq_idx b = 0; b < q_; ++b) {
                auto cb = coords(b);
                long sv = 0;
                pw = 1;
                for (int i = 0; i < e_; ++i) {
                    sv += ((ca[static_cast<size_t>(i)] + cb[static_cast<size_t>(i)]) % p_) * pw;
                    pw *= p_;
                }
                add_[idx(a, b)] = static_cast<fq_idx>(sv);
                // multiply as polynomials in g, reduce mod modulus
                std::vector<int> prod = detail::fpx_mul(detail::fpx_trim(ca), detail::fpx_trim(cb), p_);
                if (e_ > 1) prod = detail::fpx_mod(std::move(prod), modulus_, p_);
                long mv = 0;
                pw = 1;
                for (size_t i = 0; i < prod.size(); ++i) {
                    mv += prod[i] * pw;
                    pw *= p_;
                }
                mul_[idx(a, b)] = static_cast<fq_idx>(mv);
            }
        }
        inv_[0] = 0;
        for (fq_idx a = 1; a < q_; ++a)
            for (fq_idx b = 1; b < q_; ++b)
                if (mul(a, b) == 1) {
                    inv_[a] = b;
                    break;
                }
    }

    long p_;
    int e_;
    long q_;
    std::vector<int> modulus_;
    std::vector<fq_idx> add_, mul_, neg_, inv_;
};

// Value-semantic field element; carries its field context.
class FqElem {
  public:
    FqElem() : F_(nullptr), v_(0) {}
    FqElem(const FqField& F, fq_idx v) : F_(&F), v_(v) {}

    const FqField& field() const { return *F_; }
    fq_idx index() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::vector<int> coords() const { return F_->coords(v_); }

    FqElem operator+(FqElem o) const { return FqElem(*F_, F_->add(v_, o.v_)); }
    FqElem operator-(FqElem o) const { return FqElem(*F_, F_->sub(v_, o.v_)); }
    FqElem operator*(FqElem o) const { return FqElem(*F_, F_->mul(v_, o.v_)); }
    FqElem operator-() const { return FqElem(*F_, F_->neg(v_)); }
    FqElem inv() const { return FqElem(*F_, F_->inv(v_)); }
    FqElem pow(long long n) const { return FqElem(*F_, F_->pow(v_, n)); }

    bool operator==(FqElem o) const { return v_ == o.v_; }
    bool operator!=(FqElem o) const { return v_ != o.v_; }

  private:
    const FqField* F_;
    fq_idx v_;
};

} // namespace fqzeta
