#pragma once

// Canonical text grammar, the interchange format for the CLI and golden
// files. Pinned rules:
//   - F_p residues print as decimals; F_q elements as polynomials in the
//     generator symbol `g`, highest power first (e.g. `g^2+2*g+1`).
//   - theta prints as `T`; APoly terms ascend by theta-degree (`2*T+T^3`).
//   - RatK always prints as `(<num>)/(<den>)` with the monic denominator.
//   - MPoly prints as a single fraction `(<numerator>)/(<den>)`: den is the
//     monic lcm of the coefficient denominators, the numerator's terms are
//     listed in descending graded-lex order as `<coeff>*<monomial>` with
//     variables ascending (`t1*t2^2`); unit coefficients and empty monomials
//     are omitted, multi-term coefficients are parenthesized.

#include <sstream>

#include "fqzeta/mpoly.hpp"

namespace fqzeta {

inline std::string to_string(const FqElem& a) {
    const FqField& F = a.field();
    if (F.e() == 1 || a.is_zero() || F.in_prime_subfield(a.index())) {
        // residues embed little-endian; the prime-subfield coordinate is c_0
        return std::to_string(a.coords()[0]);
    }
    std::ostringstream os;
    auto c = a.coords();
    bool first = true;
    for (size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (k == 0) {
            os << c[k];
        } else {
            if (c[k] != 1) os << c[k] << "*";
            os << "g";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

inline std::string to_string(const APoly& a) {
    if (a.is_zero()) return "0";
    const FqField& F = a.field();
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < a.coeffs().size(); ++k) {
        fq_idx c = a.coeffs()[k];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = to_string(FqElem(F, c));
        bool composite = cs.find('+') != std::string::npos;
        if (k == 0) {
            os << (composite ? "(" + cs + ")" : cs);
            continue;
        }
        if (c != 1) os << (composite ? "(" + cs + ")" : cs) << "*";
        os << "T";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

inline std::string to_string(const RatK& r) {
    return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

inline std::string monomial_string(const VarSet& vars, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "t" << vars[i];
        if (m[i] > 1) os << "^" << m[i];
    }
    return os.str();
}

inline std::string to_string(const MPoly& f) {
    if (f.is_zero()) return "(0)/(1)";
    const FqField& F = f.field();
    APoly den(F, 1);
    for (const auto& [m, c] : f.terms()) den = den * (c.den() / gcd(den, c.den()));
    std::ostringstream os;
    os << "(";
    bool first = true;
    // iterate descending graded-lex
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        APoly num = c.num() * (den / c.den());
        std::string mono = monomial_string(f.vars(), m);
        if (!first) os << "+";
        first = false;
        std::string cs = to_string(num);
        bool composite = num.coeffs().size() > 1 &&
                         std::count_if(num.coeffs().begin(), num.coeffs().end(),
                                       [](fq_idx v) { return v != 0; }) > 1;
        if (mono.empty()) {
            os << (composite ? "(" + cs + ")" : cs);
        } else if (num.is_one()) {
            os << mono;
        } else {
            os << (composite ? "(" + cs + ")" : cs) << "*" << mono;
        }
    }
    os << ")/(" << to_string(den) << ")";
    return os.str();
}

inline std::string to_string(const VarSet& v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << "}";
    return os.str();
}

} // namespace fqzeta
