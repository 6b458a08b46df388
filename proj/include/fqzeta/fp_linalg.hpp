#pragma once

// Dense exact linear algebra over the prime field F_p: row reduction with
// deterministic pivoting (first nonzero entry in row order), rank, and
// linear-system solving. Sizes here are tiny, so no pivot heuristics.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fqzeta {

class FpMat {
  public:
    FpMat(long p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    long p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    long& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    long at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    void set(size_t r, size_t c, long v) { at(r, c) = ((v % p_) + p_) % p_; }

    // in-place reduced row echelon form; returns (rank, pivot columns)
    std::pair<size_t, std::vector<size_t>> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < cols_ && row < rows_; ++col) {
            size_t sel = rows_;
            for (size_t r = row; r < rows_; ++r)
                if (at(r, col) != 0) {
                    sel = r;
                    break;
                }
            if (sel == rows_) continue;
            if (sel != row)
                for (size_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
            long inv = mod_inv(at(row, col));
            for (size_t c = 0; c < cols_; ++c) at(row, c) = at(row, c) * inv % p_;
            for (size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col) == 0) continue;
                long f = at(r, col);
                for (size_t c = 0; c < cols_; ++c)
                    at(r, c) = ((at(r, c) - f * at(row, c)) % p_ + p_) % p_;
            }
            pivots.push_back(col);
            ++row;
        }
        return {row, pivots};
    }

    long mod_inv(long a) const {
        a = ((a % p_) + p_) % p_;
        if (a == 0) throw std::domain_error("FpMat: inverse of zero");
        long r = 1, b = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }

  private:
    long p_;
    size_t rows_, cols_;
    std::vector<long> a_;
};

// solve A x = b over F_p; returns the unique-by-pivot solution (free
// variables set to 0) or nullopt if inconsistent
inline std::optional<std::vector<long>> fp_solve(const FpMat& A, const std::vector<long>& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("fp_solve: dimension mismatch");
    FpMat aug(A.p(), A.rows(), A.cols() + 1);
    for (size_t r = 0; r < A.rows(); ++r) {
        for (size_t c = 0; c < A.cols(); ++c) aug.at(r, c) = A.at(r, c);
        aug.set(r, A.cols(), b[r]);
    }
    auto [rank, pivots] = aug.rref();
    std::vector<long> x(A.cols(), 0);
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == A.cols()) return std::nullopt; // pivot in the rhs column
        x[pivots[i]] = aug.at(i, A.cols());
    }
    return x;
}

inline size_t fp_rank(FpMat A) { return A.rref().first; }

} // namespace fqzeta
