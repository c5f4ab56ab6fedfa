#pragma once
//
// qlinalg.hpp — small dense exact linear algebra over the rationals:
// row reduction, rank, linear solves and inverses.  Dimensions here are
// tiny (algebra and Lie-algebra coefficient spaces), so a straightforward
// fraction-exact Gauss-Jordan is entirely adequate.
//
#include "frobrauer/core.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace frobrauer {

class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), v_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    void append_row(const std::vector<Rat>& row) {
        if (cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) throw InputError("QMat::append_row: width mismatch");
        v_.insert(v_.end(), row.begin(), row.end());
        ++rows_;
    }

    // Gauss-Jordan in place; returns the rank and (optionally) the pivot columns.
    std::size_t rref(std::vector<std::size_t>* pivot_cols = nullptr) {
        if (pivot_cols) pivot_cols->clear();
        std::size_t lead = 0;
        for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
            std::size_t pivot = lead;
            while (pivot < rows_ && at(pivot, col) == 0) ++pivot;
            if (pivot == rows_) continue;
            swap_rows(pivot, lead);
            const Rat inv = Rat(1) / at(lead, col);
            for (std::size_t c = col; c < cols_; ++c) at(lead, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == lead || at(r, col) == 0) continue;
                const Rat factor = at(r, col);
                for (std::size_t c = col; c < cols_; ++c) at(r, c) -= factor * at(lead, c);
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++lead;
        }
        return lead;
    }

    std::size_t rank() const {
        QMat copy = *this;
        return copy.rref();
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    std::size_t rows_, cols_;
    std::vector<Rat> v_;
};

// Solves A x = b exactly; returns std::nullopt when inconsistent.  When the
// system is underdetermined an arbitrary particular solution is returned
// (free variables set to zero).
inline std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b) {
    if (b.size() != a.rows()) throw InputError("solve: size mismatch");
    QMat aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots;
    aug.rref(&pivots);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Rat> x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

inline std::optional<QMat> inverse(const QMat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const std::size_t n = a.rows();
    QMat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, n + r) = 1;
    }
    std::vector<std::size_t> pivots;
    aug.rref(&pivots);
    // Invertible iff every pivot lands in the left block, one per column.
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

// True when `v` lies in the row span of `rows` (each row a coefficient vector).
inline bool in_row_span(const QMat& rows, const std::vector<Rat>& v) {
    QMat m = rows;
    const std::size_t base = m.rows() == 0 ? 0 : m.rank();
    m.append_row(v);
    return m.rank() == base;
}

}  // namespace frobrauer
