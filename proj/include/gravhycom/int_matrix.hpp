#pragma once

#include "integer.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gravhycom {

/// Sparse integer matrix in coordinate form, entries sorted by (row, col), no explicit zeros.
class IntMatrix {
public:
    struct Entry {
        std::size_t row = 0;
        std::size_t col = 0;
        Integer value;
        bool operator==(const Entry&) const = default;
    };

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Duplicate coordinates are summed; zero sums are dropped.
    static IntMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
        for (const auto& e : entries)
            if (e.row >= rows || e.col >= cols) throw std::out_of_range("IntMatrix: entry outside shape");
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        IntMatrix m(rows, cols);
        for (auto& e : entries) {
            if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
                m.entries_.back().value += e.value;
                if (m.entries_.back().value == 0) m.entries_.pop_back();
            } else if (e.value != 0) {
                m.entries_.push_back(std::move(e));
            }
        }
        return m;
    }

    static IntMatrix from_dense(const std::vector<std::vector<Integer>>& dense, std::size_t cols = 0) {
        if (!dense.empty()) cols = dense.front().size();
        std::vector<Entry> entries;
        for (std::size_t r = 0; r < dense.size(); ++r) {
            if (dense[r].size() != cols) throw std::invalid_argument("IntMatrix: ragged dense input");
            for (std::size_t c = 0; c < cols; ++c)
                if (dense[r][c] != 0) entries.push_back({r, c, dense[r][c]});
        }
        return from_triplets(dense.size(), cols, std::move(entries));
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, 1});
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Integer at(std::size_t r, std::size_t c) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                                   [](const Entry& e, const std::pair<std::size_t, std::size_t>& key) {
                                       return e.row != key.first ? e.row < key.first : e.col < key.second;
                                   });
        if (it != entries_.end() && it->row == r && it->col == c) return it->value;
        return 0;
    }

    std::vector<std::vector<Integer>> to_dense() const {
        std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_));
        for (const auto& e : entries_) d[e.row][e.col] = e.value;
        return d;
    }

    IntMatrix transpose() const {
        std::vector<Entry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
        return from_triplets(cols_, rows_, std::move(t));
    }

    std::vector<Integer> apply(const std::vector<Integer>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: size mismatch");
        std::vector<Integer> y(rows_);
        for (const auto& e : entries_)
            if (x[e.col] != 0) y[e.row] += e.value * x[e.col];
        return y;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product shape mismatch");
        std::vector<std::size_t> start(b.rows_ + 1, 0);
        for (const auto& e : b.entries_) ++start[e.row + 1];
        for (std::size_t i = 0; i < b.rows_; ++i) start[i + 1] += start[i];
        std::vector<Entry> out;
        std::vector<Integer> acc(b.cols_);
        std::vector<std::size_t> touched;
        std::vector<char> mark(b.cols_, 0);
        std::size_t k = 0;
        while (k < a.entries_.size()) {
            std::size_t row = a.entries_[k].row;
            for (; k < a.entries_.size() && a.entries_[k].row == row; ++k) {
                const auto& ea = a.entries_[k];
                for (std::size_t j = start[ea.col]; j < start[ea.col + 1]; ++j) {
                    const auto& eb = b.entries_[j];
                    if (!mark[eb.col]) {
                        mark[eb.col] = 1;
                        touched.push_back(eb.col);
                    }
                    acc[eb.col] += ea.value * eb.value;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (std::size_t c : touched) {
                if (acc[c] != 0) out.push_back({row, c, acc[c]});
                acc[c] = 0;
                mark[c] = 0;
            }
            touched.clear();
        }
        IntMatrix m(a.rows_, b.cols_);
        m.entries_ = std::move(out);
        return m;
    }

    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Entry> entries_;
};

/// Determinant by fraction-free Gaussian elimination.
inline Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    auto a = m.to_dense();
    const std::size_t n = a.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? Integer(1) : Integer(sign * a[n - 1][n - 1]);
}

}  // namespace gravhycom
