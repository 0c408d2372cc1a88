#pragma once

#include "int_matrix.hpp"

#include <optional>
#include <vector>

namespace gravhycom {

/// left * m * right = diag(invariant_factors, 0...) with invariant_factors[i] | invariant_factors[i+1].
struct SmithResult {
    std::vector<Integer> invariant_factors;  // positive, length = rank
    std::size_t rank = 0;
    std::optional<IntMatrix> left;   // unimodular, rows x rows
    std::optional<IntMatrix> right;  // unimodular, cols x cols
};

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

/// target -= q * source
inline void row_axpy(SparseRow& target, const Integer& q, const SparseRow& source) {
    SparseRow out;
    out.reserve(target.size() + source.size());
    auto a = target.begin();
    auto b = source.begin();
    while (a != target.end() || b != source.end()) {
        if (b == source.end() || (a != target.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == target.end() || b->first < a->first) {
            out.emplace_back(b->first, -q * b->second);
            ++b;
        } else {
            Integer v = a->second - q * b->second;
            if (v != 0) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    target = std::move(out);
}

inline const Integer* row_find(const SparseRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

/// new_a = s*a + t*b, new_b = u*a + v*b
inline void row_combine(SparseRow& a, SparseRow& b, const Integer& s, const Integer& t, const Integer& u,
                        const Integer& v) {
    SparseRow na = a, nb = b;
    for (auto& e : na) e.second *= s;
    row_axpy(na, -t, b);
    for (auto& e : nb) e.second *= v;
    row_axpy(nb, -u, a);
    std::erase_if(na, [](const auto& e) { return e.second == 0; });
    std::erase_if(nb, [](const auto& e) { return e.second == 0; });
    a = std::move(na);
    b = std::move(nb);
}

inline IntMatrix rows_to_matrix(const std::vector<SparseRow>& rows, std::size_t cols,
                                const std::vector<std::size_t>& order, bool transpose) {
    std::vector<IntMatrix::Entry> entries;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& [c, v] : rows[order[i]]) {
            if (transpose)
                entries.push_back({c, i, v});
            else
                entries.push_back({i, c, v});
        }
    return transpose ? IntMatrix::from_triplets(cols, order.size(), std::move(entries))
                     : IntMatrix::from_triplets(order.size(), cols, std::move(entries));
}

/// Sparse elimination. Pivot: smallest |value|, ties broken by (row, col).
class SmithEliminator {
public:
    SmithEliminator(const IntMatrix& m, bool track) : nrows_(m.rows()), ncols_(m.cols()), track_(track) {
        rows_.resize(nrows_);
        col_rows_.resize(ncols_);
        for (const auto& e : m.entries()) {
            rows_[e.row].emplace_back(e.col, e.value);
            col_rows_[e.col].push_back(e.row);
        }
        row_active_.assign(nrows_, 1);
        if (track_) {
            u_.resize(nrows_);
            for (std::size_t i = 0; i < nrows_; ++i) u_[i].emplace_back(i, 1);
            vt_.resize(ncols_);
            for (std::size_t j = 0; j < ncols_; ++j) vt_[j].emplace_back(j, 1);
        }
    }

    SmithResult run() {
        std::size_t scan_from = 0;
        while (true) {
            auto pivot = find_pivot(scan_from);
            if (!pivot) break;
            auto [r, c] = *pivot;
            eliminate(r, c);
        }
        return finish();
    }

private:
    struct Pivot {
        std::size_t row, col;
        Integer value;
    };

    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t& scan_from) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Integer best_abs;
        while (scan_from < nrows_ && (!row_active_[scan_from] || rows_[scan_from].empty())) ++scan_from;
        for (std::size_t r = scan_from; r < nrows_; ++r) {
            if (!row_active_[r]) continue;
            for (const auto& [c, v] : rows_[r]) {
                Integer a = abs_value(v);
                if (!best || a < best_abs) {
                    best = {r, c};
                    best_abs = a;
                    if (best_abs == 1) return best;
                }
            }
        }
        return best;
    }

    void sub_row(std::size_t target, const Integer& q, std::size_t source) {
        row_axpy(rows_[target], q, rows_[source]);
        for (const auto& [c, v] : rows_[source])
            if (row_find(rows_[target], c)) col_rows_[c].push_back(target);
        if (track_) row_axpy(u_[target], q, u_[source]);
    }

    void eliminate(std::size_t r, std::size_t c) {
        while (true) {
            // clear column c below/above the pivot with row operations
            bool restarted = false;
            auto candidates = col_rows_[c];
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
            std::vector<std::size_t> live;
            for (std::size_t a : candidates) {
                if (a == r || !row_active_[a]) continue;
                const Integer* v = row_find(rows_[a], c);
                if (!v) continue;
                live.push_back(a);
            }
            col_rows_[c] = live;
            col_rows_[c].push_back(r);
            Integer p = *row_find(rows_[r], c);
            for (std::size_t a : live) {
                Integer q = *row_find(rows_[a], c) / p;
                if (q != 0) sub_row(a, q, r);
            }
            // any remainder becomes the new (smaller) pivot
            std::optional<std::size_t> smaller;
            Integer smaller_abs;
            for (std::size_t a : live) {
                const Integer* v = row_find(rows_[a], c);
                if (v && (!smaller || abs_value(*v) < smaller_abs)) {
                    smaller = a;
                    smaller_abs = abs_value(*v);
                }
            }
            if (smaller) {
                r = *smaller;
                restarted = true;
            }
            if (restarted) continue;

            // column c now only has the pivot; clear row r with column operations
            p = *row_find(rows_[r], c);
            SparseRow& row = rows_[r];
            SparseRow new_row;
            std::optional<std::size_t> next_col;
            Integer next_abs;
            for (auto& [j, v] : row) {
                if (j == c) {
                    new_row.emplace_back(j, v);
                    continue;
                }
                Integer q = v / p;
                Integer rem = v - q * p;
                if (q != 0 && track_) row_axpy(vt_[j], q, vt_[c]);
                if (rem != 0) {
                    new_row.emplace_back(j, rem);
                    if (!next_col || abs_value(rem) < next_abs) {
                        next_col = j;
                        next_abs = abs_value(rem);
                    }
                }
            }
            row = std::move(new_row);
            if (!next_col) break;
            c = *next_col;
        }
        row_active_[r] = 0;
        pivots_.push_back({r, c, *row_find(rows_[r], c)});
        rows_[r].clear();
    }

    SmithResult finish() {
        SmithResult result;
        result.rank = pivots_.size();
        // units first, keep elimination order otherwise
        std::stable_sort(pivots_.begin(), pivots_.end(), [](const Pivot& a, const Pivot& b) {
            return (abs_value(a.value) != 1) < (abs_value(b.value) != 1);
        });
        std::size_t first_nonunit = 0;
        while (first_nonunit < pivots_.size() && abs_value(pivots_[first_nonunit].value) == 1) ++first_nonunit;
        // gcd/lcm fix-up so that d_i | d_{i+1}
        for (std::size_t i = first_nonunit; i < pivots_.size(); ++i) {
            for (std::size_t j = i + 1; j < pivots_.size(); ++j) {
                Integer a = pivots_[i].value, b = pivots_[j].value;
                if (b % a == 0) continue;
                Integer s, t;
                Integer g = extended_gcd(a, b, s, t);
                if (track_) {
                    // U rows: (s*ra + t*rb, -(b/g)*ra + (a/g)*rb)
                    row_combine(u_[pivots_[i].row], u_[pivots_[j].row], s, t, Integer(-(b / g)), Integer(a / g));
                    // V columns: (ca + cb, -(t b/g) ca + (s a/g) cb)
                    row_combine(vt_[pivots_[i].col], vt_[pivots_[j].col], 1, 1, Integer(-(t * b / g)),
                                Integer(s * a / g));
                }
                pivots_[i].value = g;
                pivots_[j].value = a / g * b;
            }
        }
        for (auto& p : pivots_) {
            if (p.value < 0) {
                p.value = -p.value;
                if (track_)
                    for (auto& e : u_[p.row]) e.second = -e.second;
            }
            result.invariant_factors.push_back(p.value);
        }
        if (track_) {
            std::vector<char> used_r(nrows_, 0), used_c(ncols_, 0);
            std::vector<std::size_t> row_order, col_order;
            for (const auto& p : pivots_) {
                row_order.push_back(p.row);
                col_order.push_back(p.col);
                used_r[p.row] = used_c[p.col] = 1;
            }
            for (std::size_t i = 0; i < nrows_; ++i)
                if (!used_r[i]) row_order.push_back(i);
            for (std::size_t j = 0; j < ncols_; ++j)
                if (!used_c[j]) col_order.push_back(j);
            result.left = rows_to_matrix(u_, nrows_, row_order, false);
            result.right = rows_to_matrix(vt_, ncols_, col_order, true);
        }
        return result;
    }

    std::size_t nrows_, ncols_;
    bool track_;
    std::vector<SparseRow> rows_;
    std::vector<std::vector<std::size_t>> col_rows_;
    std::vector<char> row_active_;
    std::vector<SparseRow> u_, vt_;
    std::vector<Pivot> pivots_;
};

}  // namespace detail

/// Smith normal form over Z. Transforms are only accumulated when requested.
inline SmithResult smith_normal_form(const IntMatrix& m, bool with_transforms = true) {
    return detail::SmithEliminator(m, with_transforms).run();
}

/// Rank over F_2, computed with packed bit rows independently of the integer elimination.
inline std::size_t rank_mod2(const IntMatrix& m) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (const auto& e : m.entries())
        if (boost::multiprecision::bit_test(abs_value(e.value), 0)) rows[e.row][e.col / 64] |= (1ULL << (e.col % 64));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = 1ULL << (col % 64);
        std::size_t p = rank;
        while (p < rows.size() && !(rows[p][w] & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i)
            if (rows[i][w] & bit)
                for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[rank][k];
        ++rank;
    }
    return rank;
}

}  // namespace gravhycom
