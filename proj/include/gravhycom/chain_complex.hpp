#pragma once

#include "int_matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

/// Finite integral combination of cells of one degree.
template <class Label>
struct Chain {
    int degree = 0;
    std::map<Label, Integer> terms;

    Chain() = default;
    explicit Chain(int deg) : degree(deg) {}
    Chain(int deg, const Label& cell, Integer coeff = 1) : degree(deg) { add(cell, std::move(coeff)); }

    void add(const Label& cell, const Integer& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms.try_emplace(cell, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }
    void add(const Chain& other, const Integer& scale = 1) {
        if (terms.empty()) degree = other.degree;
        for (const auto& [cell, c] : other.terms) add(cell, c * scale);
    }
    Integer coefficient(const Label& cell) const {
        auto it = terms.find(cell);
        return it == terms.end() ? Integer(0) : it->second;
    }
    bool is_zero() const { return terms.empty(); }
    std::size_t size() const { return terms.size(); }

    Chain& operator+=(const Chain& o) {
        add(o);
        return *this;
    }
    Chain& operator-=(const Chain& o) {
        add(o, -1);
        return *this;
    }
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Integer& s, Chain a) {
        if (s == 0) a.terms.clear();
        for (auto& [cell, c] : a.terms) c *= s;
        return a;
    }
    bool operator==(const Chain& o) const { return terms == o.terms && (terms.empty() || degree == o.degree); }
};

/// Chain complex with cells in degrees min_degree()..max_degree(); boundary(k): C_k -> C_{k-1}.
template <class Label>
class ChainComplex {
public:
    ChainComplex() = default;

    /// boundaries[i] is the boundary from degree min_degree+i; its row count must match the degree below.
    ChainComplex(int min_degree, std::vector<std::vector<Label>> bases, std::vector<IntMatrix> boundaries)
        : min_degree_(min_degree), bases_(std::move(bases)), boundaries_(std::move(boundaries)) {
        if (boundaries_.size() != bases_.size())
            throw std::invalid_argument("ChainComplex: one boundary matrix per degree required");
        for (std::size_t i = 0; i < bases_.size(); ++i) {
            std::size_t below = i == 0 ? 0 : bases_[i - 1].size();
            if (boundaries_[i].cols() != bases_[i].size() || boundaries_[i].rows() != below)
                throw std::invalid_argument("ChainComplex: boundary shape mismatch in degree " +
                                            std::to_string(min_degree + static_cast<int>(i)));
        }
        index_.resize(bases_.size());
        for (std::size_t i = 0; i < bases_.size(); ++i)
            for (std::size_t j = 0; j < bases_[i].size(); ++j)
                if (!index_[i].emplace(bases_[i][j], j).second)
                    throw std::invalid_argument("ChainComplex: duplicate cell label");
    }

    /// Builds the matrices from a cell-level boundary function.
    static ChainComplex build(int min_degree, std::vector<std::vector<Label>> bases,
                              const std::function<Chain<Label>(const Label&)>& boundary) {
        ChainComplex c(min_degree, std::move(bases));
        for (std::size_t i = 0; i < c.bases_.size(); ++i) {
            std::vector<IntMatrix::Entry> entries;
            for (std::size_t j = 0; j < c.bases_[i].size(); ++j) {
                Chain<Label> b = boundary(c.bases_[i][j]);
                for (const auto& [cell, coeff] : b.terms) {
                    auto row = i == 0 ? std::nullopt : c.lookup(i - 1, cell);
                    if (!row)
                        throw std::logic_error("ChainComplex::build: boundary leaves the basis in degree " +
                                               std::to_string(min_degree + static_cast<int>(i)));
                    entries.push_back({*row, j, coeff});
                }
            }
            std::size_t below = i == 0 ? 0 : c.bases_[i - 1].size();
            c.boundaries_[i] = IntMatrix::from_triplets(below, c.bases_[i].size(), std::move(entries));
        }
        return c;
    }

    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(bases_.size()) - 1; }
    bool in_range(int k) const { return k >= min_degree_ && k <= max_degree(); }

    const std::vector<Label>& basis(int k) const {
        static const std::vector<Label> empty;
        return in_range(k) ? bases_[k - min_degree_] : empty;
    }
    std::size_t rank(int k) const { return basis(k).size(); }

    /// Matrix of C_k -> C_{k-1}; zero matrix of the right shape outside the range.
    IntMatrix boundary(int k) const {
        if (in_range(k)) return boundaries_[k - min_degree_];
        return IntMatrix(rank(k - 1), rank(k));
    }

    std::optional<std::size_t> index_of(int k, const Label& cell) const {
        if (!in_range(k)) return std::nullopt;
        return lookup(k - min_degree_, cell);
    }

    std::vector<Integer> to_vector(const Chain<Label>& x) const {
        std::vector<Integer> v(rank(x.degree));
        for (const auto& [cell, c] : x.terms) {
            auto i = index_of(x.degree, cell);
            if (!i) throw std::invalid_argument("ChainComplex: chain term not in basis");
            v[*i] += c;
        }
        return v;
    }

    Chain<Label> from_vector(int k, const std::vector<Integer>& v) const {
        Chain<Label> x(k);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) x.add(basis(k)[i], v[i]);
        return x;
    }

    Chain<Label> apply_boundary(const Chain<Label>& x) const {
        return from_vector(x.degree - 1, boundary(x.degree).apply(to_vector(x)));
    }

private:
    ChainComplex(int min_degree, std::vector<std::vector<Label>> bases)
        : min_degree_(min_degree), bases_(std::move(bases)), boundaries_(bases_.size()) {
        index_.resize(bases_.size());
        for (std::size_t i = 0; i < bases_.size(); ++i)
            for (std::size_t j = 0; j < bases_[i].size(); ++j)
                if (!index_[i].emplace(bases_[i][j], j).second)
                    throw std::invalid_argument("ChainComplex: duplicate cell label");
    }

    std::optional<std::size_t> lookup(std::size_t i, const Label& cell) const {
        auto it = index_[i].find(cell);
        if (it == index_[i].end()) return std::nullopt;
        return it->second;
    }

    int min_degree_ = 0;
    std::vector<std::vector<Label>> bases_;
    std::vector<IntMatrix> boundaries_;
    std::vector<std::map<Label, std::size_t>> index_;
};

/// First nonzero entry of some d_{k-1} d_k, if any.
struct SquareZeroViolation {
    int degree = 0;  // k in d_{k-1} d_k
    std::size_t row = 0, col = 0;
    Integer value;
};

template <class Label>
std::optional<SquareZeroViolation> verify_complex(const ChainComplex<Label>& c) {
    for (int k = c.min_degree() + 1; k <= c.max_degree(); ++k) {
        IntMatrix p = c.boundary(k - 1) * c.boundary(k);
        if (!p.is_zero()) {
            const auto& e = p.entries().front();
            return SquareZeroViolation{k, e.row, e.col, e.value};
        }
    }
    return std::nullopt;
}

}  // namespace gravhycom

namespace gravhycom {

/// Groups cells by degree into a contiguous range and builds the boundary matrices.
template <class Label, class DegreeFn, class BoundaryFn>
ChainComplex<Label> complex_from_cells(const std::vector<Label>& cells, DegreeFn&& degree, BoundaryFn&& boundary) {
    if (cells.empty()) return ChainComplex<Label>();
    int lo = degree(cells.front()), hi = lo;
    for (const auto& c : cells) {
        lo = std::min(lo, degree(c));
        hi = std::max(hi, degree(c));
    }
    std::vector<std::vector<Label>> bases(hi - lo + 1);
    for (const auto& c : cells) bases[degree(c) - lo].push_back(c);
    return ChainComplex<Label>::build(lo, std::move(bases),
                                      [&](const Label& c) { return Chain<Label>(boundary(c)); });
}

}  // namespace gravhycom
