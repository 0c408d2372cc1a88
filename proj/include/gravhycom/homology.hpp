#pragma once

#include "chain_complex.hpp"
#include "smith.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace gravhycom {

struct HomologySummary {
    std::map<int, std::size_t> betti;
    std::map<int, std::vector<Integer>> torsion;  // invariant factors > 1
    Integer euler_characteristic;

    bool operator==(const HomologySummary&) const = default;
};

template <class Label>
void require_square_zero(const ChainComplex<Label>& c) {
    if (auto v = verify_complex(c))
        throw std::invalid_argument("boundary does not square to zero: d_" + std::to_string(v->degree - 1) + " d_" +
                                    std::to_string(v->degree) + " has entry " + to_string(v->value) + " at (" +
                                    std::to_string(v->row) + ", " + std::to_string(v->col) + ")");
}

template <class Label>
HomologySummary homology(const ChainComplex<Label>& c) {
    require_square_zero(c);
    HomologySummary h;
    std::map<int, SmithResult> snf;
    for (int k = c.min_degree(); k <= c.max_degree() + 1; ++k) snf[k] = smith_normal_form(c.boundary(k), false);
    Integer cell_euler = 0;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        std::size_t n = c.rank(k);
        std::size_t b = n - snf[k].rank - snf[k + 1].rank;
        h.betti[k] = b;
        std::vector<Integer> tors;
        for (const auto& f : snf[k + 1].invariant_factors)
            if (f > 1) tors.push_back(f);
        h.torsion[k] = tors;
        h.euler_characteristic += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(b);
        cell_euler += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
    }
    if (cell_euler != h.euler_characteristic)
        throw std::logic_error("homology: Euler characteristic disagrees with cell counts");
    return h;
}

/// Betti numbers over F_2 from an independent bit-packed elimination.
template <class Label>
std::map<int, std::size_t> homology_mod2(const ChainComplex<Label>& c) {
    std::map<int, std::size_t> ranks, betti;
    for (int k = c.min_degree(); k <= c.max_degree() + 1; ++k) ranks[k] = rank_mod2(c.boundary(k));
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) betti[k] = c.rank(k) - ranks[k] - ranks[k + 1];
    return betti;
}

/// F_2 Betti numbers predicted from integral homology by universal coefficients.
inline std::map<int, std::size_t> mod2_from_integral(const HomologySummary& h) {
    std::map<int, std::size_t> out;
    auto even_torsion = [&](int k) {
        auto it = h.torsion.find(k);
        std::size_t n = 0;
        if (it != h.torsion.end())
            for (const auto& f : it->second)
                if (f % 2 == 0) ++n;
        return n;
    };
    for (const auto& [k, b] : h.betti) out[k] = b + even_torsion(k) + even_torsion(k - 1);
    return out;
}

template <class Label>
struct NotACycle : std::invalid_argument {
    explicit NotACycle(Chain<Label> d) : std::invalid_argument("chain is not a cycle"), boundary(std::move(d)) {}
    Chain<Label> boundary;
};

/// Returns w with d w = x when x is a boundary, nullopt otherwise. Throws NotACycle if d x != 0.
template <class Label>
std::optional<Chain<Label>> is_boundary(const Chain<Label>& x, const ChainComplex<Label>& c) {
    const int k = x.degree;
    Chain<Label> dx = c.apply_boundary(x);
    if (!dx.is_zero()) throw NotACycle<Label>(dx);
    if (x.is_zero()) return Chain<Label>(k + 1);
    IntMatrix d = c.boundary(k + 1);
    SmithResult s = smith_normal_form(d, true);
    std::vector<Integer> y = s.left->apply(c.to_vector(x));
    std::vector<Integer> z(d.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.invariant_factors[i] != 0) return std::nullopt;
            z[i] = y[i] / s.invariant_factors[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    Chain<Label> w = c.from_vector(k + 1, s.right->apply(z));
    if (c.apply_boundary(w) != x) throw std::logic_error("is_boundary: witness verification failed");
    return w;
}

/// Integral basis of ker(d_k), one primitive vector per column of the right transform.
template <class Label>
std::vector<Chain<Label>> cycle_basis(const ChainComplex<Label>& c, int k) {
    IntMatrix d = c.boundary(k);
    SmithResult s = smith_normal_form(d, true);
    std::vector<Chain<Label>> out;
    auto v = s.right->transpose().to_dense();
    for (std::size_t j = s.rank; j < d.cols(); ++j) out.push_back(c.from_vector(k, v[j]));
    return out;
}

}  // namespace gravhycom
