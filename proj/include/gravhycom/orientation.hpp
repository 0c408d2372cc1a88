#pragma once

#include "integer.hpp"
#include "int_matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace gravhycom {

/// A set of arc-length variables. A constrained group has fixed total length, so its first
/// variable is determined by the others; a free group contributes all of its variables.
struct ArcGroup {
    std::vector<std::size_t> vars;
    bool constrained = true;
};

/// Ordered groups; the orientation is the wedge of the independent variables in order.
struct Chart {
    std::vector<ArcGroup> groups;

    std::vector<std::size_t> coordinates() const {
        std::vector<std::size_t> out;
        for (const auto& g : groups)
            for (std::size_t i = g.constrained ? 1 : 0; i < g.vars.size(); ++i) out.push_back(g.vars[i]);
        return out;
    }
};

/// Chart of a cactus word: one constrained group per lobe (increasing label), variables are
/// arc positions (shifted by offset) in reading order.
inline Chart word_chart(const std::vector<int>& word, std::size_t offset = 0) {
    int n = word.empty() ? 0 : *std::max_element(word.begin(), word.end());
    Chart c;
    c.groups.resize(n);
    for (std::size_t p = 0; p < word.size(); ++p) c.groups[word[p] - 1].vars.push_back(offset + p);
    return c;
}

inline Chart concat(Chart a, const Chart& b) {
    a.groups.insert(a.groups.end(), b.groups.begin(), b.groups.end());
    return a;
}

using LinearForm = std::vector<std::pair<std::size_t, long long>>;

/// Sign of the Jacobian of the map sending source coordinates to target coordinates, where
/// target variable t equals target_vars[t] as a linear form in the source variables.
inline int jacobian_sign(const Chart& target, const std::vector<LinearForm>& target_vars, const Chart& source) {
    std::vector<std::size_t> src = source.coordinates();
    std::map<std::size_t, std::size_t> src_pos;
    for (std::size_t i = 0; i < src.size(); ++i) src_pos[src[i]] = i;
    // each source variable as a vector over independent source coordinates
    std::map<std::size_t, std::vector<std::pair<std::size_t, long long>>> expr;
    for (const auto& g : source.groups) {
        for (std::size_t i = 0; i < g.vars.size(); ++i) {
            if (g.constrained && i == 0) {
                std::vector<std::pair<std::size_t, long long>> e;
                for (std::size_t k = 1; k < g.vars.size(); ++k) e.emplace_back(src_pos.at(g.vars[k]), -1);
                expr[g.vars[0]] = e;
            } else {
                expr[g.vars[i]] = {{src_pos.at(g.vars[i]), 1}};
            }
        }
    }
    std::vector<std::size_t> tgt = target.coordinates();
    if (tgt.size() != src.size()) throw std::logic_error("jacobian_sign: dimension mismatch");
    std::vector<IntMatrix::Entry> entries;
    for (std::size_t r = 0; r < tgt.size(); ++r)
        for (const auto& [var, coeff] : target_vars.at(tgt[r])) {
            auto it = expr.find(var);
            if (it == expr.end()) throw std::logic_error("jacobian_sign: unknown source variable");
            for (const auto& [col, c] : it->second) entries.push_back({r, col, Integer(coeff * c)});
        }
    Integer det = determinant(IntMatrix::from_triplets(tgt.size(), src.size(), std::move(entries)));
    if (det == 0) throw std::logic_error("jacobian_sign: degenerate map");
    return det > 0 ? 1 : -1;
}

/// Sign for reordering graded items. new_order[k] is the original index of the item placed at
/// position k; parities[i] is the degree parity of original item i.
inline int koszul_sign(const std::vector<std::size_t>& new_order, const std::vector<int>& parities) {
    int sign = 1;
    for (std::size_t a = 0; a < new_order.size(); ++a)
        for (std::size_t b = a + 1; b < new_order.size(); ++b)
            if (new_order[a] > new_order[b] && (parities[new_order[a]] & 1) && (parities[new_order[b]] & 1))
                sign = -sign;
    return sign;
}

/// Sign of a permutation given as images of 0..n-1.
inline int permutation_sign(const std::vector<std::size_t>& images) {
    int sign = 1;
    for (std::size_t a = 0; a < images.size(); ++a)
        for (std::size_t b = a + 1; b < images.size(); ++b)
            if (images[a] > images[b]) sign = -sign;
    return sign;
}

}  // namespace gravhycom
