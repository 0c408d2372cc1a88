#pragma once

#include "bar.hpp"
#include "homology.hpp"

#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

/// Cell of the Deligne-Mumford compactification: nested tree with a necklace per vertex.
/// The stored data is grading free; primal dimension, dual degree and bar degree are views.
using DecoratedTreeCell = DecoratedTree<NecklaceCell>;

inline int primal_dimension(const DecoratedTreeCell& c) {
    if (c.is_unit()) return 0;
    int d = 2 * static_cast<int>(c.tree().internal_edges());
    for (const auto& l : c.labels()) d += l.dimension();
    return d;
}

inline int dual_degree(const DecoratedTreeCell& c) {
    if (c.is_unit()) return 0;
    return 2 * (c.arity() - 2) - primal_dimension(c);
}

inline std::vector<DecoratedTreeCell> moduli_cells(int n) {
    if (n < 2) throw std::invalid_argument("moduli_cells: arity must be at least 2");
    return Bar<GravOperad>::basis(n);
}

/// Boundary of a primal cell. Move 1 applies the necklace boundary at one vertex; Move 2
/// contracts an edge and composes the two decorations. Koszul signs use the parities of the
/// primal contributions (dimension + 2 per vertex) in depth-first vertex order.
inline Chain<DecoratedTreeCell> primal_boundary(const DecoratedTreeCell& c) {
    Chain<DecoratedTreeCell> out(primal_dimension(c) - 1);
    const NestedTree& t = c.tree();
    const auto order = t.dfs_order();
    const auto& labels = c.labels();
    std::vector<int> dim;
    for (const auto& l : labels) dim.push_back(l.dimension());

    // Move 1
    int prefix = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int sign = -parity_sign(prefix);
        for (const auto& [face, coeff] : necklace_boundary(labels[k]).terms) {
            auto next = labels;
            next[k] = face;
            out.add(DecoratedTreeCell(t, next), coeff * sign);
        }
        prefix += dim[k];
    }

    // Move 2
    for (std::size_t k = 1; k < order.size(); ++k) {
        const LeafSet& child = order[k];
        const LeafSet parent = t.parent(child);
        std::size_t kp = 0;
        while (order[kp] != parent) ++kp;
        int skipped = 0, ahead = 0;
        for (std::size_t j = kp + 1; j < k; ++j) skipped += dim[j];
        for (std::size_t j = 0; j < kp; ++j) ahead += dim[j];
        int sign = parity_sign(static_cast<long long>(dim[k]) * skipped) * parity_sign(dim[kp] + 1 + ahead);

        NestedTree merged_tree = contract_edge(t, child);
        const auto new_order = merged_tree.dfs_order();
        Permutation pi = merge_permutation(t, parent, child, merged_tree);
        // position of each surviving vertex in the new depth-first order
        std::vector<std::size_t> old_to_new;
        for (std::size_t j = 0; j < order.size(); ++j) {
            if (j == k) continue;
            old_to_new.push_back(static_cast<std::size_t>(std::find(new_order.begin(), new_order.end(), order[j]) -
                                                          new_order.begin()));
        }
        auto composite = compose_grav(labels[kp], t.input_slot(parent, child), labels[k]);
        for (const auto& [y, coeff] : composite.terms) {
            auto rel = act(pi, y);
            std::vector<NecklaceCell> next(new_order.size(), rel.cell);
            std::vector<int> parities;
            std::size_t idx = 0;
            for (std::size_t j = 0; j < order.size(); ++j) {
                if (j == k) continue;
                if (j != kp) next[old_to_new[idx]] = labels[j];
                parities.push_back(j == kp ? rel.cell.dimension() : dim[j]);
                ++idx;
            }
            // new_positions[p] = old surviving index now at position p
            std::vector<std::size_t> new_positions(old_to_new.size());
            for (std::size_t q = 0; q < old_to_new.size(); ++q) new_positions[old_to_new[q]] = q;
            const int reorder = koszul_sign(new_positions, parities);
            out.add(DecoratedTreeCell(merged_tree, next), coeff * (sign * rel.sign * reorder));
        }
    }
    return out;
}

inline ChainComplex<DecoratedTreeCell> primal_complex(int n) {
    auto cells = moduli_cells(n);
    return complex_from_cells(cells, primal_dimension, primal_boundary);
}

/// Same cells graded by dual degree; the boundary is the transpose of the primal one.
inline ChainComplex<DecoratedTreeCell> dual_complex(int n) {
    auto primal = primal_complex(n);
    const int top = 2 * (n - 2);
    std::vector<std::vector<DecoratedTreeCell>> bases;
    std::vector<IntMatrix> boundaries;
    for (int k = 0; k <= top; ++k) {
        bases.push_back(primal.basis(top - k));
        if (k == 0)
            boundaries.emplace_back(0, primal.rank(top));
        else
            boundaries.push_back(primal.boundary(top - k + 1).transpose());
    }
    return ChainComplex<DecoratedTreeCell>(0, std::move(bases), std::move(boundaries));
}

/// Cells whose primal boundary can contain c: a vertex necklace replaced by a coface, or a
/// vertex split in two along a subset of its inputs.
inline std::vector<DecoratedTreeCell> coboundary_candidates(const DecoratedTreeCell& c) {
    std::vector<DecoratedTreeCell> out;
    const NestedTree& t = c.tree();
    const auto order = t.dfs_order();
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Word& w = c.labels()[k].word();
        const int val = c.labels()[k].arity();
        std::set<NecklaceCell> cofaces;
        for (std::size_t p = 0; p <= w.size(); ++p)
            for (int x = 1; x <= val; ++x) {
                Word longer = w;
                longer.insert(longer.begin() + static_cast<std::ptrdiff_t>(p), x);
                if (words::is_admissible_cyclic(longer, val)) cofaces.insert(NecklaceCell(longer, val));
            }
        for (const auto& f : cofaces) {
            auto labels = c.labels();
            labels[k] = f;
            out.emplace_back(t, labels);
        }
        const auto inputs = t.inputs(order[k]);
        const std::size_t m = inputs.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); ++mask) {
            if (__builtin_popcountll(mask) < 2) continue;
            LeafSet merged;
            for (std::size_t j = 0; j < m; ++j)
                if (mask >> j & 1) merged.insert(merged.end(), inputs[j].begin(), inputs[j].end());
            std::sort(merged.begin(), merged.end());
            auto vs = t.vertices();
            vs.push_back(merged);
            NestedTree bigger(t.arity(), vs);
            const int total = c.labels()[k].dimension() - 1;
            const int outer_val = static_cast<int>(bigger.valence(order[k]));
            const int inner_val = static_cast<int>(bigger.valence(merged));
            for (int d = 0; d <= total; ++d) {
                if (d > outer_val - 2 || total - d > inner_val - 2) continue;
                for (const auto& x : enumerate_necklaces(outer_val, d))
                    for (const auto& y : enumerate_necklaces(inner_val, total - d)) {
                        std::map<LeafSet, NecklaceCell> labels;
                        for (std::size_t j = 0; j < order.size(); ++j)
                            labels.emplace(order[j], j == k ? x : c.labels()[j]);
                        labels.emplace(merged, y);
                        out.push_back(DecoratedTreeCell::from_map(bigger, labels));
                    }
            }
        }
    }
    return out;
}

/// Dual boundary of a single cell, assembled from the coboundary candidates.
inline Chain<DecoratedTreeCell> dual_boundary(const DecoratedTreeCell& c) {
    Chain<DecoratedTreeCell> out(dual_degree(c) - 1);
    for (const auto& cand : coboundary_candidates(c)) out.add(cand, primal_boundary(cand).coefficient(c));
    return out;
}

/// Grafting of dual cells; decorations are carried over unchanged.
inline Signed<DecoratedTreeCell> compose_dual(const DecoratedTreeCell& x, int i, const DecoratedTreeCell& y) {
    if (i < 1 || i > x.arity()) throw std::invalid_argument("compose_dual: slot out of range");
    if (x.is_unit()) return {1, y};
    if (y.is_unit()) return {1, x};
    const int m = y.arity();
    NestedTree t = graft(x.tree(), i, y.tree());
    std::map<LeafSet, NecklaceCell> labels;
    std::vector<LeafSet> sequence;  // x vertices then y vertices, as vertices of t
    std::vector<int> parities;
    const auto xo = x.tree().dfs_order();
    for (std::size_t k = 0; k < xo.size(); ++k) {
        LeafSet w;
        for (int a : xo[k]) {
            if (a < i)
                w.push_back(a);
            else if (a == i)
                for (int s = 0; s < m; ++s) w.push_back(i + s);
            else
                w.push_back(a + m - 1);
        }
        labels.emplace(w, x.labels()[k]);
        sequence.push_back(w);
        parities.push_back(x.labels()[k].dimension());
    }
    const auto yo = y.tree().dfs_order();
    for (std::size_t k = 0; k < yo.size(); ++k) {
        LeafSet w;
        for (int a : yo[k]) w.push_back(a + i - 1);
        labels.emplace(w, y.labels()[k]);
        sequence.push_back(w);
        parities.push_back(y.labels()[k].dimension());
    }
    const auto order = t.dfs_order();
    std::vector<std::size_t> positions;
    for (const auto& v : order)
        positions.push_back(static_cast<std::size_t>(std::find(sequence.begin(), sequence.end(), v) - sequence.begin()));
    return {koszul_sign(positions, parities), DecoratedTreeCell::from_map(t, labels)};
}

inline Chain<DecoratedTreeCell> compose_dual(const Chain<DecoratedTreeCell>& x, int i,
                                             const Chain<DecoratedTreeCell>& y) {
    Chain<DecoratedTreeCell> out(x.degree + y.degree);
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) {
            auto s = compose_dual(a, i, b);
            out.add(s.cell, ca * cb * s.sign);
        }
    return out;
}

/// Symmetric group action on leaves, with necklace relabelling and Koszul signs.
inline Signed<DecoratedTreeCell> act(const Permutation& g, const DecoratedTreeCell& c) {
    if (g.size() != c.arity()) throw std::invalid_argument("act: permutation size differs from arity");
    auto image = [&](const LeafSet& v) {
        LeafSet w;
        for (int x : v) w.push_back(g(x));
        std::sort(w.begin(), w.end());
        return w;
    };
    std::vector<LeafSet> vs;
    for (const auto& v : c.tree().vertices()) vs.push_back(image(v));
    NestedTree t(c.arity(), vs);
    const auto order = c.tree().dfs_order();
    int sign = 1;
    std::map<LeafSet, NecklaceCell> labels;
    std::vector<LeafSet> sequence;
    std::vector<int> parities;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const LeafSet w = image(order[k]);
        const auto old_in = c.tree().inputs(order[k]);
        const auto new_in = t.inputs(w);
        std::vector<int> im;
        for (const auto& in : old_in)
            im.push_back(static_cast<int>(std::find(new_in.begin(), new_in.end(), image(in)) - new_in.begin()) + 1);
        auto rel = act(Permutation(im), c.labels()[k]);
        sign *= rel.sign;
        labels.emplace(w, rel.cell);
        sequence.push_back(w);
        parities.push_back(rel.cell.dimension());
    }
    const auto new_order = t.dfs_order();
    std::vector<std::size_t> positions;
    for (const auto& v : new_order)
        positions.push_back(static_cast<std::size_t>(std::find(sequence.begin(), sequence.end(), v) - sequence.begin()));
    sign *= koszul_sign(positions, parities);
    return {sign, DecoratedTreeCell::from_map(t, labels)};
}

inline std::string describe(const DecoratedTreeCell& c) {
    if (c.is_unit()) return "1";
    std::string s;
    const auto order = c.tree().dfs_order();
    for (std::size_t k = 0; k < order.size(); ++k)
        s += (k ? " " : "") + std::string("{") + to_string(order[k]) + "}" + describe_word(c.labels()[k].word(), '<', '>');
    return s;
}

/// Dual cells as an operad under grafting, graded by dual degree, with a formal unit in arity one.
struct DualOperad {
    using Element = DecoratedTreeCell;
    static constexpr bool has_unit = true;
    static constexpr int min_arity = 1;
    static int degree(const Element& e) { return dual_degree(e); }
    static int arity(const Element& e) { return e.arity(); }
    static std::vector<Element> basis(int n) { return n == 1 ? std::vector<Element>{unit()} : moduli_cells(n); }
    static Chain<Element> boundary(const Element& e) { return dual_boundary(e); }
    static Chain<Element> compose(const Element& a, int i, const Element& b) {
        auto s = compose_dual(a, i, b);
        return Chain<Element>(dual_degree(s.cell), s.cell, s.sign);
    }
    static Signed<Element> relabel(const Permutation& g, const Element& e) {
        if (e.is_unit()) return {1, e};
        return act(g, e);
    }
    static Element unit() { return Element::unit(); }
    static Chain<Element> single(const Element& e) { return Chain<Element>(dual_degree(e), e, 1); }
    static std::string describe(const Element& e) { return gravhycom::describe(e); }
};

/// Top-degree cycle of the dual complex, normalised so its first cell has coefficient +1.
inline Chain<DecoratedTreeCell> fundamental_class(int n) {
    if (n < 2) throw std::invalid_argument("fundamental_class: arity must be at least 2");
    auto dual = dual_complex(n);
    const int top = 2 * (n - 2);
    auto z = cycle_basis(dual, top);
    if (z.size() != 1) throw std::logic_error("fundamental_class: top cycles do not have rank one");
    Chain<DecoratedTreeCell> fc = z.front();
    if (fc.terms.begin()->second < 0) fc = Integer(-1) * fc;
    fc.degree = top;
    return fc;
}

struct IdentificationReport {
    bool ok = true;
    std::string diagnostic;
};

/// Compares the bar construction of grav with the primal moduli complex: same basis with bar
/// degree = primal dimension + 2, and equal differentials.
inline IdentificationReport bar_identification(int n) {
    IdentificationReport rep;
    auto bar_basis = Bar<GravOperad>::basis(n);
    auto cells = moduli_cells(n);
    std::set<DecoratedTreeCell> cell_set(cells.begin(), cells.end());
    for (const auto& z : bar_basis) {
        if (!cell_set.count(z)) {
            rep.ok = false;
            rep.diagnostic = "bar basis element without a matching cell";
            return rep;
        }
        if (Bar<GravOperad>::degree(z) != primal_dimension(z) + 2) {
            rep.ok = false;
            rep.diagnostic = "degree offset differs from 2";
            return rep;
        }
    }
    if (bar_basis.size() != cells.size()) {
        rep.ok = false;
        rep.diagnostic = "basis sizes differ";
        return rep;
    }
    for (const auto& z : bar_basis) {
        auto d_bar = Bar<GravOperad>::differential(z);
        auto d_cell = primal_boundary(z);
        if (d_bar.terms != d_cell.terms) {
            rep.ok = false;
            rep.diagnostic = "differentials differ on a basis element of bar degree " +
                             std::to_string(Bar<GravOperad>::degree(z));
            return rep;
        }
    }
    return rep;
}

struct CobarBarReport {
    HomologySummary cobar_bar;
    HomologySummary grav;  // unbased homology shifted up by one
    bool square_zero = false;
    bool match = false;
};

/// Homology of the cobar-bar resolution of grav in arity n against grav(n) itself.
inline CobarBarReport cobar_bar_homology(int n, int max_arity = 3) {
    if (n > max_arity)
        throw std::invalid_argument("cobar_bar_homology: arity " + std::to_string(n) + " exceeds the guard " +
                                    std::to_string(max_arity));
    if (n < 2) throw std::invalid_argument("cobar_bar_homology: arity must be at least 2");
    CobarBarReport rep;
    auto c = CobarBar<GravOperad>::complex(n);
    rep.square_zero = !verify_complex(c).has_value();
    if (!rep.square_zero) return rep;
    rep.cobar_bar = homology(c);
    auto h = homology(unbased_complex(n));
    for (const auto& [k, b] : h.betti) rep.grav.betti[k + 1] = b;
    for (const auto& [k, t] : h.torsion) rep.grav.torsion[k + 1] = t;
    rep.grav.euler_characteristic = -h.euler_characteristic;
    auto nonzero = [](const HomologySummary& s) {
        std::map<int, std::pair<std::size_t, std::vector<Integer>>> m;
        for (const auto& [k, b] : s.betti) {
            auto it = s.torsion.find(k);
            std::vector<Integer> t = it == s.torsion.end() ? std::vector<Integer>{} : it->second;
            if (b != 0 || !t.empty()) m[k] = {b, t};
        }
        return m;
    };
    rep.match = nonzero(rep.cobar_bar) == nonzero(rep.grav);
    return rep;
}

}  // namespace gravhycom
