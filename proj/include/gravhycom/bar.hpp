#pragma once

#include "cacti_operad.hpp"
#include "nested_tree.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

/// A nested tree with one label per vertex; labels are stored in the tree's depth-first order and
/// the label of a vertex has arity equal to its valence, lobes numbered by the min-leaf order of
/// the vertex inputs.
template <class Elem>
class DecoratedTree {
public:
    DecoratedTree(NestedTree tree, std::vector<Elem> labels) : tree_(std::move(tree)), labels_(std::move(labels)) {
        auto order = tree_.dfs_order();
        if (order.size() != labels_.size()) throw std::invalid_argument("DecoratedTree: one label per vertex required");
        for (std::size_t k = 0; k < order.size(); ++k)
            if (labels_[k].arity() != static_cast<int>(tree_.valence(order[k])))
                throw std::invalid_argument("DecoratedTree: label arity differs from vertex valence");
    }

    static DecoratedTree from_map(NestedTree tree, const std::map<LeafSet, Elem>& labels) {
        std::vector<Elem> ordered;
        for (const auto& v : tree.dfs_order()) {
            auto it = labels.find(v);
            if (it == labels.end()) throw std::invalid_argument("DecoratedTree: vertex without label");
            ordered.push_back(it->second);
        }
        if (labels.size() != ordered.size()) throw std::invalid_argument("DecoratedTree: label for a non-vertex");
        return DecoratedTree(std::move(tree), std::move(ordered));
    }

    static DecoratedTree unit() { return DecoratedTree(); }

    bool is_unit() const { return tree_.is_unit(); }
    int arity() const { return tree_.arity(); }
    const NestedTree& tree() const { return tree_; }
    const std::vector<Elem>& labels() const { return labels_; }

    const Elem& label(const LeafSet& v) const {
        auto order = tree_.dfs_order();
        for (std::size_t k = 0; k < order.size(); ++k)
            if (order[k] == v) return labels_[k];
        throw std::invalid_argument("DecoratedTree: not a vertex");
    }

    friend std::strong_ordering operator<=>(const DecoratedTree& a, const DecoratedTree& b) {
        if (auto c = a.tree_ <=> b.tree_; c != 0) return c;
        for (std::size_t k = 0; k < a.labels_.size() && k < b.labels_.size(); ++k)
            if (auto c = a.labels_[k] <=> b.labels_[k]; c != 0) return c;
        return a.labels_.size() <=> b.labels_.size();
    }
    bool operator==(const DecoratedTree&) const = default;

private:
    DecoratedTree() : tree_(NestedTree::unit()) {}

    NestedTree tree_;
    std::vector<Elem> labels_;
};

/// Graded items of an ordered tensor word: vertex tokens and (for the cobar side) block markers.
struct TensorItem {
    bool marker = false;
    LeafSet id;
    int parity = 0;
};

/// Koszul sign of rearranging `current` into `target` (items matched by identity).
inline int reorder_sign(const std::vector<TensorItem>& current, const std::vector<TensorItem>& target) {
    std::map<std::pair<bool, LeafSet>, std::size_t> where;
    for (std::size_t k = 0; k < current.size(); ++k) where[{current[k].marker, current[k].id}] = k;
    if (where.size() != target.size() || current.size() != target.size())
        throw std::logic_error("reorder_sign: item sets differ");
    std::vector<std::size_t> order;
    std::vector<int> parities;
    for (const auto& it : current) parities.push_back(it.parity);
    for (const auto& t : target) {
        auto f = where.find({t.marker, t.id});
        if (f == where.end()) throw std::logic_error("reorder_sign: item sets differ");
        order.push_back(f->second);
    }
    return koszul_sign(order, parities);
}

inline int parity_sign(long long x) { return (x % 2 == 0) ? 1 : -1; }

/// Relabelling taking the lobes of (label of a) o_slot (label of b) to the min-leaf input order
/// of the merged vertex a once the edge to b is contracted.
inline Permutation merge_permutation(const NestedTree& tree, const LeafSet& a, const LeafSet& b,
                                     const NestedTree& contracted) {
    auto a_in = tree.inputs(a);
    auto b_in = tree.inputs(b);
    const int slot = tree.input_slot(a, b);
    std::vector<LeafSet> composite(a_in.begin(), a_in.begin() + (slot - 1));
    composite.insert(composite.end(), b_in.begin(), b_in.end());
    composite.insert(composite.end(), a_in.begin() + slot, a_in.end());
    auto merged = contracted.inputs(a);
    std::vector<int> im;
    for (const auto& x : composite)
        im.push_back(static_cast<int>(std::find(merged.begin(), merged.end(), x) - merged.begin()) + 1);
    return Permutation(std::move(im));
}

/// Bar construction of an operad adapter: free cooperad on the suspension, with the internal
/// differential and the edge-contraction part.
template <class Op>
struct Bar {
    using Elem = typename Op::Element;
    using Cell = DecoratedTree<Elem>;

    static int token_parity(const Elem& e) { return (Op::degree(e) + 1) & 1; }

    static int degree(const Cell& c) {
        int d = 0;
        for (const auto& l : c.labels()) d += Op::degree(l) + 1;
        return d;
    }

    static std::vector<TensorItem> tokens(const Cell& c) {
        std::vector<TensorItem> out;
        auto order = c.tree().dfs_order();
        for (std::size_t k = 0; k < order.size(); ++k) out.push_back({false, order[k], token_parity(c.labels()[k])});
        return out;
    }

    static std::vector<Cell> basis(int n) {
        std::vector<Cell> out;
        for (const auto& t : enumerate_nested_trees(n)) {
            auto order = t.dfs_order();
            std::vector<std::vector<Elem>> choices;
            for (const auto& v : order) choices.push_back(Op::basis(static_cast<int>(t.valence(v))));
            std::vector<Elem> current;
            std::function<void(std::size_t)> rec = [&](std::size_t k) {
                if (k == order.size()) {
                    out.emplace_back(t, current);
                    return;
                }
                for (const auto& e : choices[k]) {
                    current.push_back(e);
                    rec(k + 1);
                    current.pop_back();
                }
            };
            rec(0);
        }
        return out;
    }

    /// Contraction of the edge from vertex index k (non-root) to its parent, as signed terms.
    static void contraction_terms(const Cell& z, std::size_t k, Chain<Cell>& out, int outer_sign) {
        const auto order = z.tree().dfs_order();
        const LeafSet& b = order[k];
        const LeafSet a = z.tree().parent(b);
        const std::size_t ka = static_cast<std::size_t>(std::find(order.begin(), order.end(), a) - order.begin());
        const auto toks = tokens(z);
        int between = 0, prefix = 0;
        for (std::size_t j = ka + 1; j < k; ++j) between += toks[j].parity;
        for (std::size_t j = 0; j < ka; ++j) prefix += toks[j].parity;
        const int move = parity_sign(static_cast<long long>(toks[k].parity) * between) * parity_sign(prefix);
        const int comp = parity_sign(Op::degree(z.labels()[ka]));
        NestedTree contracted = contract_edge(z.tree(), b);
        Permutation pi = merge_permutation(z.tree(), a, b, contracted);
        auto composite = Op::compose(z.labels()[ka], z.tree().input_slot(a, b), z.labels()[k]);
        for (const auto& [y, c] : composite.terms) {
            auto rel = Op::relabel(pi, y);
            std::map<LeafSet, Elem> labels;
            for (std::size_t j = 0; j < order.size(); ++j)
                if (j != k) labels.emplace(order[j], j == ka ? rel.cell : z.labels()[j]);
            Cell merged = Cell::from_map(contracted, labels);
            std::vector<TensorItem> current;
            for (std::size_t j = 0; j < order.size(); ++j)
                if (j != k) current.push_back({false, order[j], j == ka ? token_parity(rel.cell) : toks[j].parity});
            const int reorder = reorder_sign(current, tokens(merged));
            out.add(merged, c * (outer_sign * move * comp * rel.sign * reorder));
        }
    }

    static Chain<Cell> differential(const Cell& z) {
        Chain<Cell> out(degree(z) - 1);
        const auto toks = tokens(z);
        int before = 0;
        for (std::size_t k = 0; k < toks.size(); ++k) {
            for (const auto& [y, c] : Op::boundary(z.labels()[k]).terms) {
                auto labels = z.labels();
                labels[k] = y;
                out.add(Cell(z.tree(), labels), c * (-parity_sign(before)));
            }
            before += toks[k].parity;
        }
        for (std::size_t k = 1; k < toks.size(); ++k) contraction_terms(z, k, out, 1);
        return out;
    }

    static ChainComplex<Cell> complex(int n) {
        return complex_from_cells(basis(n), [](const Cell& c) { return degree(c); },
                                  [](const Cell& c) { return differential(c); });
    }

    struct Decomposition {
        int sign;
        Cell outer;
        Cell inner;
    };

    /// Component of the cooperad decomposition of z of shape (outer o_i inner), inner of arity m.
    static std::optional<Decomposition> decompose(const Cell& z, int i, int m) {
        const int n = z.arity();
        if (m < 2 || i < 1 || i + m - 1 > n || m == n) return std::nullopt;
        LeafSet block;
        for (int x = i; x < i + m; ++x) block.push_back(x);
        if (!z.tree().has_vertex(block)) return std::nullopt;
        const auto order = z.tree().dfs_order();
        std::map<LeafSet, Elem> inner_labels, outer_labels;
        std::vector<LeafSet> inner_vs, outer_vs;
        std::map<LeafSet, LeafSet> renamed;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const LeafSet& v = order[k];
            if (std::includes(block.begin(), block.end(), v.begin(), v.end())) {
                LeafSet w;
                for (int x : v) w.push_back(x - i + 1);
                inner_vs.push_back(w);
                inner_labels.emplace(w, z.labels()[k]);
                renamed[v] = w;
            } else {
                LeafSet w;
                bool inserted = false;
                for (int x : v) {
                    if (x < i)
                        w.push_back(x);
                    else if (x < i + m) {
                        if (!inserted) w.push_back(i);
                        inserted = true;
                    } else
                        w.push_back(x - m + 1);
                }
                outer_vs.push_back(w);
                outer_labels.emplace(w, z.labels()[k]);
                renamed[v] = w;
            }
        }
        Cell inner = Cell::from_map(NestedTree(m, inner_vs), inner_labels);
        Cell outer = Cell::from_map(NestedTree(n - m + 1, outer_vs), outer_labels);
        // sign of rearranging z's tokens into (outer tokens, inner tokens)
        auto toks = tokens(z);
        std::vector<TensorItem> target;
        for (const auto& v : outer.tree().dfs_order())
            for (const auto& [orig, w] : renamed)
                if (w == v && !std::includes(block.begin(), block.end(), orig.begin(), orig.end()))
                    target.push_back({false, orig, 0});
        for (const auto& v : inner.tree().dfs_order())
            for (const auto& [orig, w] : renamed)
                if (w == v && std::includes(block.begin(), block.end(), orig.begin(), orig.end()))
                    target.push_back({false, orig, 0});
        return Decomposition{reorder_sign(toks, target), outer, inner};
    }
};

/// Cobar construction on the bar cooperad: decorated trees whose internal edges are each either
/// a bar edge (inside a block) or a cobar edge (between blocks).
template <class Op>
struct CobarBar {
    using Elem = typename Op::Element;
    using BarCell = DecoratedTree<Elem>;

    struct Cell {
        BarCell base;
        std::vector<char> cut;  // per depth-first vertex: edge to the parent is a cobar edge

        friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
            if (auto c = a.base <=> b.base; c != 0) return c;
            return a.cut <=> b.cut;
        }
        bool operator==(const Cell&) const = default;
    };

    static std::vector<std::vector<std::size_t>> blocks(const Cell& c) {
        const auto order = c.base.tree().dfs_order();
        std::map<LeafSet, std::size_t> index;
        for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = k;
        std::vector<std::size_t> block_of(order.size());
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (k == 0 || c.cut[k]) {
                block_of[k] = out.size();
                out.push_back({k});
            } else {
                block_of[k] = block_of[index.at(c.base.tree().parent(order[k]))];
                out[block_of[k]].push_back(k);
            }
        }
        return out;
    }

    static int degree(const Cell& c) { return Bar<Op>::degree(c.base) - static_cast<int>(blocks(c).size()); }

    static std::vector<TensorItem> items(const Cell& c) {
        const auto order = c.base.tree().dfs_order();
        std::vector<TensorItem> out;
        for (const auto& blk : blocks(c)) {
            out.push_back({true, order[blk.front()], 1});
            for (std::size_t k : blk) out.push_back({false, order[k], Bar<Op>::token_parity(c.base.labels()[k])});
        }
        return out;
    }

    static std::vector<Cell> basis(int n) {
        std::vector<Cell> out;
        for (const auto& z : Bar<Op>::basis(n)) {
            const std::size_t v = z.labels().size();
            for (std::size_t mask = 0; mask < (std::size_t(1) << (v - 1)); ++mask) {
                std::vector<char> cut(v, 0);
                for (std::size_t k = 1; k < v; ++k) cut[k] = (mask >> (k - 1)) & 1;
                out.push_back({z, cut});
            }
        }
        return out;
    }

    static Chain<Cell> differential(const Cell& c) {
        Chain<Cell> out(degree(c) - 1);
        const auto order = c.base.tree().dfs_order();
        const auto its = items(c);
        const auto blks = blocks(c);
        std::map<LeafSet, std::size_t> pos;  // position in the item sequence
        for (std::size_t k = 0; k < its.size(); ++k)
            if (!its[k].marker) pos[its[k].id] = k;
        std::size_t item_start = 0;
        for (const auto& blk : blks) {
            int before = 0;  // parity of all items before this block's marker
            for (std::size_t k = 0; k < item_start; ++k) before += its[k].parity;
            const int outer = parity_sign(before);
            // internal differential: d(s^{-1} c) = - s^{-1} d c, then within the block
            int inside = 0;
            for (std::size_t k : blk) {
                for (const auto& [y, coeff] : Op::boundary(c.base.labels()[k]).terms) {
                    auto labels = c.base.labels();
                    labels[k] = y;
                    out.add(Cell{BarCell(c.base.tree(), labels), c.cut}, coeff * (outer * -1 * -parity_sign(inside)));
                }
                inside += its[pos[order[k]]].parity;
            }
            for (std::size_t k : blk) {
                if (k == blk.front()) continue;
                contraction(c, k, out, 1);
                split(c, k, blk, out, outer);
            }
            item_start += blk.size() + 1;
        }
        return out;
    }

    static ChainComplex<Cell> complex(int n) {
        return complex_from_cells(basis(n), [](const Cell& c) { return degree(c); },
                                  [](const Cell& c) { return differential(c); });
    }

private:
    /// Contract the bar edge above vertex k; sign relative to the item sequence of c.
    static void contraction(const Cell& c, std::size_t k, Chain<Cell>& out, int outer_sign) {
        const auto order = c.base.tree().dfs_order();
        const LeafSet& b = order[k];
        const LeafSet a = c.base.tree().parent(b);
        const auto its = items(c);
        std::size_t ia = 0, ib = 0;
        for (std::size_t j = 0; j < its.size(); ++j)
            if (!its[j].marker) {
                if (its[j].id == a) ia = j;
                if (its[j].id == b) ib = j;
            }
        int between = 0, prefix = 0;
        for (std::size_t j = ia + 1; j < ib; ++j) between += its[j].parity;
        for (std::size_t j = 0; j < ia; ++j) prefix += its[j].parity;
        const int move = parity_sign(static_cast<long long>(its[ib].parity) * between) * parity_sign(prefix);
        const std::size_t ka = static_cast<std::size_t>(std::find(order.begin(), order.end(), a) - order.begin());
        const int comp = parity_sign(Op::degree(c.base.labels()[ka]));
        NestedTree contracted = contract_edge(c.base.tree(), b);
        Permutation pi = merge_permutation(c.base.tree(), a, b, contracted);
        auto composite = Op::compose(c.base.labels()[ka], c.base.tree().input_slot(a, b), c.base.labels()[k]);
        for (const auto& [y, coeff] : composite.terms) {
            auto rel = Op::relabel(pi, y);
            std::map<LeafSet, Elem> labels;
            std::map<LeafSet, char> cuts;
            for (std::size_t j = 0; j < order.size(); ++j)
                if (j != k) {
                    labels.emplace(order[j], j == ka ? rel.cell : c.base.labels()[j]);
                    cuts.emplace(order[j], c.cut[j]);
                }
            BarCell merged = BarCell::from_map(contracted, labels);
            std::vector<char> new_cut;
            for (const auto& v : contracted.dfs_order()) new_cut.push_back(cuts.at(v));
            Cell result{merged, new_cut};
            std::vector<TensorItem> current;
            for (const auto& it : its) {
                if (!it.marker && it.id == b) continue;
                TensorItem x = it;
                if (!x.marker && x.id == a) x.parity = Bar<Op>::token_parity(rel.cell);
                current.push_back(x);
            }
            out.add(result, coeff * (outer_sign * move * comp * rel.sign * reorder_sign(current, items(result))));
        }
    }

    /// Turn the bar edge above vertex k into a cobar edge, splitting its block.
    static void split(const Cell& c, std::size_t k, const std::vector<std::size_t>& blk, Chain<Cell>& out,
                      int outer_sign) {
        const auto order = c.base.tree().dfs_order();
        const LeafSet& b = order[k];
        auto in_subtree = [&](std::size_t j) {
            return std::includes(b.begin(), b.end(), order[j].begin(), order[j].end());
        };
        const auto its = items(c);
        std::map<LeafSet, int> par;
        for (const auto& it : its)
            if (!it.marker) par[it.id] = it.parity;
        // cooperad decomposition of the block: tokens reordered as (lower, upper)
        std::vector<TensorItem> block_tokens, lower, upper;
        int lower_degree = 0;
        for (std::size_t j : blk) {
            TensorItem t{false, order[j], par[order[j]]};
            block_tokens.push_back(t);
            if (in_subtree(j))
                upper.push_back(t);
            else {
                lower.push_back(t);
                lower_degree += Op::degree(c.base.labels()[j]) + 1;
            }
        }
        std::vector<TensorItem> split_order = lower;
        split_order.insert(split_order.end(), upper.begin(), upper.end());
        const int delta = reorder_sign(block_tokens, split_order);
        Cell result = c;
        result.cut[k] = 1;
        std::vector<TensorItem> current;
        std::size_t j = 0;
        while (j < its.size()) {
            if (its[j].marker && its[j].id == order[blk.front()]) {
                current.push_back(its[j]);
                current.insert(current.end(), lower.begin(), lower.end());
                current.push_back({true, b, 1});
                current.insert(current.end(), upper.begin(), upper.end());
                j += blk.size() + 1;
            } else {
                current.push_back(its[j++]);
            }
        }
        out.add(result, outer_sign * delta * parity_sign(lower_degree) * reorder_sign(current, items(result)));
    }
};

}  // namespace gravhycom
