#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

using LeafSet = std::vector<int>;  // sorted, distinct

/// Laminar family of subsets of {1..n}, each of size >= 2, containing the root {1..n}.
/// The arity-one unit is the only tree with an empty vertex set.
class NestedTree {
public:
    NestedTree(int n, std::vector<LeafSet> vertices) : n_(n), vertices_(std::move(vertices)) {
        if (n < 2) throw std::invalid_argument("NestedTree: arity must be at least 2");
        for (auto& v : vertices_) {
            std::sort(v.begin(), v.end());
            if (v.size() < 2) throw std::invalid_argument("NestedTree: vertex with fewer than two leaves");
            if (std::adjacent_find(v.begin(), v.end()) != v.end())
                throw std::invalid_argument("NestedTree: repeated leaf in a vertex");
            if (v.front() < 1 || v.back() > n) throw std::invalid_argument("NestedTree: leaf out of range");
        }
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw std::invalid_argument("NestedTree: duplicate vertex");
        if (!has_vertex(full_set(n))) throw std::invalid_argument("NestedTree: root missing");
        for (std::size_t a = 0; a < vertices_.size(); ++a)
            for (std::size_t b = a + 1; b < vertices_.size(); ++b)
                if (!laminar_pair(vertices_[a], vertices_[b]))
                    throw std::invalid_argument("NestedTree: vertices overlap without nesting");
    }

    static NestedTree corolla(int n) { return NestedTree(n, {full_set(n)}); }
    static NestedTree unit() { return NestedTree(); }

    bool is_unit() const { return n_ == 1; }
    int arity() const { return n_; }
    const std::vector<LeafSet>& vertices() const { return vertices_; }
    LeafSet root() const { return full_set(n_); }
    std::size_t internal_edges() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }

    bool has_vertex(const LeafSet& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    /// Smallest vertex strictly containing v.
    LeafSet parent(const LeafSet& v) const {
        require_vertex(v);
        const LeafSet* best = nullptr;
        for (const auto& w : vertices_)
            if (w.size() > v.size() && std::includes(w.begin(), w.end(), v.begin(), v.end()) &&
                (!best || w.size() < best->size()))
                best = &w;
        if (!best) throw std::invalid_argument("NestedTree::parent: the root has no parent");
        return *best;
    }

    /// Maximal proper sub-vertices and free leaves of v, as leaf sets ordered by minimal leaf.
    std::vector<LeafSet> inputs(const LeafSet& v) const {
        require_vertex(v);
        std::vector<LeafSet> kids;
        for (const auto& w : vertices_) {
            if (w.size() >= v.size() || !std::includes(v.begin(), v.end(), w.begin(), w.end())) continue;
            bool maximal = true;
            for (const auto& z : vertices_)
                if (z.size() > w.size() && z.size() < v.size() &&
                    std::includes(z.begin(), z.end(), w.begin(), w.end()) &&
                    std::includes(v.begin(), v.end(), z.begin(), z.end()))
                    maximal = false;
            if (maximal) kids.push_back(w);
        }
        std::vector<char> covered(n_ + 1, 0);
        for (const auto& k : kids)
            for (int x : k) covered[x] = 1;
        for (int x : v)
            if (!covered[x]) kids.push_back({x});
        std::sort(kids.begin(), kids.end(), [](const LeafSet& a, const LeafSet& b) { return a.front() < b.front(); });
        return kids;
    }

    std::vector<LeafSet> children(const LeafSet& v) const {
        std::vector<LeafSet> out;
        for (auto& in : inputs(v))
            if (in.size() >= 2) out.push_back(in);
        return out;
    }

    std::size_t valence(const LeafSet& v) const { return inputs(v).size(); }

    /// 1-based position of input x among the inputs of v.
    int input_slot(const LeafSet& v, const LeafSet& x) const {
        auto in = inputs(v);
        for (std::size_t k = 0; k < in.size(); ++k)
            if (in[k] == x) return static_cast<int>(k) + 1;
        throw std::invalid_argument("NestedTree::input_slot: not an input of the vertex");
    }

    /// Vertices in depth-first preorder, children visited by increasing minimal leaf.
    std::vector<LeafSet> dfs_order() const {
        std::vector<LeafSet> out;
        if (is_unit()) return out;
        std::function<void(const LeafSet&)> visit = [&](const LeafSet& v) {
            out.push_back(v);
            for (const auto& c : children(v)) visit(c);
        };
        visit(root());
        return out;
    }

    friend std::strong_ordering operator<=>(const NestedTree& a, const NestedTree& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        if (auto c = a.vertices_.size() <=> b.vertices_.size(); c != 0) return c;
        return a.vertices_ <=> b.vertices_;
    }
    bool operator==(const NestedTree&) const = default;

    static LeafSet full_set(int n) {
        LeafSet s(n);
        for (int k = 0; k < n; ++k) s[k] = k + 1;
        return s;
    }

private:
    NestedTree() : n_(1) {}

    static bool laminar_pair(const LeafSet& a, const LeafSet& b) {
        LeafSet meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        return meet.empty() || meet.size() == a.size() || meet.size() == b.size();
    }

    void require_vertex(const LeafSet& v) const {
        if (!has_vertex(v)) throw std::invalid_argument("NestedTree: not a vertex");
    }

    int n_ = 0;
    std::vector<LeafSet> vertices_;
};

/// All nested trees on n leaves, ordered by vertex count then lexicographically.
inline std::vector<NestedTree> enumerate_nested_trees(int n) {
    if (n < 2) throw std::invalid_argument("enumerate_nested_trees: arity must be at least 2");
    // families[k]: vertex sets of all nested trees on {1..k}
    std::vector<std::vector<std::vector<LeafSet>>> families(n + 1);
    for (int k = 2; k <= n; ++k) {
        std::vector<int> rgs(k, 0);  // restricted growth string of a set partition
        std::function<void(int, int)> partitions = [&](int pos, int blocks) {
            if (pos == k) {
                if (blocks < 2) return;
                std::vector<LeafSet> parts(blocks);
                for (int x = 0; x < k; ++x) parts[rgs[x]].push_back(x + 1);
                std::vector<std::vector<LeafSet>> acc = {{NestedTree::full_set(k)}};
                for (const auto& part : parts) {
                    if (part.size() < 2) continue;
                    std::vector<std::vector<LeafSet>> next;
                    for (const auto& base : acc)
                        for (const auto& sub : families[part.size()]) {
                            auto grown = base;
                            for (const auto& v : sub) {
                                LeafSet mapped;
                                for (int x : v) mapped.push_back(part[x - 1]);
                                grown.push_back(mapped);
                            }
                            next.push_back(std::move(grown));
                        }
                    acc = std::move(next);
                }
                for (auto& a : acc) families[k].push_back(std::move(a));
                return;
            }
            for (int b = 0; b <= blocks; ++b) {
                rgs[pos] = b;
                partitions(pos + 1, std::max(blocks, b + 1));
            }
        };
        partitions(0, 0);
    }
    std::vector<NestedTree> out;
    for (auto& f : families[n]) out.emplace_back(n, std::move(f));
    std::sort(out.begin(), out.end());
    return out;
}

/// Grafts the root of t onto leaf i of s.
inline NestedTree graft(const NestedTree& s, int i, const NestedTree& t) {
    if (s.is_unit()) {
        if (i != 1) throw std::invalid_argument("graft: slot out of range");
        return t;
    }
    const int n = s.arity();
    if (i < 1 || i > n) throw std::invalid_argument("graft: slot out of range");
    if (t.is_unit()) return s;
    const int m = t.arity();
    std::vector<LeafSet> vs;
    for (const auto& v : t.vertices()) {
        LeafSet w;
        for (int x : v) w.push_back(x + i - 1);
        vs.push_back(w);
    }
    for (const auto& v : s.vertices()) {
        LeafSet w;
        for (int x : v) {
            if (x < i)
                w.push_back(x);
            else if (x == i)
                for (int k = 0; k < m; ++k) w.push_back(i + k);
            else
                w.push_back(x + m - 1);
        }
        vs.push_back(w);
    }
    return NestedTree(n + m - 1, std::move(vs));
}

inline NestedTree contract_edge(const NestedTree& s, const LeafSet& v) {
    if (!s.has_vertex(v)) throw std::invalid_argument("contract_edge: not a vertex");
    if (v == s.root()) throw std::invalid_argument("contract_edge: cannot contract the root");
    std::vector<LeafSet> vs;
    for (const auto& w : s.vertices())
        if (w != v) vs.push_back(w);
    return NestedTree(s.arity(), std::move(vs));
}

inline std::string to_string(const LeafSet& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

}  // namespace gravhycom
