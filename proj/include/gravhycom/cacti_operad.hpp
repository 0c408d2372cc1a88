#pragma once

#include "cacti.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

/// Partial composition u o_i v of based cells: lobe i of u is rescaled to the outside circle of v
/// and cut at the images of the arcs of lobe i. One summand per way of distributing the cut
/// points over the arcs of v.
inline Chain<BasedCactusCell> compose_based(const BasedCactusCell& u, int i, const BasedCactusCell& v) {
    const int n = u.arity(), m = v.arity();
    if (i < 1 || i > n) throw std::invalid_argument("compose_based: slot out of range");
    const Word& uw = u.word();
    const Word& vw = v.word();
    const std::size_t lu = uw.size(), lv = vw.size();
    std::vector<std::size_t> occ;
    for (std::size_t p = 0; p < lu; ++p)
        if (uw[p] == i) occ.push_back(p);
    const std::size_t r = occ.size();

    const Chart source = concat(word_chart(uw), word_chart(vw, lu));
    auto v_var = [&](std::size_t c) { return lu + c; };
    // prefix sums of v arcs as linear forms
    auto v_prefix = [&](std::size_t upto) {  // sum of arcs 0..upto-1
        LinearForm f;
        for (std::size_t c = 0; c < upto; ++c) f.emplace_back(v_var(c), 1);
        return f;
    };
    auto cut_point = [&](std::size_t j) {  // m * (l_1 + ... + l_j), j cuts of lobe i
        LinearForm f;
        for (std::size_t k = 0; k < j; ++k) f.emplace_back(occ[k], m);
        return f;
    };
    auto difference = [](LinearForm a, const LinearForm& b) {
        for (const auto& [x, c] : b) a.emplace_back(x, -c);
        return a;
    };

    Chain<BasedCactusCell> out(u.dimension() + v.dimension());
    std::vector<std::size_t> cuts(r + 1, 0);  // cuts[0] = 0 and cuts[r] = lv - 1 are fixed
    cuts[r] = lv - 1;
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t j, std::size_t from) {
        if (j < r) {
            for (std::size_t c = from; c < lv; ++c) {
                cuts[j] = c;
                choose(j + 1, c);
            }
            return;
        }
        Word target;
        std::vector<LinearForm> forms;
        std::size_t block = 0;
        for (std::size_t p = 0; p < lu; ++p) {
            const int x = uw[p];
            if (x != i) {
                target.push_back(x < i ? x : x + m - 1);
                forms.push_back({{p, 1}});
                continue;
            }
            ++block;  // block index j = 1..r covers arcs cuts[j-1]..cuts[j]
            for (std::size_t c = cuts[block - 1]; c <= cuts[block]; ++c) {
                target.push_back(vw[c] + i - 1);
                LinearForm start = (c == cuts[block - 1] && block > 1) ? cut_point(block - 1) : v_prefix(c);
                LinearForm end = (c == cuts[block] && block < r) ? cut_point(block) : v_prefix(c + 1);
                forms.push_back(difference(end, start));
            }
        }
        if (!words::is_admissible_based(target, n + m - 1))
            throw std::logic_error("compose_based: produced an inadmissible word");
        int s = jacobian_sign(word_chart(target), forms, source);
        out.add(BasedCactusCell(std::move(target), n + m - 1), s);
    };
    choose(1, 0);
    return out;
}

/// Bilinear extension of a cell-level composition.
template <class Cell, class F>
Chain<Cell> compose_chains(const Chain<Cell>& a, int i, const Chain<Cell>& b, int degree, F&& compose) {
    Chain<Cell> out(degree);
    for (const auto& [x, cx] : a.terms)
        for (const auto& [y, cy] : b.terms) out.add(compose(x, i, y), cx * cy);
    return out;
}

/// Inverse of the transfer on its image: every summand must carry the base point on a lobe arc.
/// Returns nullopt if the chain is not exactly a transfer.
inline std::optional<Chain<NecklaceCell>> untransfer(const Chain<BasedCactusCell>& x) {
    Chain<NecklaceCell> out(x.degree - 1);
    for (const auto& [c, coeff] : x.terms) {
        if (c.word().front() != c.word().back()) return std::nullopt;
        NecklaceCell w = forget_base(c);
        if (out.terms.count(w)) continue;
        out.add(w, coeff * transfer(w).coefficient(c));
    }
    Chain<BasedCactusCell> back(x.degree);
    for (const auto& [w, k] : out.terms) back.add(transfer(w), k);
    if (back != x) return std::nullopt;
    return out;
}

/// Composition of unbased cells through the transfer: tau^{-1}(tau(a) o_i tau(b)).
inline Chain<NecklaceCell> compose_grav(const NecklaceCell& a, int i, const NecklaceCell& b) {
    Chain<BasedCactusCell> prod(a.dimension() + b.dimension() + 2);
    for (const auto& [x, cx] : transfer(a).terms)
        for (const auto& [y, cy] : transfer(b).terms) prod.add(compose_based(x, i, y), cx * cy);
    auto c = untransfer(prod);
    if (!c) throw std::logic_error("compose_grav: composite of transfers is not in the image of the transfer");
    return *c;
}

inline std::string describe_word(const Word& w, char open = '(', char close = ')') {
    std::string s(1, open);
    for (int x : w) s += std::to_string(x);
    return s + close;
}

/// Based cells with their geometric composition; degree = dimension, unit in arity one.
struct CactOperad {
    using Element = BasedCactusCell;
    static constexpr bool has_unit = true;
    static constexpr int min_arity = 1;
    static int degree(const Element& e) { return e.dimension(); }
    static int arity(const Element& e) { return e.arity(); }
    static std::vector<Element> basis(int n) { return enumerate_based_cells(n); }
    static Chain<Element> boundary(const Element& e) { return based_boundary(e); }
    static Chain<Element> compose(const Element& a, int i, const Element& b) { return compose_based(a, i, b); }
    static Signed<Element> relabel(const Permutation& g, const Element& e) { return act(g, e); }
    static Element unit() { return BasedCactusCell({1}, 1); }
    static Chain<Element> single(const Element& e) { return Chain<Element>(e.dimension(), e, 1); }
    static std::string describe(const Element& e) { return describe_word(e.word()); }
};

/// Unbased cells shifted up by one; composition through the transfer.
struct GravOperad {
    using Element = NecklaceCell;
    static constexpr bool has_unit = false;
    static constexpr int min_arity = 2;
    static int degree(const Element& e) { return e.dimension() + 1; }
    static int arity(const Element& e) { return e.arity(); }
    static std::vector<Element> basis(int n) { return enumerate_necklaces(n); }
    static Chain<Element> boundary(const Element& e) { return necklace_boundary(e); }
    static Chain<Element> compose(const Element& a, int i, const Element& b) { return compose_grav(a, i, b); }
    static Signed<Element> relabel(const Permutation& g, const Element& e) { return act(g, e); }
    static Chain<Element> single(const Element& e) { return Chain<Element>(e.dimension(), e, 1); }
    static std::string describe(const Element& e) { return describe_word(e.word(), '<', '>'); }
};

template <class Op>
Chain<typename Op::Element> op_compose(const Chain<typename Op::Element>& a, int i,
                                       const Chain<typename Op::Element>& b) {
    int deg = 0;
    Chain<typename Op::Element> out;
    for (const auto& [x, cx] : a.terms)
        for (const auto& [y, cy] : b.terms) {
            auto c = Op::compose(x, i, y);
            out.add(c, cx * cy);
            deg = c.degree;
        }
    out.degree = deg;
    return out;
}

template <class Op>
Chain<typename Op::Element> op_relabel(const Permutation& g, const Chain<typename Op::Element>& x) {
    Chain<typename Op::Element> out(x.degree);
    for (const auto& [c, k] : x.terms) {
        auto s = Op::relabel(g, c);
        out.add(s.cell, k * s.sign);
    }
    return out;
}

template <class Op>
Chain<typename Op::Element> op_boundary(const Chain<typename Op::Element>& x) {
    Chain<typename Op::Element> out(x.degree - 1);
    for (const auto& [c, k] : x.terms) out.add(Op::boundary(c), k);
    return out;
}

/// Permutation of the composite induced by relabelling the outer operation by g.
inline Permutation block_permutation(const Permutation& g, int i, int m) {
    const int n = g.size();
    auto pos = [&](int x, int slot) { return x < slot ? x : x + m - 1; };
    std::vector<int> im(n + m - 1);
    for (int x = 1; x <= n; ++x) {
        if (x == i) continue;
        im[pos(x, i) - 1] = pos(g(x), g(i));
    }
    for (int t = 1; t <= m; ++t) im[i + t - 2] = g(i) + t - 1;
    return Permutation(std::move(im));
}

/// Permutation of the composite induced by relabelling the inner operation (inserted at slot i) by h.
inline Permutation inner_permutation(const Permutation& h, int i, int n) {
    const int m = h.size();
    std::vector<int> im(n + m - 1);
    for (int x = 1; x <= n + m - 1; ++x) im[x - 1] = x;
    for (int t = 1; t <= m; ++t) im[i + t - 2] = i + h(t) - 1;
    return Permutation(std::move(im));
}

struct OperadAxiomReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Exhaustive check of the operad axioms for all cells whose composite arity is at most max_arity:
/// sequential and parallel associativity, units, equivariance (adjacent transpositions generate),
/// and the Leibniz rule for the boundary.
template <class Op>
OperadAxiomReport check_operad_axioms(int max_arity) {
    using E = typename Op::Element;
    using C = Chain<E>;
    OperadAxiomReport rep;
    std::map<int, std::vector<E>> basis;
    for (int n = Op::min_arity; n <= max_arity; ++n) basis[n] = Op::basis(n);
    auto single = [](const E& e) { return Op::single(e); };
    auto fail = [&](const std::string& what) {
        if (rep.failures.size() < 50) rep.failures.push_back(what);
    };
    auto describe = [](const E& e) { return Op::describe(e); };
    const int lo = std::max(Op::min_arity, 2);
    // associativity
    for (int p = lo; p <= max_arity; ++p)
        for (int q = lo; p + q - 1 <= max_arity; ++q)
            for (int r = lo; p + q + r - 2 <= max_arity; ++r)
                for (const auto& a : basis[p])
                    for (const auto& b : basis[q])
                        for (const auto& c : basis[r]) {
                            const int sign = ((Op::degree(b) * Op::degree(c)) % 2 == 0) ? 1 : -1;
                            for (int i = 1; i <= p; ++i) {
                                C ab = Op::compose(a, i, b);
                                for (int j = 1; j <= q; ++j) {
                                    ++rep.checked;
                                    C lhs = op_compose<Op>(ab, i + j - 1, single(c));
                                    C rhs = op_compose<Op>(single(a), i, Op::compose(b, j, c));
                                    if (lhs != rhs)
                                        fail("sequential " + describe(a) + "o" + std::to_string(i) + describe(b) +
                                             "o" + std::to_string(i + j - 1) + describe(c));
                                }
                                for (int k = i + 1; k <= p; ++k) {
                                    ++rep.checked;
                                    C lhs = op_compose<Op>(ab, k + q - 1, single(c));
                                    C rhs = op_compose<Op>(Op::compose(a, k, c), i, single(b));
                                    if (lhs != sign * rhs)
                                        fail("parallel " + describe(a) + " slots " + std::to_string(i) + "," +
                                             std::to_string(k) + " " + describe(b) + describe(c));
                                }
                            }
                        }
    // units
    if constexpr (Op::has_unit) {
        for (int n = 1; n <= max_arity; ++n)
            for (const auto& a : basis[n]) {
                ++rep.checked;
                if (Op::compose(Op::unit(), 1, a) != single(a)) fail("left unit " + describe(a));
                for (int i = 1; i <= n; ++i)
                    if (Op::compose(a, i, Op::unit()) != single(a)) fail("right unit " + describe(a));
            }
    }
    // equivariance and Leibniz
    for (int p = lo; p <= max_arity; ++p)
        for (int q = lo; p + q - 1 <= max_arity; ++q)
            for (const auto& a : basis[p])
                for (const auto& b : basis[q])
                    for (int i = 1; i <= p; ++i) {
                        C ab = Op::compose(a, i, b);
                        for (int t = 1; t < p; ++t) {
                            ++rep.checked;
                            Permutation g = Permutation::transposition(p, t, t + 1);
                            auto ga = Op::relabel(g, a);
                            C lhs = ga.sign * Op::compose(ga.cell, g(i), b);
                            C rhs = op_relabel<Op>(block_permutation(g, i, q), ab);
                            if (lhs != rhs) fail("outer equivariance " + describe(a) + describe(b));
                        }
                        for (int t = 1; t < q; ++t) {
                            ++rep.checked;
                            Permutation h = Permutation::transposition(q, t, t + 1);
                            auto hb = Op::relabel(h, b);
                            C lhs = hb.sign * Op::compose(a, i, hb.cell);
                            C rhs = op_relabel<Op>(inner_permutation(h, i, p), ab);
                            if (lhs != rhs) fail("inner equivariance " + describe(a) + describe(b));
                        }
                        ++rep.checked;
                        const int sign = (Op::degree(a) % 2 == 0) ? 1 : -1;
                        C lhs = op_boundary<Op>(ab);
                        C rhs = op_compose<Op>(Op::boundary(a), i, single(b)) +
                                sign * op_compose<Op>(single(a), i, Op::boundary(b));
                        if (lhs != rhs) fail("Leibniz " + describe(a) + "o" + std::to_string(i) + describe(b));
                    }
    return rep;
}

}  // namespace gravhycom
