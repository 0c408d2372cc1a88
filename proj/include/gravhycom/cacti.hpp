#pragma once

#include "chain_complex.hpp"
#include "orientation.hpp"
#include "permutation.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gravhycom {

using Word = std::vector<int>;

template <class Cell>
struct Signed {
    int sign = 1;
    Cell cell;
};

namespace words {

/// True if the word contains a subsequence i, j, i, j with i != j.
inline bool has_interleaving(const Word& w, int n) {
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const int pattern[4] = {i, j, i, j};
            int k = 0;
            for (int x : w)
                if (x == pattern[k] && ++k == 4) return true;
        }
    return false;
}

inline std::vector<int> multiplicities(const Word& w, int n) {
    std::vector<int> m(n, 0);
    for (int x : w) ++m.at(x - 1);
    return m;
}

inline bool letters_cover(const Word& w, int n) {
    if (n < 1) return false;
    for (int x : w)
        if (x < 1 || x > n) return false;
    for (int m : multiplicities(w, n))
        if (m == 0) return false;
    return true;
}

inline bool is_admissible_based(const Word& w, int n) {
    if (!letters_cover(w, n)) return false;
    for (std::size_t p = 1; p < w.size(); ++p)
        if (w[p] == w[p - 1]) return false;
    return !has_interleaving(w, n);
}

/// Cyclic admissibility; the interleaving pattern is rotation invariant so a linear check suffices.
inline bool is_admissible_cyclic(const Word& w, int n) {
    if (n < 2 || !is_admissible_based(w, n)) return false;
    return w.front() != w.back();
}

inline Word rotate(const Word& w, std::size_t k) {
    Word out(w.size());
    for (std::size_t q = 0; q < w.size(); ++q) out[q] = w[(q + k) % w.size()];
    return out;
}

/// Offset k of the lexicographically least rotation.
inline std::size_t least_rotation(const Word& w) {
    const std::size_t l = w.size();
    std::size_t best = 0;
    for (std::size_t k = 1; k < l; ++k) {
        for (std::size_t q = 0; q < l; ++q) {
            int a = w[(k + q) % l], b = w[(best + q) % l];
            if (a != b) {
                if (a < b) best = k;
                break;
            }
        }
    }
    return best;
}

inline int max_letter(const Word& w) { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()); }

}  // namespace words

/// Cell of the based cacti complex: an admissible word, dimension = length - arity.
class BasedCactusCell {
public:
    BasedCactusCell(Word w, int arity) : word_(std::move(w)), arity_(arity) {
        if (!words::is_admissible_based(word_, arity_))
            throw std::invalid_argument("BasedCactusCell: inadmissible word");
    }
    explicit BasedCactusCell(Word w) : BasedCactusCell(w, words::max_letter(w)) {}

    const Word& word() const { return word_; }
    int arity() const { return arity_; }
    int dimension() const { return static_cast<int>(word_.size()) - arity_; }
    std::vector<int> multiplicities() const { return words::multiplicities(word_, arity_); }

    friend std::strong_ordering operator<=>(const BasedCactusCell& a, const BasedCactusCell& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
        return a.word_ <=> b.word_;
    }
    bool operator==(const BasedCactusCell&) const = default;

private:
    Word word_;
    int arity_ = 0;
};

/// Cell of the unbased complex: a cyclic admissible word stored as its least rotation.
class NecklaceCell {
public:
    NecklaceCell(const Word& w, int arity) : arity_(arity) {
        if (!words::is_admissible_cyclic(w, arity_))
            throw std::invalid_argument("NecklaceCell: inadmissible cyclic word");
        word_ = words::rotate(w, words::least_rotation(w));
    }
    explicit NecklaceCell(const Word& w) : NecklaceCell(w, words::max_letter(w)) {}

    const Word& word() const { return word_; }
    int arity() const { return arity_; }
    int dimension() const { return static_cast<int>(word_.size()) - arity_; }

    friend std::strong_ordering operator<=>(const NecklaceCell& a, const NecklaceCell& b) {
        if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
        if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
        return a.word_ <=> b.word_;
    }
    bool operator==(const NecklaceCell&) const = default;

private:
    Word word_;
    int arity_ = 0;
};

/// All based cells of the given arity (optionally one dimension), length-lexicographic order.
inline std::vector<BasedCactusCell> enumerate_based_cells(int n, std::optional<int> dim = std::nullopt) {
    if (n < 1) throw std::invalid_argument("enumerate_based_cells: arity must be positive");
    std::vector<BasedCactusCell> out;
    const int min_len = dim ? n + *dim : n;
    const int max_len = dim ? n + *dim : 2 * n - 1;
    Word w;
    std::vector<int> count(n + 1, 0);
    std::function<void(int)> extend = [&](int len) {
        if (static_cast<int>(w.size()) == len) {
            out.emplace_back(w, n);
            return;
        }
        int missing = 0;
        for (int x = 1; x <= n; ++x) missing += count[x] == 0;
        for (int x = 1; x <= n; ++x) {
            if (!w.empty() && w.back() == x) continue;
            if (missing - (count[x] == 0) > len - static_cast<int>(w.size()) - 1) continue;
            // appending x completes i,x,i,x if the word already contains x ... i ... x ... i
            bool bad = false;
            for (int i = 1; i <= n && !bad; ++i) {
                if (i == x) continue;
                const int pattern[3] = {i, x, i};
                int k = 0;
                for (int y : w)
                    if (y == pattern[k] && ++k == 3) break;
                bad = k == 3;
            }
            if (bad) continue;
            w.push_back(x);
            ++count[x];
            extend(len);
            --count[x];
            w.pop_back();
        }
    };
    for (int len = std::max(min_len, n); len <= std::min(max_len, 2 * n - 1); ++len) extend(len);
    return out;
}

/// All necklace cells of the given arity (>= 2), length-lexicographic order of canonical words.
inline std::vector<NecklaceCell> enumerate_necklaces(int n, std::optional<int> dim = std::nullopt) {
    if (n < 2) throw std::invalid_argument("enumerate_necklaces: arity must be at least 2");
    std::vector<NecklaceCell> out;
    for (const auto& c : enumerate_based_cells(n, dim)) {
        const Word& w = c.word();
        if (w.front() == w.back() || static_cast<int>(w.size()) > 2 * n - 2) continue;
        if (words::least_rotation(w) != 0) continue;
        out.emplace_back(w, n);
    }
    return out;
}

/// Boundary in the based complex: delete one occurrence of a lobe that occurs at least twice.
inline Chain<BasedCactusCell> based_boundary(const BasedCactusCell& c) {
    const Word& w = c.word();
    const auto m = c.multiplicities();
    Chain<BasedCactusCell> out(c.dimension() - 1);
    std::vector<int> seen(c.arity(), 0);
    std::vector<int> prefix(c.arity() + 1, 0);  // sum of (m - 1) over smaller lobes
    for (int i = 0; i < c.arity(); ++i) prefix[i + 1] = prefix[i] + m[i] - 1;
    for (std::size_t p = 0; p < w.size(); ++p) {
        const int x = w[p];
        const int k = seen[x - 1]++;
        if (m[x - 1] < 2) continue;
        Word face = w;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(p));
        out.add(BasedCactusCell(std::move(face), c.arity()), ((k + prefix[x - 1]) % 2 == 0) ? 1 : -1);
    }
    return out;
}

/// Orientation sign of rotating a based word onto the canonical representative of its necklace.
/// Zero (nullopt) when the base point sits on a lobe arc (first == last letter).
inline std::optional<Signed<NecklaceCell>> project(const BasedCactusCell& c) {
    const Word& u = c.word();
    if (u.front() == u.back() || c.arity() < 2) return std::nullopt;
    const std::size_t k = words::least_rotation(u);
    Word canon = words::rotate(u, k);
    std::vector<LinearForm> forms(u.size());
    for (std::size_t q = 0; q < u.size(); ++q) forms[q] = {{(q + k) % u.size(), 1}};
    int s = jacobian_sign(word_chart(canon), forms, word_chart(u));
    return Signed<NecklaceCell>{s, NecklaceCell(canon, c.arity())};
}

/// Forgets the base point; if the base point lies on an arc the two end arcs merge.
inline NecklaceCell forget_base(const BasedCactusCell& c) {
    Word w = c.word();
    if (w.size() > 1 && w.front() == w.back()) w.pop_back();
    return NecklaceCell(w, c.arity());
}

/// Necklace boundary computed through a based lift u with first != last: project(d u), normalised
/// by the orientation of the lift.
inline Chain<NecklaceCell> boundary_through_lift(const BasedCactusCell& u) {
    auto base = project(u);
    if (!base) throw std::invalid_argument("boundary_through_lift: lift must have first != last");
    Chain<NecklaceCell> out(u.dimension() - 1);
    for (const auto& [face, coeff] : based_boundary(u).terms) {
        auto p = project(face);
        if (!p) throw std::logic_error("boundary_through_lift: face with base point on an arc");
        out.add(p->cell, coeff * p->sign * base->sign);
    }
    return out;
}

inline Chain<NecklaceCell> necklace_boundary(const NecklaceCell& w) {
    return boundary_through_lift(BasedCactusCell(w.word(), w.arity()));
}

/// Sweeps the base point once around the outside circle. Summand p starts at arc p of the
/// canonical word and ends on the same lobe; oriented as (cell orientation) ^ d(theta).
inline Chain<BasedCactusCell> transfer(const NecklaceCell& w) {
    const Word& y = w.word();
    const std::size_t l = y.size();
    Chart source = word_chart(y);
    source.groups.push_back(ArcGroup{{l}, false});
    Chain<BasedCactusCell> out(w.dimension() + 1);
    for (std::size_t p = 0; p < l; ++p) {
        Word b = words::rotate(y, p);
        b.push_back(y[p]);
        std::vector<LinearForm> forms(l + 1);
        forms[0] = {{p, 1}, {l, -1}};
        for (std::size_t k = 1; k < l; ++k) forms[k] = {{(p + k) % l, 1}};
        forms[l] = {{l, 1}};
        int s = jacobian_sign(word_chart(b), forms, source);
        out.add(BasedCactusCell(std::move(b), w.arity()), s);
    }
    return out;
}

/// Relabels lobes (letter x becomes g(x)); sign from the change of lobe order in the chart.
inline Signed<BasedCactusCell> act(const Permutation& g, const BasedCactusCell& c) {
    if (g.size() != c.arity()) throw std::invalid_argument("act: permutation size differs from arity");
    Word w = c.word();
    for (int& x : w) x = g(x);
    std::vector<LinearForm> forms(w.size());
    for (std::size_t p = 0; p < w.size(); ++p) forms[p] = {{p, 1}};
    int s = jacobian_sign(word_chart(w), forms, word_chart(c.word()));
    return {s, BasedCactusCell(std::move(w), c.arity())};
}

inline Signed<NecklaceCell> act(const Permutation& g, const NecklaceCell& c) {
    auto relabelled = act(g, BasedCactusCell(c.word(), c.arity()));
    auto p = project(relabelled.cell);
    return {relabelled.sign * p->sign, p->cell};
}

template <class Cell>
Chain<Cell> act(const Permutation& g, const Chain<Cell>& x) {
    Chain<Cell> out(x.degree);
    for (const auto& [cell, coeff] : x.terms) {
        auto s = act(g, cell);
        out.add(s.cell, coeff * s.sign);
    }
    return out;
}

template <class Cell, class F>
Chain<Cell> extend_linearly(const Chain<Cell>& x, int degree, F&& f) {
    Chain<Cell> out(degree);
    for (const auto& [cell, coeff] : x.terms) out.add(f(cell), coeff);
    return out;
}

inline ChainComplex<BasedCactusCell> based_complex(int n) {
    std::vector<std::vector<BasedCactusCell>> bases;
    for (int d = 0; d <= n - 1; ++d) bases.push_back(enumerate_based_cells(n, d));
    return ChainComplex<BasedCactusCell>::build(
        0, std::move(bases), [](const BasedCactusCell& c) { return based_boundary(c); });
}

inline ChainComplex<NecklaceCell> unbased_complex(int n) {
    std::vector<std::vector<NecklaceCell>> bases;
    for (int d = 0; d <= n - 2; ++d) bases.push_back(enumerate_necklaces(n, d));
    return ChainComplex<NecklaceCell>::build(0, std::move(bases),
                                             [](const NecklaceCell& c) { return necklace_boundary(c); });
}

}  // namespace gravhycom
