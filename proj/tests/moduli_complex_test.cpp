#include <gravhycom/moduli.hpp>

#include <gtest/gtest.h>

using namespace gravhycom;

namespace {

DecoratedTreeCell binary_left() {
    NestedTree t(3, {{1, 2}, {1, 2, 3}});
    return DecoratedTreeCell::from_map(t, {{{1, 2}, NecklaceCell({1, 2})}, {{1, 2, 3}, NecklaceCell({1, 2})}});
}

DecoratedTreeCell corolla_cell(const Word& w) { return DecoratedTreeCell(NestedTree::corolla(words::max_letter(w)), {NecklaceCell(w)}); }

std::vector<std::size_t> ranks(const ChainComplex<DecoratedTreeCell>& c) {
    std::vector<std::size_t> r;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) r.push_back(c.rank(k));
    return r;
}

}  // namespace

TEST(ModuliCells, ArityThreeCounts) {
    EXPECT_EQ(moduli_cells(3).size(), 8u);
    EXPECT_EQ(ranks(primal_complex(3)), (std::vector<std::size_t>{2, 3, 3}));
    EXPECT_EQ(ranks(dual_complex(3)), (std::vector<std::size_t>{3, 3, 2}));
}

TEST(ModuliCells, LargerCounts) {
    EXPECT_EQ(ranks(primal_complex(4)), (std::vector<std::size_t>{6, 24, 40, 30, 15}));
    EXPECT_EQ(moduli_cells(2).size(), 1u);
}

TEST(ModuliCells, DimensionsAndDegrees) {
    for (int n = 2; n <= 4; ++n)
        for (const auto& c : moduli_cells(n)) {
            EXPECT_EQ(primal_dimension(c) + dual_degree(c), 2 * (n - 2));
            EXPECT_EQ(Bar<GravOperad>::degree(c), primal_dimension(c) + 2);
        }
}

TEST(ModuliBoundary, BinaryTreeContractsToComposite) {
    auto c = binary_left();
    EXPECT_EQ(primal_dimension(c), 2);
    auto d = primal_boundary(c);
    Chain<DecoratedTreeCell> expected(1);
    expected.add(corolla_cell({1, 2, 1, 3}), 1);
    expected.add(corolla_cell({1, 2, 3, 2}), -1);
    EXPECT_EQ(d, expected);
    auto g = compose_grav(NecklaceCell({1, 2}), 1, NecklaceCell({1, 2}));
    EXPECT_EQ(g.coefficient(NecklaceCell({1, 2, 1, 3})), -expected.coefficient(corolla_cell({1, 2, 1, 3})));
}

TEST(ModuliBoundary, SquareZero) {
    for (int n = 2; n <= 5; ++n) {
        EXPECT_FALSE(verify_complex(primal_complex(n)).has_value()) << n;
        EXPECT_FALSE(verify_complex(dual_complex(n)).has_value()) << n;
    }
}

TEST(ModuliBoundary, DualBoundaryIsTransposeColumn) {
    for (int n = 2; n <= 4; ++n) {
        auto dual = dual_complex(n);
        for (int k = dual.min_degree(); k <= dual.max_degree(); ++k)
            for (const auto& c : dual.basis(k)) EXPECT_EQ(dual_boundary(c), dual.apply_boundary(Chain<DecoratedTreeCell>(k, c)));
    }
}

TEST(ModuliHomology, SphereAndBeyond) {
    auto h3 = homology(dual_complex(3));
    EXPECT_EQ(h3.betti, (std::map<int, std::size_t>{{0, 1}, {1, 0}, {2, 1}}));
    auto h4 = homology(dual_complex(4));
    EXPECT_EQ(h4.betti, (std::map<int, std::size_t>{{0, 1}, {1, 0}, {2, 5}, {3, 0}, {4, 1}}));
    EXPECT_EQ(h4, homology(primal_complex(4)));
}

TEST(BarConstruction, MatchesPrimalComplex) {
    for (int n = 2; n <= 4; ++n) {
        auto rep = bar_identification(n);
        EXPECT_TRUE(rep.ok) << n << ": " << rep.diagnostic;
    }
}

TEST(BarConstruction, CactusBarSquaresToZero) {
    for (int n = 2; n <= 4; ++n) EXPECT_FALSE(verify_complex(Bar<CactOperad>::complex(n)).has_value()) << n;
}

TEST(DualComposition, GraftingTwoPoints) {
    auto pt = DecoratedTreeCell(NestedTree::corolla(2), {NecklaceCell({1, 2})});
    auto r = compose_dual(pt, 1, pt);
    EXPECT_EQ(r.sign, 1);
    EXPECT_EQ(r.cell, binary_left());
    EXPECT_EQ(dual_degree(r.cell), 0);
    EXPECT_EQ(compose_dual(pt, 2, pt).cell.tree(), NestedTree(3, {{2, 3}, {1, 2, 3}}));
}

TEST(DualComposition, UnitAndDegree) {
    auto unit = DecoratedTreeCell::unit();
    for (int p = 2; p <= 3; ++p)
        for (int q = 2; q <= 3; ++q)
            for (const auto& x : moduli_cells(p)) {
                EXPECT_EQ(compose_dual(unit, 1, x).cell, x);
                for (int i = 1; i <= p; ++i) {
                    EXPECT_EQ(compose_dual(x, i, unit).cell, x);
                    for (const auto& y : moduli_cells(q))
                        EXPECT_EQ(dual_degree(compose_dual(x, i, y).cell), dual_degree(x) + dual_degree(y));
                }
            }
}

TEST(DualComposition, OperadAxioms) {
    auto rep = check_operad_axioms<DualOperad>(4);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_GT(rep.checked, 200u);
}

TEST(DualComposition, LeibnizOnChains) {
    std::map<int, ChainComplex<DecoratedTreeCell>> d;
    for (int n = 2; n <= 4; ++n) d.emplace(n, dual_complex(n));
    for (int p = 2; p <= 3; ++p)
        for (int q = 2; p + q - 1 <= 4; ++q)
            for (const auto& x : moduli_cells(p))
                for (const auto& y : moduli_cells(q))
                    for (int i = 1; i <= p; ++i) {
                        Chain<DecoratedTreeCell> cx(dual_degree(x), x), cy(dual_degree(y), y);
                        auto lhs = d.at(p + q - 1).apply_boundary(compose_dual(cx, i, cy));
                        const int s = dual_degree(x) % 2 == 0 ? 1 : -1;
                        auto rhs = compose_dual(d.at(p).apply_boundary(cx), i, cy) +
                                   Integer(s) * compose_dual(cx, i, d.at(q).apply_boundary(cy));
                        EXPECT_EQ(lhs, rhs);
                    }
}

TEST(FundamentalClass, TopCycleOfRankOne) {
    for (int n = 2; n <= 4; ++n) {
        auto fc = fundamental_class(n);
        auto dual = dual_complex(n);
        EXPECT_EQ(fc.degree, 2 * (n - 2));
        EXPECT_TRUE(dual.apply_boundary(fc).is_zero());
        EXPECT_EQ(fc.terms.begin()->second, 1);
        EXPECT_EQ(fc.size(), dual.rank(2 * (n - 2)));
    }
    EXPECT_EQ(fundamental_class(3).size(), 2u);
}

TEST(FundamentalClass, InvariantUpToSignUnderRelabelling) {
    for (int n = 2; n <= 4; ++n) {
        auto fc = fundamental_class(n);
        for (int t = 1; t < n; ++t) {
            auto g = act(Permutation::transposition(n, t, t + 1), fc);
            EXPECT_TRUE(g == fc || g == Integer(-1) * fc) << n << " " << t;
        }
    }
}

TEST(SymmetricAction, IsAGroupAction) {
    auto all = all_permutations(4);
    auto cells = moduli_cells(4);
    for (std::size_t k = 0; k < cells.size(); k += 7)
        for (std::size_t a = 0; a < all.size(); a += 5)
            for (std::size_t b = 0; b < all.size(); b += 3) {
                Chain<DecoratedTreeCell> x(dual_degree(cells[k]), cells[k]);
                EXPECT_EQ(act(all[a] * all[b], x), act(all[a], act(all[b], x)));
            }
    Chain<DecoratedTreeCell> x(0, binary_left());
    EXPECT_EQ(act(Permutation::identity(3), x), x);
}

TEST(SymmetricAction, CommutesWithBoundary) {
    auto dual = dual_complex(4);
    for (int t = 1; t < 4; ++t) {
        auto g = Permutation::transposition(4, t, t + 1);
        for (int k = dual.min_degree(); k <= dual.max_degree(); ++k)
            for (const auto& c : dual.basis(k)) {
                Chain<DecoratedTreeCell> x(k, c);
                EXPECT_EQ(dual.apply_boundary(act(g, x)), act(g, dual.apply_boundary(x)));
            }
    }
}

TEST(CobarBar, ResolvesGravInLowArity) {
    for (int n = 2; n <= 3; ++n) {
        auto rep = cobar_bar_homology(n);
        EXPECT_TRUE(rep.square_zero) << n;
        EXPECT_TRUE(rep.match) << n;
    }
    EXPECT_THROW(cobar_bar_homology(4), std::invalid_argument);
}
