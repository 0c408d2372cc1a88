#include <gravhycom/cacti_operad.hpp>

#include <gtest/gtest.h>

using namespace gravhycom;

namespace {
BasedCactusCell B(Word w) { return BasedCactusCell(std::move(w)); }
NecklaceCell N(Word w) { return NecklaceCell(std::move(w)); }
}  // namespace

TEST(CactiOperads, BinaryCompositionOfPoints) {
    auto c = compose_based(B({1, 2}), 2, B({1, 2}));
    EXPECT_EQ(c, Chain<BasedCactusCell>(0, B({1, 2, 3}), 1));
    auto d = compose_based(B({1, 2}), 1, B({2, 1}));
    EXPECT_EQ(d, Chain<BasedCactusCell>(0, B({2, 1, 3}), 1));
}

TEST(CactiOperads, CompositionTermCountIsMultisetCount) {
    // lobe 2 of (2,1,2) has two arcs: one cut over the three arcs of (1,2,1)
    auto c = compose_based(B({2, 1, 2}), 2, B({1, 2, 1}));
    EXPECT_EQ(c.size(), 3u);
    EXPECT_EQ(c.degree, 2);
    for (const auto& [cell, k] : c.terms) EXPECT_EQ(abs_value(k), 1);
}

TEST(CactiOperads, Units) {
    for (const auto& a : enumerate_based_cells(3)) {
        EXPECT_EQ(compose_based(CactOperad::unit(), 1, a), Chain<BasedCactusCell>(a.dimension(), a, 1));
        for (int i = 1; i <= 3; ++i)
            EXPECT_EQ(compose_based(a, i, CactOperad::unit()), Chain<BasedCactusCell>(a.dimension(), a, 1));
    }
}

TEST(CactiOperads, SlotOutOfRange) {
    EXPECT_THROW(compose_based(B({1, 2}), 3, B({1, 2})), std::invalid_argument);
}

TEST(CactiOperads, CactAxiomsUpToArityFive) {
    auto rep = check_operad_axioms<CactOperad>(5);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front()) << " (" << rep.failures.size()
                          << " failures)";
    EXPECT_GT(rep.checked, 1000u);
}

TEST(CactiOperads, TransferOfCompositesIsATransfer) {
    for (const auto& a : enumerate_necklaces(3))
        for (const auto& b : enumerate_necklaces(2))
            for (int i = 1; i <= 3; ++i) EXPECT_NO_THROW(compose_grav(a, i, b));
}

TEST(CactiOperads, GravBinaryComposition) {
    // the two ways of nesting a pair of points inside a pair
    auto c = compose_grav(N({1, 2}), 2, N({1, 2}));
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.size(), 2u);
    EXPECT_EQ(abs_value(c.coefficient(N({1, 2, 3, 2}))), 1);
    EXPECT_EQ(abs_value(c.coefficient(N({1, 3, 2, 3}))), 1);
    // each summand is a circle of positions, so the composite is a cycle
    EXPECT_TRUE(op_boundary<GravOperad>(c).is_zero());
}

TEST(CactiOperads, UntransferRejectsVertexBasedChains) {
    Chain<BasedCactusCell> x(0, B({1, 2}), 1);
    EXPECT_FALSE(untransfer(x).has_value());
    auto t = transfer(N({1, 2, 3, 2}));
    auto back = untransfer(t);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, Chain<NecklaceCell>(1, N({1, 2, 3, 2}), 1));
    t.add(t.terms.begin()->first, 1);
    EXPECT_FALSE(untransfer(t).has_value());
}

TEST(CactiOperads, GravAxiomsUpToArityFive) {
    auto rep = check_operad_axioms<GravOperad>(5);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front()) << " (" << rep.failures.size()
                          << " failures)";
    EXPECT_GT(rep.checked, 100u);
}
