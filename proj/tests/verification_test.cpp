#include <gravhycom/verification.hpp>

#include <gtest/gtest.h>

using namespace gravhycom;

namespace {

std::vector<Integer> coeffs(std::initializer_list<int> xs) {
    std::vector<Integer> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST(IntPolynomial, ArithmeticAndFormatting) {
    IntPolynomial p({1, 2}), q({-3, 0, 1});
    EXPECT_EQ((p * q).coefficients(), coeffs({-3, -6, 1, 2}));
    EXPECT_EQ((p + q).coefficients(), coeffs({-2, 2, 1}));
    EXPECT_TRUE(IntPolynomial({0, 0}).is_zero());
    EXPECT_EQ(q.evaluate(2), 1);
    EXPECT_EQ(q.to_string("q"), "q^2 - 3");
    EXPECT_EQ(IntPolynomial().to_string(), "0");
}

TEST(Oracles, ArnoldPolynomials) {
    EXPECT_EQ(arnold_poincare(4, false).coefficients(), coeffs({1, 6, 11, 6}));
    EXPECT_EQ(arnold_poincare(3, true).coefficients(), coeffs({1, 2}));
    EXPECT_EQ(arnold_poincare(2, true).coefficients(), coeffs({1}));
    EXPECT_EQ(arnold_poincare(5, true).coefficients(), coeffs({1, 9, 26, 24}));
}

TEST(Oracles, ModuliPointCount) {
    EXPECT_EQ(moduli_betti_oracle(2).coefficients(), coeffs({1}));
    EXPECT_EQ(moduli_betti_oracle(3).coefficients(), coeffs({1, 1}));
    EXPECT_EQ(moduli_betti_oracle(4).coefficients(), coeffs({1, 5, 1}));
    EXPECT_EQ(moduli_betti_oracle(5).coefficients(), coeffs({1, 16, 16, 1}));
}

TEST(Oracles, HomologyAgreesWithOracles) {
    for (int n = 2; n <= 4; ++n) {
        auto c = check_oracle(n, true);
        EXPECT_TRUE(c.pass) << c.detail;
    }
}

TEST(Checks, SquareZero) {
    for (const std::string space : {"based", "unbased", "moduli", "dual"})
        for (int n = 2; n <= 4; ++n) EXPECT_TRUE(check_d2(space, n).pass) << space << n;
    EXPECT_THROW(check_d2("torus", 3), std::invalid_argument);
}

TEST(Checks, Transfer) {
    for (int n = 2; n <= 4; ++n) {
        auto c = check_transfer(n);
        EXPECT_TRUE(c.pass) << c.detail;
    }
}

TEST(Checks, JacobiRelations) {
    auto zero = check_jacobi(3, 0);
    EXPECT_TRUE(zero.pass);
    EXPECT_TRUE(jacobi_residual(3, 0).is_zero());
    EXPECT_TRUE(zero.witness.is_null());
    for (auto [k, l] : {std::pair{3, 1}, std::pair{4, 0}}) {
        auto c = check_jacobi(k, l);
        EXPECT_TRUE(c.pass) << c.detail;
        EXPECT_FALSE(c.witness.is_null());
        auto r = jacobi_residual(k, l);
        EXPECT_FALSE(r.is_zero());
        auto w = is_boundary(r, unbased_complex(k + l));
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(unbased_complex(k + l).apply_boundary(*w), r);
    }
    EXPECT_TRUE(check_jacobi(2, 1).pass);
}

TEST(Checks, JacobiRightSideAloneIsNotABoundary) {
    auto rhs = compose_grav(bracket(2), 1, bracket(3));
    EXPECT_FALSE(is_boundary(rhs, unbased_complex(4)).has_value());
}

TEST(Checks, HycomRelations) {
    for (int instance : {0, 1}) {
        auto c = check_hycom(instance);
        EXPECT_TRUE(c.pass) << c.detail;
        EXPECT_FALSE(c.witness.is_null());
        EXPECT_EQ(c.residual["degree"], 2 * instance);
    }
    EXPECT_THROW(hycom_residual(2), std::invalid_argument);
}

TEST(Checks, Koszul) {
    for (int n = 2; n <= 4; ++n) {
        auto c = check_koszul(n);
        EXPECT_TRUE(c.pass) << c.detail;
    }
}

TEST(Checks, PoincareDuality) {
    for (int n = 2; n <= 4; ++n) {
        auto c = check_poincare_duality(n);
        EXPECT_TRUE(c.pass) << c.detail;
    }
}

TEST(Checks, AxiomsAndSampledEquivariance) {
    for (const auto& c : check_axioms(4, 7, 100)) EXPECT_TRUE(c.pass) << c.check << ": " << c.detail;
}

TEST(Checks, BarAndCobarBar) {
    for (int n = 2; n <= 4; ++n) EXPECT_TRUE(check_bar(n).pass);
    EXPECT_TRUE(check_cobar_bar(3).pass);
}

TEST(Certificates, JsonShape) {
    auto j = to_json(check_jacobi(3, 1));
    EXPECT_EQ(j["check"], "jacobi/k=3,l=1");
    EXPECT_EQ(j["status"], "pass");
    EXPECT_TRUE(j["witness"].contains("terms"));
    EXPECT_EQ(j["residual"]["degree"], 1);
    auto term = j["witness"]["terms"][0];
    EXPECT_TRUE(term["cell"]["cyclic"].get<bool>());
    EXPECT_TRUE(term["coeff"].is_number_integer());
}

TEST(Certificates, LargeCoefficientsAsStrings) {
    Integer big = Integer(1) << 80;
    EXPECT_TRUE(integer_to_json(big).is_string());
    EXPECT_EQ(integer_to_json(-5), -5);
}

TEST(JsonInput, ParsesCells) {
    EXPECT_EQ(parse_based("[1,2,1]"), BasedCactusCell({1, 2, 1}));
    EXPECT_EQ(parse_based("1,2,1"), BasedCactusCell({1, 2, 1}));
    EXPECT_EQ(parse_necklace("2,1"), NecklaceCell({1, 2}));
    EXPECT_EQ(parse_necklace(R"({"word":[2,3,1],"cyclic":true})"), NecklaceCell({1, 2, 3}));
    EXPECT_THROW(parse_based("[1,2,1,2]"), std::invalid_argument);
    auto pt = parse_decorated("pt2");
    EXPECT_EQ(pt.tree(), NestedTree::corolla(2));
    for (const auto& c : moduli_cells(4)) EXPECT_EQ(parse_decorated(to_json(c).dump()), c);
}
