#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reflbound/number_theory.hpp"

namespace {

using namespace reflbound::arith;

TEST(Fundamental, Examples)
{
    EXPECT_TRUE(is_fundamental(-3));
    EXPECT_TRUE(is_fundamental(-4));
    EXPECT_TRUE(is_fundamental(-8));
    EXPECT_TRUE(is_fundamental(-84));
    EXPECT_FALSE(is_fundamental(-12));
    EXPECT_FALSE(is_fundamental(-1));
    EXPECT_FALSE(is_fundamental(-16));
    EXPECT_FALSE(is_fundamental(-27));
    EXPECT_FALSE(is_fundamental(5));
}

TEST(Fundamental, MatchesFieldConstruction)
{
    const auto expected = oracle::field_discriminants_down_to(-20'000);
    EXPECT_EQ(fundamental_discriminants(-20'000, -1), expected);
}

TEST(Fundamental, CountToOneHundred)
{
    // Independent oracle: discriminants of Q(sqrt m), m squarefree.
    EXPECT_EQ(oracle::field_discriminants_down_to(-100).size(), 31u);
    EXPECT_EQ(fundamental_discriminants(-100, -3).size(), 31u);
    EXPECT_TRUE(fundamental_discriminants(-10, -9).empty());
}

TEST(Kronecker, MinusFourTable)
{
    for (int n = 1; n <= 200; ++n) {
        const int expected = n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
        EXPECT_EQ(kronecker(-4, n), expected) << n;
    }
}

TEST(Kronecker, Examples)
{
    EXPECT_EQ(kronecker(-3, 2), -1);
    EXPECT_EQ(kronecker(-7, 2), 1);
    EXPECT_EQ(kronecker(-3, 1), 1);
    EXPECT_EQ(kronecker(-84, 1), 1);
    EXPECT_THROW(kronecker(-3, 0), reflbound::domain_error);
}

TEST(Kronecker, MatchesFactorisationOracle)
{
    for (std::int64_t d : fundamental_discriminants(-400, -3)) {
        for (std::int64_t n = 1; n <= 300; ++n) {
            ASSERT_EQ(kronecker(d, n), oracle::kronecker(d, n)) << d << ' ' << n;
        }
    }
}

TEST(Kronecker, CharacterProperties)
{
    for (std::int64_t d : fundamental_discriminants(-200, -3)) {
        const std::int64_t period = -d;
        std::int64_t sum = 0;
        for (std::int64_t n = 1; n <= period; ++n) {
            sum += kronecker(d, n);
            ASSERT_EQ(kronecker(d, n + period), kronecker(d, n));
        }
        EXPECT_EQ(sum, 0) << d;
    }
    for (std::int64_t d : {-3, -4, -7, -8, -15, -84, -391}) {
        for (std::int64_t m = 1; m <= 1000; m += 7) {
            for (std::int64_t n = 1; n <= 1000; n += 11) {
                ASSERT_EQ(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n))
                    << d << ' ' << m << ' ' << n;
            }
        }
    }
}

TEST(ClassNumber, Examples)
{
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-23), 3);
    EXPECT_EQ(class_number(-84), 4);
    EXPECT_EQ(class_number(-163), 1);
    EXPECT_THROW(class_number(-12), reflbound::domain_error);
}

TEST(ClassNumber, DirichletExamples)
{
    EXPECT_EQ(class_number_dirichlet(-4), 1);
    EXPECT_EQ(class_number_dirichlet(-3), 1);
    EXPECT_EQ(class_number_dirichlet(-23), 3);
    EXPECT_EQ(class_number_dirichlet(-84), 4);
}

TEST(ClassNumber, MatchesLiteralReductionOracle)
{
    for (std::int64_t d : fundamental_discriminants(-3000, -3)) {
        ASSERT_EQ(class_number(d), oracle::class_number(d)) << d;
    }
}

TEST(ClassNumber, HeegnerNumbers)
{
    // The imaginary quadratic fields of class number one.
    std::vector<std::int64_t> found;
    for (std::int64_t d : fundamental_discriminants(-2000, -3)) {
        if (class_number(d) == 1) {
            found.push_back(d);
        }
    }
    EXPECT_EQ(found, (std::vector<std::int64_t>{-3, -4, -7, -8, -11, -19, -43, -67, -163}));
}

TEST(RootsOfUnity, Rule)
{
    EXPECT_EQ(roots_of_unity(-3), 6);
    EXPECT_EQ(roots_of_unity(-4), 4);
    EXPECT_EQ(roots_of_unity(-7), 2);
    EXPECT_EQ(roots_of_unity(-8), 2);
    EXPECT_THROW(roots_of_unity(-9), reflbound::domain_error);
}

} // namespace
