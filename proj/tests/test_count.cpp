#include <gtest/gtest.h>

#include "qzeta/count.hpp"

#include <random>

using namespace qzeta;

namespace {

StratumSpec affine(int n) {
    StratumSpec s;
    s.n = n;
    return s;
}

UPoly Lpoly(std::vector<long> c) {
    UPoly p;
    for (long v : c) p.c.push_back(Q(v));
    return p;
}

}  // namespace

TEST(Count, FieldHelpers) {
    EXPECT_TRUE(ff::is_prime(97));
    EXPECT_FALSE(ff::is_prime(91));
    for (long q : {5L, 7L, 13L, 97L}) {
        long g = ff::primitive_root(q);
        for (long k = 1; k < q - 1; ++k) EXPECT_NE(ff::powmod(g, k, q), 1);
    }
    EXPECT_EQ(ff::reduce(Q(1) / Q(2), 7), 4);
}

TEST(Count, CuspOverF2) {
    auto s = affine(2);
    s.eqs.push_back(parse_poly("x^2+y^3"));
    EXPECT_EQ(count_points(s, 2), 2u);
}

TEST(Count, AffineQuotientIsAffineSpace) {
    for (auto g : {"1/3(1,2)", "1/2(1,1)", "1/4(1,3)", "1/6(1,2)"}) {
        auto s = affine(2);
        s.group = parse_group(g, 2);
        EXPECT_EQ(class_interpolate(s, 2).c, Lpoly({0, 0, 1}).c) << g;
    }
    auto s = affine(3);
    s.group = parse_group("1/5(1,2,3)", 3);
    EXPECT_EQ(class_interpolate(s, 3).c, Lpoly({0, 0, 0, 1}).c);
}

TEST(Count, TorusQuotientIsTorus) {
    for (auto g : {"1/3(1,2)", "1/5(1,1)", "1/2(1,0) + 1/2(0,1)"}) {
        auto s = affine(2);
        s.torus = {true, true};
        s.group = parse_group(g, 2);
        EXPECT_EQ(class_interpolate(s, 2).c, (Lpoly({-1, 1}) * Lpoly({-1, 1})).c) << g;
    }
}

TEST(Count, CurveClasses) {
    auto s = affine(2);
    s.eqs.push_back(parse_poly("x^2+y^3"));
    EXPECT_EQ(class_interpolate(s, 2).c, Lpoly({0, 1}).c);

    auto h = affine(2);
    h.eqs.push_back(parse_poly("x*y-1"));
    EXPECT_EQ(class_interpolate(h, 2).c, Lpoly({-1, 1}).c);

    // three lines through the origin; the quotient keeps three branches
    auto t = affine(2);
    t.eqs.push_back(parse_poly("x^3+y^3"));
    EXPECT_EQ(class_interpolate(t, 2).c, Lpoly({-2, 3}).c);
    t.group = parse_group("1/3(1,1)", 2);
    EXPECT_EQ(class_interpolate(t, 2).c, Lpoly({-2, 3}).c);
}

TEST(Count, QuotientOfConicByInvolution) {
    // x*y = 1 modulo -1: a torus again
    auto s = affine(2);
    s.eqs.push_back(parse_poly("x*y-1"));
    s.group = parse_group("1/2(1,1)", 2);
    EXPECT_EQ(class_interpolate(s, 2).c, Lpoly({-1, 1}).c);
}

TEST(Count, NotSemiInvariantRejected) {
    auto s = affine(2);
    s.eqs.push_back(parse_poly("x+y^2"));
    s.group = parse_group("1/3(1,1)", 2);
    EXPECT_THROW(count_quotient(s, 7), ContractError);
}

TEST(Count, EllipticConeIsNotPolynomial) {
    auto s = affine(3);
    s.eqs.push_back(parse_poly("x^3+y^3+z^3"));
    CountConfig cfg;
    cfg.ladder = {1, 3};
    EXPECT_THROW(class_interpolate(s, 2, cfg), NonPolynomialClass);
}

TEST(Count, BudgetIsEnforced) {
    auto s = affine(4);
    CountConfig cfg;
    cfg.max_enum = 1000;
    EXPECT_THROW(class_interpolate(s, 4, cfg), BudgetExceeded);
    EXPECT_THROW(count_points(s, 11, 1000), BudgetExceeded);
}

TEST(Count, IgusaCounts) {
    auto c = igusa_counts(parse_poly("x*y"), 3, 3);
    EXPECT_EQ(c[0], Int(5));
    // x*y = 0 mod p^m has (m+1) p^m - m p^{m-1} solutions
    EXPECT_EQ(c[1], Int(3 * 9 - 2 * 3));
    EXPECT_EQ(c[2], Int(4 * 27 - 3 * 9));
    auto s = igusa_counts(parse_poly("x"), 5, 3);
    EXPECT_EQ(s[2], Int(1));
}

TEST(Count, ExactLineClasses) {
    StratumSpec s;
    s.n = 1;
    s.torus = {true};
    s.eqs.push_back(parse_poly("1+x^4"));
    EXPECT_EQ(class_interpolate(s, 1).c, Lpoly({4}).c);
    // a cubic with non-abelian Galois group still has three geometric points
    s.eqs = {parse_poly("x^3+x+1")};
    EXPECT_EQ(class_interpolate(s, 1).c, Lpoly({3}).c);
    // roots of x^3 = 2 form one free orbit of mu_3
    s.eqs = {parse_poly("x^3-2")};
    s.group = parse_group("1/3(1)", 1);
    EXPECT_EQ(class_interpolate(s, 1).c, Lpoly({1}).c);
    // the line minus the cube roots of 2, modulo mu_3
    s.eqs.clear();
    s.torus = {false};
    s.neqs = {parse_poly("x^3-2")};
    EXPECT_EQ(class_interpolate(s, 1).c, Lpoly({-1, 1}).c);
}

TEST(Count, RandomQuotientIdentities) {
    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        int n = 1 + rng() % 3;
        long r = 2 + rng() % 5;
        std::vector<long> a(n);
        for (auto& x : a) x = rng() % r;
        auto G = DiagGroup::cyclic(r, a);
        auto s = affine(n);
        s.group = G;
        UPoly Ln = Lpoly({1});
        UPoly T = Lpoly({1});
        for (int i = 0; i < n; ++i) {
            Ln = Ln * Lpoly({0, 1});
            T = T * Lpoly({-1, 1});
        }
        EXPECT_EQ(class_interpolate(s, n).c, Ln.c) << G.str();
        s.torus.assign(n, true);
        EXPECT_EQ(class_interpolate(s, n).c, T.c) << G.str();
    }
}

TEST(Count, MonotoneAndAdditive) {
    auto s = affine(2);
    s.eqs.push_back(parse_poly("x^2+y^3-1"));
    for (long q : {7L, 11L, 13L}) {
        auto total = count_points(s, q);
        auto with = s;
        with.neqs.push_back(parse_poly("x", {"x", "y"}));
        auto on = s;
        on.eqs.push_back(parse_poly("x", {"x", "y"}));
        EXPECT_LE(count_points(with, q), total);
        EXPECT_EQ(count_points(with, q) + count_points(on, q), total);
    }
}

TEST(Count, EulerCharacteristics) {
    EXPECT_EQ(euler_char(Lpoly({1, -2, 1})), Q(0));
    EXPECT_EQ(euler_char(Lpoly({-3, 1})), Q(-2));
    EXPECT_EQ(euler_char(Lpoly({0, 0, 1})), Q(1));
    auto s = affine(3);
    s.eqs.push_back(parse_poly("x^2+y^2+z^2"));
    EXPECT_EQ(epoly_oracle(s, 2).c, Lpoly({0, 0, 1}).c);
}
