#include <gtest/gtest.h>

#include "qzeta/mpoly.hpp"

#include <random>

using namespace qzeta;

TEST(MPoly, ParsesDefaultNames) {
    MPoly f = parse_poly("x^2+y^3");
    EXPECT_EQ(f.n, 2);
    EXPECT_EQ(f.terms.size(), 2u);
    EXPECT_EQ(to_string(f), to_string(parse_poly("y^3 + x^2")));
    MPoly g = parse_poly("x1^2 + 3/2*x2*x3 - 7");
    EXPECT_EQ(g.n, 3);
    EXPECT_EQ(g.constant_term(), Q(-7));
    EXPECT_EQ(parse_poly("z").n, 3);
}

TEST(MPoly, ExplicitVariables) {
    MPoly f = parse_poly("a^2*b - b", {"a", "b", "c"});
    EXPECT_EQ(f.n, 3);
    EXPECT_FALSE(f.uses_var(2));
    EXPECT_TRUE(f.uses_var(0));
}

TEST(MPoly, ParseErrors) {
    EXPECT_THROW(parse_poly("x^"), ParseError);
    EXPECT_THROW(parse_poly("x +* y"), ParseError);
    EXPECT_THROW(parse_poly("q^2", {"x", "y"}), ParseError);
    EXPECT_THROW(parse_poly("x + x1"), ParseError);
    EXPECT_THROW(parse_poly("x^2)"), ParseError);
}

TEST(MPoly, RoundTrip) {
    for (std::string s : {"x^2+y^3", "x^3*y+y^5", "-x^2*y+1/3*y^4+z^2", "x1^2+x2^2+x3^2+x4^2+x5^2"}) {
        MPoly f = parse_poly(s);
        EXPECT_EQ(parse_poly(to_string(f), default_var_names(f.n)).terms, f.terms) << s;
    }
}

TEST(MPoly, EulerRelationForWeightedHomogeneous) {
    // sum w_i x_i df/dx_i = d f for f of weighted degree d
    std::mt19937 rng(7);
    std::vector<int> w{2, 3, 5};
    int d = 30;
    for (int trial = 0; trial < 20; ++trial) {
        MPoly f(3);
        for (int a = 0; a * w[0] <= d; ++a)
            for (int b = 0; a * w[0] + b * w[1] <= d; ++b) {
                int rest = d - a * w[0] - b * w[1];
                if (rest % w[2]) continue;
                if (rng() % 2) f.add_term({a, b, rest / w[2]}, Q((long)(rng() % 9) - 4));
            }
        MPoly lhs(3);
        for (int i = 0; i < 3; ++i) lhs += Q(w[i]) * (MPoly::var(3, i) * f.diff(i));
        EXPECT_EQ(lhs.terms, (Q(d) * f).terms);
    }
}

TEST(MPoly, RingOps) {
    MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly f = (x + y).pow(3);
    EXPECT_EQ(f.terms.size(), 4u);
    EXPECT_EQ(f.total_degree(), 3);
    MPoly g = f - f;
    EXPECT_TRUE(g.terms.empty());
    EXPECT_EQ(f.substitute_const({{1, Q(0)}}).terms, x.pow(3).terms);
}
