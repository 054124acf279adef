#include <gtest/gtest.h>

#include "qzeta/sqh.hpp"

#include <random>

using namespace qzeta;

TEST(Sqh, InferWeight) {
    auto c = infer_weight(parse_poly("x^2+y^3"));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->w.w, (std::vector<long>{3, 2}));
    EXPECT_EQ(c->w.d, 6);
    auto e = infer_weight(parse_poly("x^5+y*z^2+x*y^3"));
    ASSERT_TRUE(e);
    EXPECT_EQ(e->w.w, (std::vector<long>{6, 8, 11}));
    EXPECT_EQ(e->w.d, 30);
    auto t = infer_weight(parse_poly("x^2+y^3+y^4"));
    ASSERT_TRUE(t);
    EXPECT_EQ(t->w.w, (std::vector<long>{3, 2}));
    EXPECT_EQ(t->fd.terms, parse_poly("x^2+y^3").terms);
    auto q = infer_weight(parse_poly("x*y+z^2"));
    ASSERT_TRUE(q);
    EXPECT_EQ(q->w.w, (std::vector<long>{1, 1, 1}));
    EXPECT_FALSE(infer_weight(parse_poly("x^2*y")));
}

TEST(Sqh, PrincipalPart) {
    Weight w{{3, 2}, 0};
    EXPECT_EQ(principal_part(parse_poly("x^2+y^3+y^4"), w).terms, parse_poly("x^2+y^3").terms);
    EXPECT_EQ(w.d, 6);
    Weight w3{{6, 8, 11}, 0};
    EXPECT_EQ(principal_part(parse_poly("x^5+y*z^2+x*y^3+x^6"), w3).terms, parse_poly("x^5+y*z^2+x*y^3").terms);
}

TEST(Sqh, TailHasHigherDegree) {
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        MPoly f = parse_poly("x^3+y^4");
        for (int k = 0; k < 3; ++k) f.add_term({(int)(rng() % 6), (int)(rng() % 6)}, Q((long)(rng() % 5) + 1));
        Weight w{{4, 3}, 0};
        MPoly fd = principal_part(f, w);
        MPoly tail = f - fd;
        for (auto& [e, c] : tail.terms) EXPECT_GT(wdeg(w.w, e), w.d);
        EXPECT_EQ((fd + tail).terms, f.terms);
    }
}

TEST(Sqh, Isolatedness) {
    auto a = is_isolated_singularity(parse_poly("x^2+y^3"));
    EXPECT_TRUE(a.holds);
    EXPECT_EQ(a.kind, Certificate::Kind::Proved);
    auto b = is_isolated_singularity(parse_poly("x^2*y"));
    EXPECT_FALSE(b.holds);
    EXPECT_EQ(b.witness, "singular along {x = 0}");
    EXPECT_FALSE(is_isolated_singularity(parse_poly("x^2+2*x*y+y^2")).holds);
    auto c = is_isolated_singularity(parse_poly("x^2+y^2+z^2"));
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.kind, Certificate::Kind::Probabilistic);
    EXPECT_EQ(c.primes, (std::vector<long>{5, 7, 11}));
    EXPECT_TRUE(is_isolated_singularity(parse_poly("x^2+y^2")).holds);
    EXPECT_FALSE(is_isolated_singularity(parse_poly("x^2+y^2*z")).holds);
    // x^5 + ... is handled with primes that keep the gradient intact
    auto d = is_isolated_singularity(parse_poly("x^5+y^2+z^2"));
    EXPECT_TRUE(d.holds);
    EXPECT_EQ(std::count(d.primes.begin(), d.primes.end(), 5L), 0);
}

TEST(Sqh, ChartSubstitute) {
    Weight w{{3, 2}, 6};
    auto c1 = chart_substitute(parse_poly("x^2+y^3"), w, 0);
    EXPECT_EQ(c1.H.terms, parse_poly("1+y^3").terms);
    EXPECT_EQ(c1.group.str(), "1/3(-1,2)");
    auto c2 = chart_substitute(parse_poly("x^2+y^3"), w, 1);
    EXPECT_EQ(c2.H.terms, parse_poly("x^2+1", {"x", "y"}).terms);
    Weight w3{{6, 8, 11}, 30};
    auto e2 = chart_substitute(parse_poly("x^5+y*z^2+x*y^3"), w3, 1);
    EXPECT_EQ(e2.H.terms, parse_poly("x^5+z^2+x").terms);
    EXPECT_THROW(chart_substitute(parse_poly("x+y^3"), w, 0), ConfigError);
}

TEST(Sqh, ChartRoundTrip) {
    for (auto src : {"x^2+y^3+x*y^4+y^7", "x^5+y*z^2+x*y^3+x^2*y^3*z"}) {
        MPoly f = parse_poly(src);
        auto s = infer_weight(f);
        ASSERT_TRUE(s);
        for (int i = 0; i < f.n; ++i) {
            auto ch = chart_substitute(f, s->w, i);
            EXPECT_EQ(chart_unsubstitute_check(ch.H, s->w, i).terms, f.terms);
        }
    }
}
