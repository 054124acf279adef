#include <gtest/gtest.h>

#include "qzeta/zeta.hpp"

#include <random>

using namespace qzeta;

namespace {

UPoly P(std::vector<long> c) {
    UPoly p;
    for (long v : c) p.c.push_back(Q(v));
    return p;
}

SqhData sqh(const std::string& src) {
    auto s = infer_weight(parse_poly(src));
    if (!s) throw std::runtime_error("no weight for " + src);
    return *s;
}

// L^2 Z for the cusp, written term by term as in the classical closed form
MotZeta cusp_display() {
    FactorNu F1(1, 1), F6(6, 5);
    MotZeta z;
    z.prefactor = -2;
    z.terms.push_back({P({0, -1, 1}), {{0, 0}}, {}, ""});
    z.terms.push_back({P({-1, 1}), {{0, 0}}, {F1}, ""});
    z.terms.push_back({P({-2, 1}), {{0, 0}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}, {2, 2}, {4, 4}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}, {3, 3}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}}, {F1, F6}, ""});
    return z;
}

}  // namespace

TEST(Zeta, CuspGlobalMatchesClosedForm) {
    auto s = sqh("x^2+y^3");
    EXPECT_EQ(normalize(motivic_zeta(s, false)), normalize(cusp_display()));
}

TEST(Zeta, CuspLocalIsGlobalMinusOffExceptional) {
    auto s = sqh("x^2+y^3");
    MotZeta expect = cusp_display();
    expect.terms.erase(expect.terms.begin(), expect.terms.begin() + 2);
    EXPECT_EQ(normalize(motivic_zeta(s, true)), normalize(expect));
    EXPECT_EQ(to_string(specialize_topological(motivic_zeta(s, true))), "(4s+5)/((s+1)(6s+5))");
}

TEST(Zeta, CuspChartData) {
    auto s = sqh("x^2+y^3");
    auto c1 = chart_data(s, 0);
    // E°{}, E°{2}, Ê{2} with j=2
    ASSERT_EQ(c1.size(), 3u);
    EXPECT_EQ(c1[0].group, DiagGroup::cyclic(3, {-1, 2}));
    EXPECT_EQ(c1[0].cls.c, P({1}).c);
    EXPECT_EQ(c1[1].cls.c, P({-2, 1}).c);
    EXPECT_TRUE(c1[2].group.is_trivial());
    EXPECT_EQ(c1[2].cls.c, P({1}).c);
    auto c2 = chart_data(s, 1);
    ASSERT_EQ(c2.size(), 1u);
    EXPECT_EQ(c2[0].group, DiagGroup::cyclic(2, {3, -1}));
}

TEST(Zeta, PrincipalPartInvariance) {
    for (auto [f, fd] : std::vector<std::pair<std::string, std::string>>{
             {"x^2+y^3+y^4", "x^2+y^3"}, {"x^3+y^4+x^2*y^2", "x^3+y^4"}, {"x^5+y*z^2+x*y^3+x^6+z^5", "x^5+y*z^2+x*y^3"}}) {
        auto a = sqh(f), b = sqh(fd);
        EXPECT_EQ(a.w.w, b.w.w);
        EXPECT_EQ(normalize(motivic_zeta(a, true)), normalize(motivic_zeta(b, true))) << f;
    }
}

TEST(Zeta, Dim2ClosedFormFixtures) {
    for (auto src : {"x^2+y^3", "x*y", "x^2+y^5", "x^3+y^4", "y*x^3-y^3", "x^3*y+y^4", "x*y^2+x^4*y", "x^4-y^4"}) {
        auto s = sqh(src);
        EXPECT_EQ(normalize(motivic_zeta(s, true)), normalize(motivic_zeta_dim2(s))) << src;
    }
}

TEST(Zeta, Dim2CaseSelection) {
    EXPECT_EQ(dim2_case(sqh("x^2+y^3")).which, 1);
    EXPECT_EQ(dim2_case(sqh("x^2+y^3")).count, Q(1));
    EXPECT_EQ(dim2_case(sqh("x*y")).which, 4);
    EXPECT_EQ(dim2_case(sqh("x*y")).count, Q(0));
    // y (x^3 - y^2), w = (2,3), d = 9: one point
    auto s = sqh("x^3*y-y^3");
    EXPECT_EQ(s.w.w, (std::vector<long>{2, 3}));
    EXPECT_EQ(dim2_case(s).which, 2);
    EXPECT_EQ(dim2_case(s).count, Q(1));
}

TEST(Zeta, Dim2RandomAgreement) {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 8) {
        long p = rng() % 4 + 1, q = rng() % 4 + 1;
        if (gcd_l(p, q) != 1) continue;
        int a = rng() % 2, b = rng() % 2, K = rng() % 3;
        if (K == 0 && !(a == 1 && b == 1)) continue;
        long d = p * q * K + p * a + q * b;
        if (d > 30 || d <= 1) continue;
        MPoly f = MPoly::mono({a, b}, Q(1));
        std::set<long> cs;
        while ((int)cs.size() < K) cs.insert((long)(rng() % 7) + 1);
        for (long c : cs) f = f * (MPoly::mono({(int)q, 0}, Q(1)) - MPoly::mono({0, (int)p}, Q(c)));
        auto s = infer_weight(f);
        ASSERT_TRUE(s) << to_string(f);
        if (s->w.w != std::vector<long>{p, q}) continue;
        EXPECT_EQ(normalize(motivic_zeta(*s, true)), normalize(motivic_zeta_dim2(*s))) << to_string(f);
        ++done;
    }
}

TEST(Zeta, Poles) {
    auto r = poles_dim2(sqh("x^2+y^3"));
    ASSERT_EQ(r.poles.size(), 2u);
    EXPECT_EQ(r.poles[0].s0, Q(-1));
    EXPECT_EQ(r.poles[1].s0, Q(-5) / Q(6));
    auto r5 = poles_dim2(sqh("x^2+y^5"));
    ASSERT_EQ(r5.poles.size(), 2u);
    EXPECT_EQ(r5.poles[1].s0, Q(-7) / Q(10));
    auto rxy = poles_dim2(sqh("x*y"));
    EXPECT_FALSE(rxy.guarantee_applies);
    ASSERT_EQ(rxy.poles.size(), 1u);
    EXPECT_EQ(rxy.poles[0].s0, Q(-1));
}

TEST(Zeta, AgreesWithBlowUpLogResolution) {
    // x^2 + y^2: blow up the origin; E with (N, nu) = (2, 2) and two strict-transform lines
    FactorNu F1(1, 1), F2(2, 2);
    MotZeta dl;
    dl.prefactor = -2;
    dl.terms.push_back({P({1, -2, 1}), {{0, 0}}, {}, ""});
    dl.terms.push_back({P({-2, 2}), {{0, 0}}, {F1}, ""});
    dl.terms.push_back({P({-1, 1}), {{0, 0}}, {F2}, ""});
    dl.terms.push_back({P({2}), {{0, 0}}, {F1, F2}, ""});
    EXPECT_EQ(normalize(motivic_zeta(sqh("x^2+y^2"), false)), normalize(dl));
}

TEST(Zeta, SmoothReduction) {
    // all groups trivial: term-for-term the classical formula
    Stratum a{"a", P({-1, 1}), DiagGroup::trivial(1), {Q(0)}, {Q(1)}, false};
    Stratum b{"b", P({1}), DiagGroup::trivial(1), {Q(1)}, {Q(1)}, true};
    MotZeta z = mot_zeta_from_qres({a, b}, false, 1);
    ASSERT_EQ(z.terms.size(), 2u);
    EXPECT_TRUE(z.terms[0].factors.empty());
    EXPECT_EQ(z.terms[1].factors.size(), 1u);
    EXPECT_EQ(to_string(specialize_topological(z)), "1/(s+1)");
    Stratum c{"c", P({1}), DiagGroup::cyclic(2, {1, 1}), {Q(0), Q(0)}, {Q(1), Q(1)}, true};
    MotZeta zc = mot_zeta_from_qres({c}, true, 2);
    EXPECT_EQ(zc.terms[0].sg, (SgSum{{Q(0), Q(0)}, {Q(0), Q(1)}}));
}

TEST(Zeta, ExampleThreeFoldTable) {
    auto s = sqh("x^5+y*z^2+x*y^3");
    std::map<std::pair<int, std::string>, std::pair<UPoly, DiagGroup>> got;
    for (int i = 0; i < 3; ++i)
        for (auto& st : chart_data(s, i)) {
            if (st.label.rfind("E°", 0) != 0) continue;
            auto b = st.label.find("I="), e = st.label.find("]");
            std::string I = st.label.substr(b + 2, e - b - 2);
            int nI = I == "{}" ? 0 : (int)std::count(I.begin(), I.end(), ',') + 1;
            got[{i + 1, I}] = {Lm1_pow(nI) - st.cls, st.group};
        }
    auto cell = [&](int i, const std::string& I) { return got[{i, I}]; };
    EXPECT_EQ(cell(1, "{2,3}").first.c, P({-2, 1}).c);  // the table prints L-3
    EXPECT_EQ(cell(1, "{2}").first.c, P({1}).c);
    EXPECT_EQ(cell(1, "{2}").second, parse_group("1/2(1,0,1)", 3));
    EXPECT_TRUE(cell(1, "{3}").first.zero());
    EXPECT_TRUE(cell(1, "{}").first.zero());
    EXPECT_EQ(cell(1, "{}").second, parse_group("1/6(-1,8,11)", 3));
    EXPECT_TRUE(cell(2, "{3}").first.zero());  // the table prints 1
    EXPECT_EQ(cell(2, "{}").first.c, P({1}).c);
    EXPECT_EQ(cell(2, "{}").second, parse_group("1/8(6,-1,11)", 3));
    EXPECT_EQ(cell(3, "{}").first.c, P({1}).c);
    EXPECT_EQ(cell(3, "{}").second, parse_group("1/11(6,8,-1)", 3));
    // the pieces add up to the projectivised cone: [Ê] = L + 1
    UPoly total;
    for (auto& [k, v] : got) total = total + v.first;
    EXPECT_EQ(total.c, P({1, 1}).c);
}

TEST(Zeta, IgusaMatches) {
    for (auto [src, p, m] : std::vector<std::tuple<std::string, long, int>>{
             {"x", 5, 6}, {"x*y", 5, 4}, {"x^2+y^3", 5, 3}, {"x^2+y^3", 7, 3}, {"x*y", 7, 3}}) {
        auto s = sqh(src);
        auto rep = igusa_check(motivic_zeta(s, false), s.f, p, m);
        EXPECT_TRUE(rep.matched) << src << " p=" << p;
    }
}

TEST(Zeta, ConjectureProbe) {
    auto r = conjecture_probe({parse_poly("x^2+y^3"), parse_poly("x^2+y^3")}, Weight{{3, 2}, 6});
    EXPECT_TRUE(r.all_equal);
    auto r2 = conjecture_probe({parse_poly("x^4+y^4"), parse_poly("x^4-x*y^3")}, Weight{{1, 1}, 4});
    EXPECT_TRUE(r2.all_equal);
}
