#include <gtest/gtest.h>

#include "qzeta/groups.hpp"

#include <random>

using namespace qzeta;

TEST(Groups, ParsePrintRoundTrip) {
    auto G = parse_group("1/6(-1,8,11)");
    EXPECT_EQ(G.order(), 6u);
    EXPECT_EQ(G.str(), "1/6(-1,8,11)");
    EXPECT_EQ(parse_group(G.str()), G);
    EXPECT_TRUE(parse_group("{1}", 3).is_trivial());
    EXPECT_THROW(parse_group("1/6(1,2"), std::invalid_argument);
}

TEST(Groups, StabilizerExamples) {
    auto G = parse_group("1/6(-1,8,11)");
    EXPECT_TRUE(stabilizer(G, {1, 2}).is_trivial());
    EXPECT_EQ(stabilizer(G, {1}), parse_group("1/2(1,0,1)"));
    EXPECT_EQ(stabilizer(G, {}), G);
    EXPECT_THROW(stabilizer(G, {0}), ContractError);
}

TEST(Groups, StabilizerMatchesEnumeration) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rng() % 3;
        long a = 2 + rng() % 9;
        std::vector<long> e(n);
        e[0] = -1;
        for (int i = 1; i < n; ++i) e[i] = 1 + rng() % a;
        auto G = DiagGroup::cyclic(a, e);
        for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
            std::vector<int> I;
            for (int i = 1; i < n; ++i)
                if (mask >> (i - 1) & 1) I.push_back(i);
            EXPECT_EQ(stabilizer(G, I), G.fixing(I));
            // monotone: J subset of I gives a larger stabilizer
            if (!I.empty()) {
                std::vector<int> J(I.begin() + 1, I.end());
                EXPECT_TRUE(stabilizer(G, I).subgroup_of(stabilizer(G, J)));
            }
        }
    }
}

TEST(Groups, SgSumExamples) {
    auto S = sg_sum(parse_group("1/3(-1,2)"), {6, 0}, {5, 1});
    SgSum want{{0, 0}, {2, 2}, {4, 4}};
    EXPECT_EQ(S, want);
    S = sg_sum(parse_group("1/2(-1,3)"), {6, 0}, {5, 1});
    want = {{0, 0}, {3, 3}};
    EXPECT_EQ(S, want);
    EXPECT_EQ(sg_sum(DiagGroup::trivial(2), {1, 1}, {1, 1}), (SgSum{{0, 0}}));
}

TEST(Groups, SgSumInvariants) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + rng() % 3;
        long r = 1 + rng() % 12;
        std::vector<long> a(n);
        for (auto& x : a) x = rng() % 20 - 10;
        auto G = DiagGroup::cyclic(r, a);
        std::vector<Q> N(n), nu(n);
        for (int i = 0; i < n; ++i) {
            N[i] = rng() % 7;
            nu[i] = 1 + rng() % 5;
        }
        auto S = sg_sum(G, N, nu);
        EXPECT_EQ(S.size(), G.order());
        EXPECT_EQ(std::count(S.begin(), S.end(), std::make_pair(Q(0), Q(0))), 1);
        for (auto& [x, y] : S) {
            EXPECT_GE(x, 0);
            EXPECT_GE(y, 0);
        }
        for (auto& eps : G.epsilons())
            for (long e : eps) {
                EXPECT_GE(e, 0);
                EXPECT_LT(e, (long)G.order());
            }
        EXPECT_EQ((long)G.order(), G.order_snf());
    }
}

TEST(Groups, NonCyclicOrder) {
    DiagGroup G(2, {Gen{2, {1, 0}}, Gen{2, {0, 1}}});
    EXPECT_EQ(G.order(), 4u);
    EXPECT_EQ(G.order_snf(), 4);
    EXPECT_FALSE(G.cyclic_generator().has_value());
    EXPECT_EQ(parse_group(G.str()), G);
}

static void check_snf(const IMat& A) {
    SNF s = smith_normal_form(A);
    EXPECT_EQ(mat_mul(mat_mul(s.U, A), s.V), s.D);
    size_t r = std::min(A.size(), A[0].size());
    for (size_t i = 0; i < s.D.size(); ++i)
        for (size_t j = 0; j < s.D[0].size(); ++j)
            if (i != j) EXPECT_EQ(s.D[i][j], 0);
    for (size_t i = 0; i + 1 < r; ++i) {
        if (s.D[i][i] == 0) {
            EXPECT_EQ(s.D[i + 1][i + 1], 0);
        } else {
            EXPECT_EQ(s.D[i + 1][i + 1] % s.D[i][i], 0);
        }
    }
}

TEST(Groups, SmithNormalForm) {
    SNF s = smith_normal_form({{2, 0}, {0, 3}});
    EXPECT_EQ(s.D, (IMat{{1, 0}, {0, 6}}));
    s = smith_normal_form({{1, 0}, {0, 1}});
    EXPECT_EQ(s.D, (IMat{{1, 0}, {0, 1}}));
    s = smith_normal_form({{1, 2}, {3, 2}});
    EXPECT_EQ(s.D, (IMat{{1, 0}, {0, 4}}));
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
        IMat A(m, std::vector<long>(n));
        for (auto& row : A)
            for (auto& x : row) x = (long)(rng() % 13) - 6;
        check_snf(A);
    }
}

TEST(Groups, GroupFromCone) {
    EXPECT_TRUE(group_from_cone({{1, 0}, {0, 1}}).is_trivial());
    auto G = group_from_cone({{3, 2}, {0, 1}});
    EXPECT_EQ(G.order(), 3u);
    EXPECT_EQ(G, parse_group("1/3(-1,2)"));
    EXPECT_EQ(group_from_cone({{1, 2}, {3, 2}}).order(), 4u);
    EXPECT_THROW(group_from_cone({{1, 2}, {2, 4}}), NonSimplicialCone);
    // |G| = |det| on random cones
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        IMat R(3, std::vector<long>(3));
        for (auto& row : R)
            for (auto& x : row) x = rng() % 5;
        long det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) - R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
                   R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
        if (det == 0) continue;
        EXPECT_EQ((long)group_from_cone(R).order(), std::labs(det));
    }
}
