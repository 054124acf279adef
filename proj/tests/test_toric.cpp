#include <gtest/gtest.h>

#include "qzeta/toric.hpp"

#include <random>

using namespace qzeta;

namespace {

std::set<IVec> vertex_set(const NewtonData& nd) {
    std::set<IVec> s;
    for (int v : nd.vertices) s.insert(nd.support[v]);
    return s;
}

}  // namespace

TEST(Toric, NewtonVertices) {
    auto nd = newton_polyhedron(parse_poly("x^6+x^2*y^2+y^5"));
    EXPECT_EQ(vertex_set(nd), (std::set<IVec>{{6, 0}, {2, 2}, {0, 5}}));
    auto cusp = newton_polyhedron(parse_poly("x^2+y^3"));
    EXPECT_EQ(vertex_set(cusp), (std::set<IVec>{{2, 0}, {0, 3}}));
    auto mono = newton_polyhedron(parse_poly("x^3*y"));
    EXPECT_EQ(mono.vertices.size(), 1u);
    EXPECT_EQ(mono.facets.size(), 2u);
    // dominated points are not vertices
    auto dom = newton_polyhedron(parse_poly("x^2+y^3+x^2*y+x*y^3"));
    EXPECT_EQ(vertex_set(dom), (std::set<IVec>{{2, 0}, {0, 3}}));
}

TEST(Toric, FanOfExampleCurve) {
    auto fan = normal_fan(newton_polyhedron(parse_poly("x^6+x^2*y^2+y^5")));
    EXPECT_EQ(fan.rays, (std::vector<IVec>{{1, 0}, {3, 2}, {1, 2}, {0, 1}}));  // counterclockwise
    EXPECT_EQ(fan.cones.size(), 3u);
    auto cusp = normal_fan(newton_polyhedron(parse_poly("x^2+y^3")));
    EXPECT_EQ(cusp.rays, (std::vector<IVec>{{1, 0}, {3, 2}, {0, 1}}));
    EXPECT_EQ(cusp.cones.size(), 2u);
    auto mono = normal_fan(newton_polyhedron(parse_poly("x*y^2*z")));
    EXPECT_EQ(mono.cones.size(), 1u);
    EXPECT_EQ(mono.cones[0].rays.size(), 3u);
}

TEST(Toric, PhiValues) {
    auto nd = newton_polyhedron(parse_poly("x^6+x^2*y^2+y^5"));
    EXPECT_EQ(phi_f(nd, IVec{1, 1}), 4);
    EXPECT_EQ(phi_f(nd, IVec{1, 2}), 6);
    EXPECT_EQ(phi_f(nd, IVec{0, 0}), 0);
}

TEST(Toric, PhiLinearOnCones) {
    std::mt19937 rng(3);
    for (auto src : {"x^6+x^2*y^2+y^5", "x^2+y^3+z^4+x*y*z", "x^3+y^3+z^3", "x*y+z^2", "x^5+y*z^2+x*y^3"}) {
        MPoly f = parse_poly(src);
        auto nd = newton_polyhedron(f);
        auto fan = normal_fan(nd);
        for (auto& c : fan.cones)
            for (int t = 0; t < 10; ++t) {
                IVec u(f.n, 0), v(f.n, 0);
                for (auto& r : c.rays) {
                    long a = rng() % 4, b = rng() % 4;
                    for (int j = 0; j < f.n; ++j) {
                        u[j] += a * r[j];
                        v[j] += b * r[j];
                    }
                }
                IVec w(f.n);
                for (int j = 0; j < f.n; ++j) w[j] = u[j] + v[j];
                EXPECT_EQ(phi_f(nd, w), phi_f(nd, u) + phi_f(nd, v)) << src;
            }
    }
}

TEST(Toric, SupportAboveFacets) {
    for (auto src : {"x^6+x^2*y^2+y^5", "x^2+y^3+z^4+x*y*z", "x^4+y^4+z^4+x^2*y^2*z^2+x*y"}) {
        auto nd = newton_polyhedron(parse_poly(src));
        for (auto& F : nd.facets)
            for (auto& a : nd.support) EXPECT_GE(linalg::dot(F.normal, a), F.offset);
    }
}

TEST(Toric, FanCoversOrthantExactly) {
    // every positive vector lies in some maximal cone, and generic vectors in exactly one interior
    std::mt19937 rng(11);
    for (auto src : {"x^2+y^3+z^4+x*y*z", "x^3+y^3+z^3", "x^5+y*z^2+x*y^3"}) {
        auto nd = newton_polyhedron(parse_poly(src));
        auto fan = normal_fan(nd);
        for (int t = 0; t < 200; ++t) {
            IVec v{(long)(rng() % 50 + 1), (long)(rng() % 50 + 1), (long)(rng() % 50 + 1)};
            long ph = phi_f(nd, v);
            int hits = 0;
            for (size_t k = 0; k < fan.cones.size(); ++k)
                if (linalg::dot(v, nd.support[nd.vertices[k]]) == ph) ++hits;
            EXPECT_GE(hits, 1);
        }
    }
}

TEST(Toric, SubdivisionIdentityInPlane) {
    for (auto src : {"x^6+x^2*y^2+y^5", "x^2+y^3", "x^3*y+y^5+x^7"}) {
        auto fan = normal_fan(newton_polyhedron(parse_poly(src)));
        auto sub = simplicial_subdivide(fan);
        ASSERT_EQ(sub.cones.size(), fan.cones.size());
        for (size_t i = 0; i < fan.cones.size(); ++i) EXPECT_EQ(sub.cones[i].rays, fan.cones[i].rays);
    }
}

TEST(Toric, SquareConePulling) {
    Fan fan;
    fan.n = 3;
    fan.rays = {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    fan.cones = {Cone{fan.rays}};
    auto sub = simplicial_subdivide(fan);
    ASSERT_EQ(sub.cones.size(), 2u);
    std::set<std::set<IVec>> got;
    for (auto& c : sub.cones) got.insert(std::set<IVec>(c.rays.begin(), c.rays.end()));
    std::set<std::set<IVec>> want{{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}, {{0, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
    EXPECT_EQ(got, want);
    EXPECT_TRUE(is_simplicial(sub));
    EXPECT_EQ(sub.rays, fan.rays);
}

TEST(Toric, SubdivisionOfNonSimplicialNewtonFan) {
    // four facets meet at the vertex (1,1,0)
    auto fan = normal_fan(newton_polyhedron(parse_poly("x*y+x^3+y^3+z^2")));
    EXPECT_FALSE(is_simplicial(fan));
    auto sub = simplicial_subdivide(fan);
    EXPECT_TRUE(is_simplicial(sub));
    std::set<IVec> rays(fan.rays.begin(), fan.rays.end());
    for (auto& c : sub.cones)
        for (auto& r : c.rays) EXPECT_TRUE(rays.count(r));
}

TEST(Toric, NonDegeneracy) {
    auto a = is_nondegenerate(parse_poly("x^6+x^2*y^2+y^5"));
    EXPECT_TRUE(a.holds);
    EXPECT_EQ(a.kind, Certificate::Kind::Proved);
    EXPECT_FALSE(is_nondegenerate(parse_poly("x^2+2*x*y+y^2")).holds);
    EXPECT_TRUE(is_nondegenerate(parse_poly("x+y")).holds);
    auto b = is_nondegenerate(parse_poly("x^2+y^2+z^2"));
    EXPECT_TRUE(b.holds);
    EXPECT_EQ(b.kind, Certificate::Kind::Probabilistic);
    EXPECT_TRUE(is_nondegenerate(parse_poly("x*y+z^2")).holds);
    EXPECT_FALSE(is_nondegenerate(parse_poly("x^2+2*x*y+y^2+z^4")).holds);
}
