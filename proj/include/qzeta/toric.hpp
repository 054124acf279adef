#pragma once

#include "count.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qzeta {

using IVec = std::vector<long>;

struct Facet {
    IVec normal;            // primitive, nonnegative
    long offset = 0;        // min over Gamma of normal . a
    std::vector<int> pts;   // indices into support lying on the facet
    bool compact() const {
        return std::all_of(normal.begin(), normal.end(), [](long x) { return x > 0; });
    }
};

struct Face {
    std::vector<int> pts;  // support indices
    IVec normal;           // a vector in the relative interior of the normal cone
    int dim = 0;           // affine dimension of the support points on the face
};

struct NewtonData {
    int n = 0;
    std::vector<IVec> support;
    std::vector<Q> coeffs;  // aligned with support
    std::vector<int> vertices;
    std::vector<Facet> facets;
    std::vector<Face> faces;  // proper faces
};

struct Cone {
    std::vector<IVec> rays;
};

struct Fan {
    int n = 0;
    std::vector<IVec> rays;
    std::vector<Cone> cones;
};

struct Certificate {
    enum class Kind { Proved, Probabilistic, Asserted };
    bool holds = true;
    Kind kind = Kind::Proved;
    std::vector<long> primes;
    std::string witness;
};

inline std::string kind_str(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::Proved: return "proved";
        case Certificate::Kind::Probabilistic: return "probabilistic";
        default: return "asserted";
    }
}

namespace detail {

inline void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (int i = start; i <= m - (k - pos); ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (k <= m) rec(0, 0);
}

inline int affine_dim(const std::vector<IVec>& pts, const std::vector<int>& idx, int n) {
    if (idx.size() <= 1) return 0;
    std::vector<IVec> rows;
    for (size_t i = 1; i < idx.size(); ++i) {
        IVec d(n);
        for (int j = 0; j < n; ++j) d[j] = pts[idx[i]][j] - pts[idx[0]][j];
        rows.push_back(d);
    }
    return linalg::rank(rows, n);
}

}  // namespace detail

inline NewtonData newton_polyhedron(const MPoly& f, int max_dim = 6) {
    if (f.terms.empty()) throw std::invalid_argument("newton_polyhedron: zero polynomial");
    int n = f.n;
    if (n > max_dim) throw ConfigError("newton_polyhedron: dimension above configured cap");
    NewtonData nd;
    nd.n = n;
    for (auto& [e, c] : f.terms) {
        nd.support.push_back(IVec(e.begin(), e.end()));
        nd.coeffs.push_back(c);
    }
    const auto& S = nd.support;
    int m = (int)S.size();
    // minimal points under the componentwise order generate Gamma
    std::vector<int> mins;
    for (int a = 0; a < m; ++a) {
        bool dominated = false;
        for (int b = 0; b < m && !dominated; ++b) {
            if (a == b) continue;
            bool le = true;
            for (int j = 0; j < n; ++j) le = le && S[b][j] <= S[a][j];
            dominated = le;
        }
        if (!dominated) mins.push_back(a);
    }
    std::set<IVec> seen;
    for (int k = 1; k <= std::min<int>(n, (int)mins.size()); ++k) {
        detail::for_each_subset((int)mins.size(), k, [&](const std::vector<int>& pi) {
            detail::for_each_subset(n, n - k, [&](const std::vector<int>& dirs) {
                linalg::QMat rows;
                for (int i = 1; i < k; ++i) {
                    std::vector<Q> r(n);
                    for (int j = 0; j < n; ++j) r[j] = S[mins[pi[i]]][j] - S[mins[pi[0]]][j];
                    rows.push_back(r);
                }
                for (int d : dirs) {
                    std::vector<Q> r(n, Q(0));
                    r[d] = 1;
                    rows.push_back(r);
                }
                auto ns = linalg::nullspace(rows, n);
                if (ns.size() != 1) return;
                IVec v = linalg::primitive(ns[0]);
                bool pos = std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
                bool neg = std::all_of(v.begin(), v.end(), [](long x) { return x <= 0; });
                if (!pos && neg)
                    for (auto& x : v) x = -x;
                else if (!pos)
                    return;
                if (seen.count(v)) return;
                long c = linalg::dot(v, S[mins[pi[0]]]);
                for (int a : mins)
                    if (linalg::dot(v, S[a]) < c) return;
                seen.insert(v);
                Facet F{v, c, {}};
                for (int a = 0; a < m; ++a)
                    if (linalg::dot(v, S[a]) == c) F.pts.push_back(a);
                nd.facets.push_back(F);
            });
        });
    }
    std::sort(nd.facets.begin(), nd.facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    for (int a : mins) {
        std::vector<IVec> tight;
        for (auto& F : nd.facets)
            if (linalg::dot(F.normal, S[a]) == F.offset) tight.push_back(F.normal);
        if (linalg::rank(tight, n) == n) nd.vertices.push_back(a);
    }
    std::sort(nd.vertices.begin(), nd.vertices.end(), [&](int a, int b) { return S[a] < S[b]; });
    // faces: closure of facet point sets under intersection
    std::set<std::vector<int>> fs;
    for (auto& F : nd.facets) fs.insert(F.pts);
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<int>> cur(fs.begin(), fs.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<int> x;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(), std::back_inserter(x));
                if (!x.empty() && fs.insert(x).second) grew = true;
            }
    }
    for (auto& pts : fs) {
        Face fc;
        fc.pts = pts;
        fc.normal.assign(n, 0);
        for (auto& F : nd.facets)
            if (std::includes(F.pts.begin(), F.pts.end(), pts.begin(), pts.end()))
                for (int j = 0; j < n; ++j) fc.normal[j] += F.normal[j];
        fc.dim = detail::affine_dim(S, pts, n);
        nd.faces.push_back(fc);
    }
    return nd;
}

// phi_f(v) = min over Gamma of v . a, for v >= 0
inline Q phi_f(const NewtonData& nd, const std::vector<Q>& v) {
    for (auto& x : v)
        if (x < 0) throw ContractError("phi_f: vector must be nonnegative");
    Q best;
    bool first = true;
    for (auto& a : nd.support) {
        Q s = linalg::dot(v, a);
        if (first || s < best) best = s;
        first = false;
    }
    return best;
}

inline long phi_f(const NewtonData& nd, const IVec& v) {
    std::vector<Q> q(v.begin(), v.end());
    return to_long(phi_f(nd, q));
}

namespace detail {

inline void sort_rays(std::vector<IVec>& rays) {
    if (!rays.empty() && rays[0].size() == 2) {
        // counterclockwise from the first axis
        std::sort(rays.begin(), rays.end(), [](const IVec& a, const IVec& b) { return a[1] * b[0] < b[1] * a[0]; });
    } else {
        std::sort(rays.begin(), rays.end(), std::greater<IVec>());
    }
}

}  // namespace detail

// Maximal cones correspond to vertices: rays are the normals of the facets through the vertex.
inline Fan normal_fan(const NewtonData& nd) {
    Fan fan;
    fan.n = nd.n;
    std::set<IVec> all;
    for (int v : nd.vertices) {
        Cone c;
        for (auto& F : nd.facets)
            if (linalg::dot(F.normal, nd.support[v]) == F.offset) c.rays.push_back(F.normal);
        detail::sort_rays(c.rays);
        all.insert(c.rays.begin(), c.rays.end());
        fan.cones.push_back(c);
    }
    fan.rays.assign(all.begin(), all.end());
    detail::sort_rays(fan.rays);
    return fan;
}

namespace detail {

// facets (as ray subsets) of the cone spanned by S
inline std::vector<std::vector<IVec>> cone_facets(const std::vector<IVec>& S, int n) {
    int k = linalg::rank(S, n);
    linalg::QMat perp = linalg::nullspace(linalg::to_q(S), n);  // span(S)^perp
    std::set<std::vector<IVec>> out;
    for_each_subset((int)S.size(), k - 1, [&](const std::vector<int>& idx) {
        std::vector<IVec> T;
        for (int i : idx) T.push_back(S[i]);
        if (linalg::rank(T, n) != k - 1) return;
        linalg::QMat rows = linalg::to_q(T);
        rows.insert(rows.end(), perp.begin(), perp.end());
        auto ns = linalg::nullspace(rows, n);
        if (ns.size() != 1) return;
        int sgn = 0;
        std::vector<IVec> face;
        for (auto& s : S) {
            Q d = linalg::dot(ns[0], s);
            if (d == 0) {
                face.push_back(s);
                continue;
            }
            int sd = d > 0 ? 1 : -1;
            if (sgn == 0) sgn = sd;
            if (sd != sgn) return;
        }
        std::sort(face.begin(), face.end());
        out.insert(face);
    });
    return {out.begin(), out.end()};
}

inline std::vector<std::vector<IVec>> pulling(std::vector<IVec> S, int n) {
    std::sort(S.begin(), S.end());
    int k = linalg::rank(S, n);
    if ((int)S.size() == k) return {S};
    const IVec& r0 = S[0];
    std::vector<std::vector<IVec>> out;
    for (auto& F : cone_facets(S, n)) {
        if (std::find(F.begin(), F.end(), r0) != F.end()) continue;
        for (auto simplex : pulling(F, n)) {
            simplex.push_back(r0);
            std::sort(simplex.begin(), simplex.end());
            out.push_back(simplex);
        }
    }
    if (out.empty()) throw std::logic_error("simplicial_subdivide: cone cannot be triangulated by its rays");
    return out;
}

}  // namespace detail

// Pulling triangulation at the lexicographically smallest ray; adds no rays.
inline Fan simplicial_subdivide(const Fan& fan) {
    Fan out;
    out.n = fan.n;
    out.rays = fan.rays;
    for (auto& c : fan.cones) {
        if ((int)c.rays.size() == fan.n) {
            out.cones.push_back(c);
            continue;
        }
        for (auto& s : detail::pulling(c.rays, fan.n)) {
            Cone cc{s};
            detail::sort_rays(cc.rays);
            out.cones.push_back(cc);
        }
    }
    return out;
}

inline bool is_simplicial(const Fan& fan) {
    for (auto& c : fan.cones)
        if ((int)c.rays.size() != fan.n || linalg::rank(c.rays, fan.n) != fan.n) return false;
    return true;
}

inline MPoly face_poly(const NewtonData& nd, const Face& face) {
    MPoly g(nd.n);
    for (int i : face.pts) g.add_term(std::vector<int>(nd.support[i].begin(), nd.support[i].end()), nd.coeffs[i]);
    return g;
}

namespace detail {

// face with collinear support: f_tau = x^{a0} P(x^delta); singular on the torus iff P has a repeated nonzero root
inline bool collinear_face_ok(const NewtonData& nd, const Face& face) {
    if (face.pts.size() <= 1) return true;
    int n = nd.n;
    const IVec& a0 = nd.support[face.pts[0]];
    std::vector<std::pair<long, Q>> ks;
    long kmin = 0;
    // pick the direction of the second point, made primitive
    const IVec& a1 = nd.support[face.pts[1]];
    IVec dir(n);
    long gd = 0;
    for (int j = 0; j < n; ++j) gd = gcd_l(gd, a1[j] - a0[j]);
    for (int j = 0; j < n; ++j) dir[j] = (a1[j] - a0[j]) / gd;
    int piv = 0;
    while (dir[piv] == 0) ++piv;
    for (size_t t = 0; t < face.pts.size(); ++t) {
        const IVec& a = nd.support[face.pts[t]];
        long k = (a[piv] - a0[piv]) / dir[piv];
        ks.push_back({k, nd.coeffs[face.pts[t]]});
        kmin = std::min(kmin, k);
    }
    UPoly P;
    for (auto& [k, c] : ks) P = P + UPoly::monomial(c, k - kmin);
    UPoly G = gcd(P, P.derivative());
    // strip powers of t: roots at 0 do not lie on the torus
    while (G.deg() > 0 && G.c[0] == 0) G.c.erase(G.c.begin());
    return G.deg() <= 0;
}

inline std::optional<long> torus_singular_mod(const MPoly& g, long q, unsigned long long budget) {
    StratumSpec s;
    s.n = g.n;
    s.torus.assign(g.n, true);
    s.eqs.push_back(g);
    for (int i = 0; i < g.n; ++i)
        if (!g.diff(i).terms.empty()) s.eqs.push_back(g.diff(i));
    for (auto& e : s.eqs)
        if (ff::bad_prime(e, q)) return std::nullopt;
    return (long)count_points(s, q, budget);
}

}  // namespace detail

inline std::vector<long> default_check_primes() { return {7, 11, 13, 17, 19}; }

// every proper face polynomial is nonsingular on the torus
inline Certificate is_nondegenerate(const MPoly& f, const std::vector<long>& primes = default_check_primes(),
                                    unsigned long long budget = 100000000ULL) {
    NewtonData nd = newton_polyhedron(f);
    Certificate cert;
    for (auto& face : nd.faces) {
        if (face.dim <= 1) {
            if (!detail::collinear_face_ok(nd, face)) {
                cert.holds = false;
                cert.kind = Certificate::Kind::Proved;
                cert.witness = "face " + to_string(face_poly(nd, face)) + " is singular on the torus";
                return cert;
            }
            continue;
        }
        MPoly g = face_poly(nd, face);
        int used = 0, hits = 0;
        for (long q : primes) {
            auto r = detail::torus_singular_mod(g, q, budget);
            if (!r) continue;
            ++used;
            if (*r > 0) ++hits;
            if (std::find(cert.primes.begin(), cert.primes.end(), q) == cert.primes.end()) cert.primes.push_back(q);
        }
        cert.kind = Certificate::Kind::Probabilistic;
        if (used > 0 && 2 * hits > used) {
            cert.holds = false;
            cert.witness = "face " + to_string(g) + " has torus singular points mod the check primes";
            return cert;
        }
    }
    return cert;
}

}  // namespace qzeta
