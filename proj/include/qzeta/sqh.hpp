#pragma once

#include "groups.hpp"
#include "mpoly.hpp"
#include "toric.hpp"
#include "upoly.hpp"

#include <optional>
#include <vector>

namespace qzeta {

struct Weight {
    std::vector<long> w;
    long d = 0;
    long total() const {
        long s = 0;
        for (long x : w) s += x;
        return s;
    }
    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
        return s + ")";
    }
};

inline long wdeg(const std::vector<long>& w, const std::vector<int>& e) {
    long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * e[i];
    return s;
}

struct SqhData {
    MPoly f, fd, tail;
    Weight w;
    Certificate isolated;
    int n() const { return f.n; }
};

// terms of minimal w-degree; sets w.d
inline MPoly principal_part(const MPoly& f, Weight& w) {
    if ((int)w.w.size() != f.n) throw ConfigError("weight length does not match the number of variables");
    for (long x : w.w)
        if (x <= 0) throw ConfigError("weights must be positive");
    if (f.terms.empty()) throw ConfigError("zero polynomial");
    long d = -1;
    for (auto& [e, c] : f.terms) {
        long k = wdeg(w.w, e);
        if (d < 0 || k < d) d = k;
    }
    w.d = d;
    MPoly fd(f.n);
    for (auto& [e, c] : f.terms)
        if (wdeg(w.w, e) == d) fd.add_term(e, c);
    return fd;
}

namespace detail {

// polynomial in y with coefficients in Q[x]
using BiPoly = std::vector<UPoly>;

inline void bi_trim(BiPoly& a) {
    while (!a.empty() && a.back().zero()) a.pop_back();
}

inline BiPoly to_bi(const MPoly& f) {
    BiPoly b;
    for (auto& [e, c] : f.terms) {
        int ey = f.n > 1 ? e[1] : 0;
        if ((int)b.size() <= ey) b.resize(ey + 1);
        b[ey] = b[ey] + UPoly::monomial(c, e[0]);
    }
    bi_trim(b);
    return b;
}

inline UPoly bi_content(const BiPoly& a) {
    UPoly g;
    for (auto& c : a) g = gcd(g, c);
    return g;
}

inline BiPoly bi_pp(const BiPoly& a) {
    UPoly g = bi_content(a);
    BiPoly out;
    for (auto& c : a) out.push_back(divmod(c, g).first);
    return out;
}

inline BiPoly bi_prem(BiPoly a, const BiPoly& b) {
    const UPoly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        size_t k = a.size() - b.size();
        UPoly la = a.back();
        for (auto& c : a) c = c * lb;
        for (size_t i = 0; i < b.size(); ++i) a[i + k] = a[i + k] - la * b[i];
        bi_trim(a);
    }
    return a;
}

inline BiPoly bi_gcd(BiPoly a, BiPoly b) {
    bi_trim(a);
    bi_trim(b);
    if (a.empty()) return b.empty() ? b : bi_pp(b);
    if (b.empty()) return bi_pp(a);
    UPoly c = gcd(bi_content(a), bi_content(b));
    a = bi_pp(a);
    b = bi_pp(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        BiPoly r = bi_prem(a, b);
        a = b;
        b = r.empty() ? r : bi_pp(r);
    }
    BiPoly g = a.size() <= 1 ? BiPoly{UPoly::monomial(Q(1), 0)} : a;
    for (auto& x : g) x = x * c;
    return g;
}

inline MPoly from_bi(const BiPoly& b, int n) {
    MPoly f(n);
    for (size_t k = 0; k < b.size(); ++k)
        for (size_t i = 0; i < b[k].c.size(); ++i)
            if (b[k].c[i] != 0) {
                std::vector<int> e(n, 0);
                e[0] = (int)i;
                if (n > 1) e[1] = (int)k;
                f.add_term(e, b[k].c[i]);
            }
    return f;
}

// partial derivatives lose terms mod q, or coefficients vanish
inline bool bad_for_gradient(const MPoly& f, long q) {
    if (ff::bad_prime(f, q)) return true;
    for (auto& [e, c] : f.terms)
        for (int a : e)
            if (a > 0 && a % q == 0) return true;
    return false;
}

inline std::vector<long> gradient_primes(const MPoly& f, const std::vector<long>& preferred, size_t want) {
    std::vector<long> out;
    for (long q : preferred)
        if (ff::is_prime(q) && !bad_for_gradient(f, q)) out.push_back(q);
    for (long q = preferred.empty() ? 5 : preferred.back() + 1; out.size() < want; ++q)
        if (ff::is_prime(q) && !bad_for_gradient(f, q)) out.push_back(q);
    return out;
}

}  // namespace detail

inline std::vector<long> default_isolation_primes() { return {5, 7, 11}; }

// Exact for n <= 2 via gcd(f, f_x, f_y); for n >= 3 searches F_q^n minus the origin for
// singular points of {f = 0} and takes the majority over the primes.
inline Certificate is_isolated_singularity(const MPoly& f, const std::vector<long>& primes = default_isolation_primes(),
                                          unsigned long long budget = 100000000ULL) {
    Certificate cert;
    if (f.terms.empty()) {
        cert.holds = false;
        cert.witness = "zero polynomial";
        return cert;
    }
    if (f.n <= 1) return cert;
    if (f.n == 2) {
        auto g = detail::bi_gcd(detail::bi_gcd(detail::to_bi(f), detail::to_bi(f.diff(0))), detail::to_bi(f.diff(1)));
        MPoly gm = detail::from_bi(g, 2);
        if (gm.total_degree() > 0 && gm.constant_term() == 0) {
            cert.holds = false;
            Q lc = gm.terms.rbegin()->second;
            cert.witness = "singular along {" + to_string((Q(1) / lc) * gm) + " = 0}";
        }
        return cert;
    }
    cert.kind = Certificate::Kind::Probabilistic;
    cert.primes = detail::gradient_primes(f, primes, primes.size());
    StratumSpec s;
    s.n = f.n;
    s.eqs.push_back(f);
    for (int i = 0; i < f.n; ++i)
        if (!f.diff(i).terms.empty()) s.eqs.push_back(f.diff(i));
    bool origin_sing = f.constant_term() == 0;
    for (int i = 0; i < f.n && origin_sing; ++i) origin_sing = f.diff(i).constant_term() == 0;
    int hits = 0;
    std::string wit;
    for (long q : cert.primes) {
        long c = (long)count_points(s, q, budget) - (origin_sing ? 1 : 0);
        if (c > 0) {
            ++hits;
            if (wit.empty()) wit = std::to_string(c) + " singular points mod " + std::to_string(q) + " away from the origin";
        }
    }
    if (2 * hits > (int)cert.primes.size()) {
        cert.holds = false;
        cert.witness = wit;
    }
    return cert;
}

// Candidate weights: strictly positive compact-facet normals (lexicographic), then normals of lower-dimensional
// compact faces; the first whose principal part has an isolated singularity wins.
inline std::optional<SqhData> infer_weight(const MPoly& f, const std::vector<long>& primes = default_isolation_primes()) {
    if (f.terms.empty() || f.constant_term() != 0) return std::nullopt;
    NewtonData nd = newton_polyhedron(f);
    std::vector<IVec> facet_c, face_c;
    for (auto& F : nd.facets)
        if (F.compact()) facet_c.push_back(F.normal);
    for (auto& fc : nd.faces) {
        bool pos = std::all_of(fc.normal.begin(), fc.normal.end(), [](long x) { return x > 0; });
        if (!pos) continue;
        std::vector<Q> v(fc.normal.begin(), fc.normal.end());
        face_c.push_back(linalg::primitive(v));
    }
    std::sort(facet_c.begin(), facet_c.end());
    std::sort(face_c.begin(), face_c.end());
    std::vector<IVec> cands = facet_c;
    for (auto& v : face_c)
        if (std::find(cands.begin(), cands.end(), v) == cands.end()) cands.push_back(v);
    for (auto& v : cands) {
        Weight w{v, 0};
        MPoly fd = principal_part(f, w);
        Certificate c = is_isolated_singularity(fd, primes);
        if (!c.holds) continue;
        SqhData s{f, fd, f - fd, w, c};
        return s;
    }
    return std::nullopt;
}

// Validates the weight; throws ConfigError when the principal part is not an isolated singularity.
inline SqhData make_sqh(const MPoly& f, Weight w, bool assert_isolated = false,
                        const std::vector<long>& primes = default_isolation_primes()) {
    long g = 0;
    for (long x : w.w) g = gcd_l(g, x);
    if (g != 1) throw ConfigError("weight entries must have gcd 1");
    if (f.constant_term() != 0) throw ConfigError("f(0) must be 0");
    MPoly fd = principal_part(f, w);
    Certificate c;
    if (assert_isolated) {
        c.kind = Certificate::Kind::Asserted;
    } else {
        c = is_isolated_singularity(fd, primes);
        if (!c.holds) throw ConfigError("principal part has no isolated singularity: " + c.witness);
    }
    return SqhData{f, fd, f - fd, w, c};
}

// Weighted blow-up chart i (0-based): x_j = l^{w_j} u_j (j != i), x_i = l^{w_i}, divided by l^d.
// The result keeps the variable count, with l in slot i.
struct Chart {
    MPoly H;
    DiagGroup group;
};

inline Chart chart_substitute(const MPoly& f, const Weight& w, int i) {
    if (i < 0 || i >= f.n) throw ContractError("chart index out of range");
    MPoly H(f.n);
    for (auto& [e, c] : f.terms) {
        long k = wdeg(w.w, e) - w.d;
        if (k < 0) throw ConfigError("invalid weight: degree below d");
        std::vector<int> e2 = e;
        e2[i] = (int)k;
        H.add_term(e2, c);
    }
    std::vector<long> a = w.w;
    a[i] = -1;
    return {H, DiagGroup::cyclic(w.w[i], a)};
}

// inverse of chart_substitute, up to the factor l^d
inline MPoly chart_unsubstitute_check(const MPoly& H, const Weight& w, int i) {
    MPoly f(H.n);
    for (auto& [e, c] : H.terms) {
        // l^{k} prod u_j^{a_j}: a_i = (k + d - sum_{j != i} w_j a_j) / w_i
        long s = e[i] + w.d;
        for (int j = 0; j < H.n; ++j)
            if (j != i) s -= w.w[j] * e[j];
        if (s % w.w[i] != 0 || s < 0) throw ContractError("chart term not in the image");
        std::vector<int> e2 = e;
        e2[i] = (int)(s / w.w[i]);
        f.add_term(e2, c);
    }
    return f;
}

}  // namespace qzeta
