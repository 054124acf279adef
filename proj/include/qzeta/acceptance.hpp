#pragma once

#include "count.hpp"
#include "stringy.hpp"
#include "symb.hpp"
#include "toric.hpp"
#include "zeta.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qzeta::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit = 0;  // wall-clock bound in seconds, 0 = none
};

namespace detail {

inline UPoly P(std::vector<long> c) {
    UPoly p;
    for (long v : c) p.c.push_back(Q(v));
    return p;
}

inline SqhData sqh(const std::string& src, std::vector<std::string> vars = {}) {
    auto s = infer_weight(parse_poly(src, vars));
    if (!s) throw std::runtime_error("no admissible weight for " + src);
    return *s;
}

// classical closed form of L^2 Z for x^2 + y^3, one term per stratum
inline MotZeta cusp_closed_form(bool local) {
    FactorNu F1(1, 1), F6(6, 5);
    MotZeta z;
    z.prefactor = -2;
    if (!local) {
        z.terms.push_back({P({0, -1, 1}), {{0, 0}}, {}, ""});
        z.terms.push_back({P({-1, 1}), {{0, 0}}, {F1}, ""});
    }
    z.terms.push_back({P({-2, 1}), {{0, 0}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}, {2, 2}, {4, 4}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}, {3, 3}}, {F6}, ""});
    z.terms.push_back({P({1}), {{0, 0}}, {F1, F6}, ""});
    return z;
}

inline std::string cls_str(const UPoly& p) { return p.zero() ? "0" : p.str("L"); }

}  // namespace detail

inline Result c1_cusp_regression(const CountConfig& cfg) {
    Result r{1, "cusp local motivic zeta equals the closed form", false, "", 0, 1.0};
    auto s = detail::sqh("x^2+y^3");
    bool loc = normalize(motivic_zeta(s, true, cfg)) == normalize(detail::cusp_closed_form(true));
    bool glob = normalize(motivic_zeta(s, false, cfg)) == normalize(detail::cusp_closed_form(false));
    r.pass = loc && glob;
    r.detail = std::string("local ") + (loc ? "equal" : "differs") + ", global " + (glob ? "equal" : "differs");
    return r;
}

inline Result c2_threefold_table(const CountConfig& cfg) {
    Result r{2, "three-fold chart table (classes and groups)", false, "", 0, 60.0};
    auto s = detail::sqh("x^5+y*z^2+x*y^3");
    std::map<std::pair<int, std::string>, std::pair<UPoly, DiagGroup>> got;
    for (int i = 0; i < 3; ++i)
        for (auto& st : chart_data(s, i, cfg)) {
            if (st.label.rfind("E°", 0) != 0) continue;
            auto b = st.label.find("I="), e = st.label.find("]");
            std::string I = st.label.substr(b + 2, e - b - 2);
            int nI = I == "{}" ? 0 : (int)std::count(I.begin(), I.end(), ',') + 1;
            got[{i + 1, I}] = {Lm1_pow(nI) - st.cls, st.group};
        }
    struct Row {
        int i;
        std::string I;
        UPoly cls;
        std::string group;
    };
    std::vector<Row> rows{{1, "{2,3}", detail::P({-3, 1}), "1"},   {1, "{2}", detail::P({1}), "1/2(1,0,1)"},
                          {1, "{3}", UPoly(), "1"},                {1, "{}", UPoly(), "1/6(-1,8,11)"},
                          {2, "{3}", detail::P({1}), "1"},         {2, "{}", detail::P({1}), "1/8(6,-1,11)"},
                          {3, "{}", detail::P({1}), "1/11(6,8,-1)"}};
    std::ostringstream bad;
    int ok = 0;
    for (auto& row : rows) {
        auto it = got.find({row.i, row.I});
        if (it == got.end()) {
            bad << " (" << row.i << "," << row.I << ") missing;";
            continue;
        }
        DiagGroup want = row.group == "1" ? DiagGroup::trivial(3) : parse_group(row.group, 3);
        bool cls_ok = it->second.first.c == row.cls.c || (it->second.first.zero() && row.cls.zero());
        bool grp_ok = it->second.second == want;
        if (cls_ok && grp_ok) {
            ++ok;
        } else {
            bad << " (" << row.i << "," << row.I << ") class " << detail::cls_str(it->second.first) << " want "
                << detail::cls_str(row.cls) << (grp_ok ? "" : ", group " + it->second.second.str() + " want " + row.group) << ";";
        }
    }
    r.pass = ok == (int)rows.size();
    r.detail = std::to_string(ok) + "/" + std::to_string(rows.size()) + " rows match" + bad.str();
    return r;
}

inline Result c3_dim2_agreement(const CountConfig& cfg) {
    Result r{3, "dim-2 closed form agrees with the general formula", false, "", 0, 0};
    std::mt19937 rng(3);
    int done = 0, agree = 0;
    std::string first_bad;
    std::set<std::string> seen;
    while (done < 20) {
        long p = rng() % 7 + 1, q = rng() % 7 + 1;
        if (gcd_l(p, q) != 1) continue;
        int a = rng() % 2, b = rng() % 2, K = rng() % 3;
        if (K == 0 && !(a == 1 && b == 1)) continue;
        long d = p * q * K + p * a + q * b;
        if (d > 40 || d <= 1) continue;
        MPoly f = MPoly::mono({a, b}, Q(1));
        std::set<long> cs;
        while ((int)cs.size() < K) cs.insert((long)(rng() % 9) - 4);
        if (cs.count(0)) continue;
        for (long c : cs) f = f * (MPoly::mono({(int)q, 0}, Q(1)) - MPoly::mono({0, (int)p}, Q(c)));
        std::string key = to_string(f);
        if (seen.count(key)) continue;
        auto s = infer_weight(f);
        if (!s || s->w.w != std::vector<long>{p, q}) continue;
        seen.insert(key);
        ++done;
        if (normalize(motivic_zeta(*s, true, cfg)) == normalize(motivic_zeta_dim2(*s))) {
            ++agree;
        } else if (first_bad.empty()) {
            first_bad = key;
        }
    }
    r.pass = agree == done;
    r.detail = std::to_string(agree) + "/" + std::to_string(done) + " agree" + (first_bad.empty() ? "" : "; first mismatch " + first_bad);
    return r;
}

inline Result c4_pole_survival(const CountConfig& cfg) {
    Result r{4, "poles -1 and -|w|/d survive with multiplicity 1", false, "", 0, 0};
    bool all = true;
    std::ostringstream os;
    for (auto src : {"x^2+y^3", "x^2+y^5", "x^3+y^4", "x^3+y^5"}) {
        auto s = detail::sqh(src);
        std::vector<Pole> want{{Q(-1), 1}, {Q(-s.w.total()) / Q(s.w.d), 1}};
        std::sort(want.begin(), want.end(), [](const Pole& a, const Pole& b) { return a.s0 < b.s0; });
        auto rep = poles_dim2(s, cfg);
        bool ok = rep.poles == want;
        all = all && ok;
        os << src << ": " << to_string(rep.poles) << (ok ? "" : " (unexpected)") << "; ";
    }
    r.pass = all;
    r.detail = os.str();
    return r;
}

// chi of the projective hypersurface of a homogeneous f, via ([cone] - 1) / (L - 1)
inline Q projective_euler(const MPoly& f, const CountConfig& cfg) {
    UPoly cone = hypersurface_class(f, cfg);
    auto [qt, rem] = divmod(cone - UPoly::monomial(Q(1), 0), UPoly(std::vector<Q>{Q(-1), Q(1)}));
    if (!rem.zero()) throw std::logic_error("cone class not divisible by L - 1");
    return Q(euler_char(qt));
}

inline Result c5_topological(const CountConfig& cfg) {
    Result r{5, "topological specialization and homogeneous Euler characteristics", false, "", 0, 0};
    std::ostringstream os;
    std::string top = to_string(specialize_topological(motivic_zeta(detail::sqh("x^2+y^3"), true, cfg)));
    bool ok = top == "(4s+5)/((s+1)(6s+5))";
    os << "cusp " << top << "; ";
    for (auto [src, n, d] : std::vector<std::tuple<std::string, long, long>>{{"x^3+y^3", 2, 3}, {"x^3+y^3+z^3", 3, 3}}) {
        Q want = Q(n) - (Q(1) + q_pow(Q(-1), n - 1) * q_pow(Q(d - 1), n)) / Q(d);
        os << "(n,d)=(" << n << "," << d << ") formula " << str(want);
        try {
            Q chi = projective_euler(parse_poly(src), cfg);
            os << ", oracle " << str(chi);
            if (chi != want) ok = false;
        } catch (const std::exception& e) {
            os << ", oracle failed: " << e.what();
            ok = false;
        }
        os << "; ";
    }
    r.pass = ok;
    r.detail = os.str();
    return r;
}

inline Result c6_igusa(const CountConfig& cfg) {
    Result r{6, "Igusa Poincare series matches the p-adic specialization", false, "", 0, 300.0};
    bool all = true;
    std::ostringstream os;
    for (auto src : {"x", "x*y", "x^2+y^3"})
        for (long p : {5L, 7L}) {
            auto s = detail::sqh(src);
            auto rep = igusa_check(motivic_zeta(s, false, cfg), s.f, p, 4, cfg);
            all = all && rep.matched;
            os << src << " p=" << p << (rep.matched ? " ok" : " MISMATCH") << "; ";
        }
    r.pass = all;
    r.detail = os.str() + "m <= 4";
    return r;
}

inline Result c7_principal_part(const CountConfig& cfg) {
    Result r{7, "local motivic zeta depends only on the principal part", false, "", 0, 0};
    struct Fx {
        std::string f, fd;
        std::vector<long> w;
    };
    std::vector<Fx> fx{{"x^2+y^3+y^4", "x^2+y^3", {3, 2}},
                       {"x^2+y^3+x*y^2", "x^2+y^3", {3, 2}},
                       {"x^3+y^4+x^2*y^2", "x^3+y^4", {4, 3}},
                       {"x^2+y^5+x*y^3", "x^2+y^5", {5, 2}},
                       {"x^3+y^5+x^2*y^2", "x^3+y^5", {5, 3}},
                       {"x*y+x^3+y^3", "x*y", {1, 1}},
                       {"x^2+y^2+x^2*y", "x^2+y^2", {1, 1}},
                       {"x^2+y^2+z^2+x*y*z", "x^2+y^2+z^2", {1, 1, 1}},
                       {"x^2+y^3+z^3+z^4", "x^2+y^3+z^3", {3, 2, 2}},
                       {"x^5+y*z^2+x*y^3+x^6+z^5", "x^5+y*z^2+x*y^3", {6, 8, 11}}};
    int ok = 0;
    std::string bad;
    for (auto& x : fx) {
        std::vector<std::string> vars = x.w.size() == 2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x", "y", "z"};
        auto a = make_sqh(parse_poly(x.f, vars), Weight{x.w, 0});
        auto b = make_sqh(parse_poly(x.fd, vars), Weight{x.w, 0});
        if (a.tail.zero() || a.fd != b.f) {
            bad += " " + x.f + " (fixture has no tail)";
            continue;
        }
        if (normalize(motivic_zeta(a, true, cfg)) == normalize(motivic_zeta(b, true, cfg))) {
            ++ok;
        } else {
            bad += " " + x.f;
        }
    }
    r.pass = ok == (int)fx.size();
    r.detail = std::to_string(ok) + "/" + std::to_string(fx.size()) + " invariant" + (bad.empty() ? "" : ";" + bad);
    return r;
}

inline Result c8_class_identities(const CountConfig& cfg) {
    Result r{8, "classes of C^n/G and (C*)^n/G", false, "", 0, 0};
    std::mt19937 rng(17);
    int ok = 0;
    std::string bad;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + rng() % 3;
        long ord = 2 + rng() % 6;
        std::vector<long> a(n);
        for (auto& x : a) x = rng() % ord;
        auto G = DiagGroup::cyclic(ord, a);
        StratumSpec s;
        s.n = n;
        s.group = G;
        UPoly Ln = L_pow(n), T = Lm1_pow(n);
        bool affine_ok = class_interpolate(s, n, cfg).c == Ln.c;
        s.torus.assign(n, true);
        bool torus_ok = class_interpolate(s, n, cfg).c == T.c;
        if (affine_ok && torus_ok) {
            ++ok;
        } else {
            bad += " " + G.str();
        }
    }
    r.pass = ok == 10;
    r.detail = std::to_string(ok) + "/10 groups" + (bad.empty() ? "" : "; failed" + bad);
    return r;
}

inline Result c9_stringy(const CountConfig& cfg) {
    Result r{9, "stringy E-function cross-validation", false, "", 0, 0};
    std::ostringstream os;
    bool ok = true;
    for (long w : {2L, 3L}) {
        std::vector<StringyStratum> id{{"", detail::P({-1, 0, 1}), DiagGroup::trivial(2), {Q(1), Q(1)}},
                                       {"", detail::P({1}), DiagGroup::cyclic(w, {1, 1}), {Q(1), Q(1)}}};
        std::vector<StringyStratum> res{{"", detail::P({-1, 0, 1}), DiagGroup::trivial(2), {Q(1), Q(1)}},
                                        {"", detail::P({1, 1}), DiagGroup::trivial(2), {Q(2, w), Q(1)}}};
        EFun a = stringy_from_qres(id), b = stringy_from_qres(res);
        ok = ok && a == b;
        os << "1/" << w << "(1,1): " << to_string(a) << (a == b ? " both" : " vs " + to_string(b)) << "; ";
    }
    for (auto [src, want] : std::vector<std::pair<std::string, std::string>>{{"x^2+y^2+z^2", "q^2 + q"}, {"x^2+y^2+z^3", "q^2 + 2*q"}}) {
        std::vector<std::string> vars{"x", "y", "z"};
        EFun a = stringy_sqh(detail::sqh(src, vars), cfg), b = stringy_nondeg(parse_poly(src, vars), cfg);
        bool good = a == b && to_string(a) == want;
        ok = ok && good;
        os << src << ": sqh " << to_string(a) << ", nondeg " << to_string(b) << "; ";
    }
    r.pass = ok;
    r.detail = os.str();
    return r;
}

inline Result c10_fan(const CountConfig&) {
    Result r{10, "normal fan and ray-preserving simplicial subdivision", false, "", 0, 0};
    std::ostringstream os;
    auto fan = normal_fan(newton_polyhedron(parse_poly("x^6+x^2*y^2+y^5")));
    std::set<IVec> got(fan.rays.begin(), fan.rays.end()), want{{1, 0}, {1, 2}, {3, 2}, {0, 1}};
    bool ok = got == want && fan.rays.size() == want.size();
    os << "rays";
    for (auto& v : fan.rays) os << " (" << v[0] << "," << v[1] << ")";
    for (auto src : {"x^6+x^2*y^2+y^5", "x^2+y^3", "x^3*y+y^5+x^7", "x^2+y^5+x*y^3"}) {
        auto f2 = normal_fan(newton_polyhedron(parse_poly(src)));
        auto sub = simplicial_subdivide(f2);
        bool same = sub.cones.size() == f2.cones.size();
        for (size_t i = 0; same && i < f2.cones.size(); ++i) same = sub.cones[i].rays == f2.cones[i].rays;
        if (!same) os << "; " << src << " changed by subdivision";
        ok = ok && same;
    }
    Fan sq;
    sq.n = 3;
    sq.rays = {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    sq.cones = {Cone{sq.rays}};
    auto sub = simplicial_subdivide(sq);
    std::set<IVec> rs(sq.rays.begin(), sq.rays.end());
    bool kept = sub.rays == sq.rays;
    for (auto& c : sub.cones)
        for (auto& v : c.rays) kept = kept && rs.count(v);
    bool simp = is_simplicial(sub) && sub.cones.size() == 2;
    ok = ok && kept && simp;
    os << "; square cone -> " << sub.cones.size() << " simplicial cones" << (kept ? "" : ", rays changed");
    r.pass = ok;
    r.detail = os.str();
    return r;
}

inline std::vector<std::function<Result(const CountConfig&)>> criteria() {
    return {c1_cusp_regression, c2_threefold_table, c3_dim2_agreement, c4_pole_survival, c5_topological,
            c6_igusa,           c7_principal_part,  c8_class_identities, c9_stringy,      c10_fan};
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"cusp local motivic zeta equals the closed form",
                                            "three-fold chart table (classes and groups)",
                                            "dim-2 closed form agrees with the general formula",
                                            "poles -1 and -|w|/d survive with multiplicity 1",
                                            "topological specialization and homogeneous Euler characteristics",
                                            "Igusa Poincare series matches the p-adic specialization",
                                            "local motivic zeta depends only on the principal part",
                                            "classes of C^n/G and (C*)^n/G",
                                            "stringy E-function cross-validation",
                                            "normal fan and ray-preserving simplicial subdivision"};
    return n;
}

inline Result run_one(int id, const CountConfig& cfg) {
    auto all = criteria();
    if (id < 1 || id > (int)all.size()) throw std::out_of_range("no criterion " + std::to_string(id));
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = all[id - 1](cfg);
    } catch (const std::exception& e) {
        r.id = id;
        r.name = names()[id - 1];
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.limit > 0 && r.seconds > r.limit) {
        r.pass = false;
        r.detail += "; over time limit";
    }
    return r;
}

inline std::string line(const Result& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << std::fixed;
    os.precision(2);
    os << r.seconds << " s";
    if (r.limit > 0) os << " / limit " << r.limit << " s";
    os << "] " << r.detail;
    return os.str();
}

}  // namespace qzeta::acceptance
