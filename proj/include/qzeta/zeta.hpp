#pragma once

#include "count.hpp"
#include "groups.hpp"
#include "sqh.hpp"
#include "symb.hpp"

#include <map>
#include <string>
#include <vector>

namespace qzeta {

// One piece Y_k of a resolution: class, local group, and (N, nu) in the group's coordinates.
struct Stratum {
    std::string label;
    UPoly cls;
    DiagGroup group;
    std::vector<Q> N, nu;
    bool local = true;
};

inline UPoly L_poly() { return UPoly(std::vector<Q>{Q(0), Q(1)}); }
inline UPoly L_pow(long k) { return UPoly::monomial(Q(1), k); }
inline UPoly Lm1_pow(long k) {
    UPoly r = UPoly::monomial(Q(1), 0);
    for (long i = 0; i < k; ++i) r = r * UPoly(std::vector<Q>{Q(-1), Q(1)});
    return r;
}

// L^{-n} sum_k [Y_k] S_{G_k}(N_k, nu_k) prod_i factor(N_ki, nu_ki); coordinates with (N, nu) = (0, 1) contribute 1.
inline MotZeta mot_zeta_from_qres(const std::vector<Stratum>& strata, bool local, int n) {
    MotZeta z;
    z.prefactor = Q(-n);
    for (auto& s : strata) {
        if (local && !s.local) continue;
        if (s.N.size() != s.nu.size() || (int)s.N.size() != s.group.dim())
            throw ContractError("stratum " + s.label + ": dimension mismatch");
        if (s.cls.zero()) continue;
        MotTerm t;
        t.cls = s.cls;
        t.sg = sg_sum(s.group, s.N, s.nu);
        t.label = s.label;
        for (size_t k = 0; k < s.N.size(); ++k)
            if (!(s.N[k] == 0 && s.nu[k] == 1)) t.factors.emplace_back(s.N[k], s.nu[k]);
        z.terms.push_back(t);
    }
    return z;
}

namespace detail {

inline std::string set_str(const std::vector<int>& I) {
    std::string s = "{";
    for (size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k] + 1);
    return s + "}";
}

// P restricted to C_I: coordinates outside I (and the slot i) set to 0, remaining variables renumbered.
inline MPoly restrict_to_stratum(const MPoly& P, const std::vector<int>& I) {
    MPoly out((int)I.size());
    for (auto& [e, c] : P.terms) {
        bool ok = true;
        for (int k = 0; k < P.n && ok; ++k)
            if (e[k] > 0 && std::find(I.begin(), I.end(), k) == I.end()) ok = false;
        if (!ok) continue;
        std::vector<int> e2;
        for (int k : I) e2.push_back(e[k]);
        out.add_term(e2, c);
    }
    return out;
}

inline bool nonzero_const(const MPoly& p) { return p.total_degree() == 0 && !p.terms.empty(); }

// G_{I,i} written in coordinates (lambda, H, u_k for k != i, j)
inline DiagGroup regroup_ehat(const DiagGroup& G, int i, int j, long d) {
    std::vector<Gen> gens;
    for (auto& g : G.generators()) {
        std::vector<long> a{g.a[i], mod_l(-d * g.a[i], g.r)};
        for (int k = 0; k < G.dim(); ++k)
            if (k != i && k != j) a.push_back(g.a[k]);
        gens.push_back(Gen{g.r, a});
    }
    return DiagGroup(G.dim(), gens).normalized();
}

}  // namespace detail

// Ê_{I,i} pieces, one per j: (j, class of (C_I cap E_{i,j})/G_i)
struct EhatPiece {
    int j;
    UPoly cls;
};

inline std::vector<EhatPiece> ehat_pieces(const SqhData& s, int i, const std::vector<int>& I, const CountConfig& cfg) {
    int n = s.n();
    Chart ch = chart_substitute(s.fd, s.w, i);
    const MPoly& F = ch.H;  // no lambda: f_d is w-homogeneous
    std::vector<EhatPiece> out;
    MPoly Fr = detail::restrict_to_stratum(F, I);
    if (detail::nonzero_const(Fr)) return out;
    std::vector<MPoly> prior;  // restricted partials that must vanish
    DiagGroup Gr = ch.group.restrict_to(I);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        MPoly Dj = detail::restrict_to_stratum(F.diff(j), I);
        bool empty = false;
        for (auto& p : prior)
            if (detail::nonzero_const(p)) empty = true;
        if (!empty && !Dj.terms.empty()) {
            StratumSpec sp;
            sp.n = (int)I.size();
            sp.torus.assign(I.size(), true);
            if (!Fr.terms.empty()) sp.eqs.push_back(Fr);
            for (auto& p : prior)
                if (!p.terms.empty()) sp.eqs.push_back(p);
            sp.neqs.push_back(Dj);
            sp.group = Gr;
            UPoly c = class_interpolate(sp, (int)I.size(), cfg);
            if (!c.zero()) out.push_back({j, c});
        }
        prior.push_back(Dj);
    }
    return out;
}

// E-strata of chart i (0-based): for I subset of {i+1..n}, the E° piece and the Ê_j pieces.
inline std::vector<Stratum> chart_data(const SqhData& s, int i, const CountConfig& cfg = {}) {
    int n = s.n();
    long d = s.w.d, W = s.w.total();
    Chart ch = chart_substitute(s.fd, s.w, i);
    std::vector<Stratum> out;
    std::vector<int> Z;
    for (int k = i + 1; k < n; ++k) Z.push_back(k);
    for (unsigned mask = 0; mask < (1u << Z.size()); ++mask) {
        std::vector<int> I;
        for (size_t b = 0; b < Z.size(); ++b)
            if (mask >> b & 1) I.push_back(Z[b]);
        DiagGroup GI = ch.group.fixing(I);
        auto pieces = ehat_pieces(s, i, I, cfg);
        UPoly ehat;
        for (auto& p : pieces) ehat = ehat + p.cls;
        std::string tag = "[i=" + std::to_string(i + 1) + ",I=" + detail::set_str(I) + "]";

        Stratum eo;
        eo.label = "E°" + tag;
        eo.cls = Lm1_pow((long)I.size()) - ehat;
        eo.group = GI;
        eo.N.assign(n, Q(0));
        eo.nu.assign(n, Q(1));
        eo.N[i] = d;
        eo.nu[i] = W;
        out.push_back(eo);

        for (auto& p : pieces) {
            Stratum e;
            e.label = "Ê" + tag + "[j=" + std::to_string(p.j + 1) + "]";
            e.cls = p.cls;
            e.group = detail::regroup_ehat(GI, i, p.j, d);
            e.N.assign(n, Q(0));
            e.nu.assign(n, Q(1));
            e.N[0] = d;
            e.nu[0] = W;
            e.N[1] = 1;
            out.push_back(e);
        }
    }
    return out;
}

// [Z(f)] for the affine hypersurface
inline UPoly hypersurface_class(const MPoly& f, const CountConfig& cfg = {}) {
    StratumSpec sp;
    sp.n = f.n;
    sp.eqs.push_back(f);
    return class_interpolate(sp, f.n - 1, cfg);
}

inline std::vector<Stratum> global_strata(const MPoly& f, const CountConfig& cfg = {}) {
    int n = f.n;
    UPoly Z = hypersurface_class(f, cfg);
    Stratum a;
    a.label = "C^n \\ Z(f)";
    a.cls = L_pow(n) - Z;
    a.group = DiagGroup::trivial(n);
    a.N.assign(n, Q(0));
    a.nu.assign(n, Q(1));
    a.local = false;
    Stratum b = a;
    b.label = "Z(f) \\ 0";
    b.cls = Z - UPoly::monomial(Q(1), 0);
    b.N[0] = 1;
    return {a, b};
}

// Weighted blow-up formula; the local version keeps only the exceptional strata.
inline MotZeta motivic_zeta(const SqhData& s, bool local, const CountConfig& cfg = {}) {
    std::vector<Stratum> strata;
    if (!local) strata = global_strata(s.f, cfg);
    for (int i = 0; i < s.n(); ++i) {
        auto c = chart_data(s, i, cfg);
        strata.insert(strata.end(), c.begin(), c.end());
    }
    return mot_zeta_from_qres(strata, local, s.n());
}

// Closed form in two variables, w = (p, q) coprime.
struct Dim2Case {
    int which = 1;  // 1: pq | d, 2: y | f_d, 3: x | f_d, 4: xy | f_d
    Q count;        // points of Ê over the torus of chart 1
};

inline Dim2Case dim2_case(const SqhData& s) {
    if (s.n() != 2) throw ContractError("dim-2 closed form needs two variables");
    long p = s.w.w[0], q = s.w.w[1], d = s.w.d;
    if (gcd_l(p, q) != 1) throw ContractError("weights must be coprime");
    auto coeff = [&](std::vector<int> e) {
        auto it = s.fd.terms.find(e);
        return it == s.fd.terms.end() ? Q(0) : it->second;
    };
    bool f1z = d % p != 0 || coeff({(int)(d / p), 0}) == 0;  // f_1(0) = 0
    bool f2z = d % q != 0 || coeff({0, (int)(d / q)}) == 0;  // f_2(0) = 0
    Dim2Case c;
    long rest = d;
    if (f1z) rest -= q;
    if (f2z) rest -= p;
    c.which = !f1z && !f2z ? 1 : (f1z && !f2z ? 2 : (!f1z ? 3 : 4));
    c.count = Q(rest) / Q(p * q);
    if (!is_int(c.count) || c.count < 0) throw std::logic_error("dim-2 closed form: non-integral point count");
    return c;
}

inline MotZeta motivic_zeta_dim2(const SqhData& s) {
    Dim2Case cs = dim2_case(s);
    long p = s.w.w[0], q = s.w.w[1], d = s.w.d, W = p + q;
    auto G = [](long r, long b) { return DiagGroup::cyclic(r, {-1, b}); };
    SgSum S1 = sg_sum(G(p, q), {Q(d), Q(0)}, {Q(W), Q(1)});
    SgSum S2 = sg_sum(G(q, p), {Q(d), Q(0)}, {Q(W), Q(1)});
    SgSum S1p = sg_sum(G(p, d), {Q(d), Q(1)}, {Q(W), Q(1)});
    SgSum S2p = sg_sum(G(q, d), {Q(d), Q(1)}, {Q(W), Q(1)});
    FactorNu Fd{Q(d), Q(W)}, F1{Q(1), Q(1)};
    UPoly one = UPoly::monomial(Q(1), 0);
    UPoly c = UPoly::monomial(cs.count, 0);
    MotZeta z;
    z.prefactor = -2;
    auto add = [&](UPoly cls, SgSum sg, std::vector<FactorNu> fs, std::string label) {
        if (cls.zero()) return;
        z.terms.push_back(MotTerm{cls, sg, fs, label});
    };
    SgSum triv{{Q(0), Q(0)}};
    add(L_poly() - one - c, triv, {Fd}, "L-1-c");
    add(c, triv, {F1, Fd}, "c");
    if (cs.which == 1 || cs.which == 3) add(one, S1, {Fd}, "S1");
    if (cs.which == 1 || cs.which == 2) add(one, S2, {Fd}, "S2");
    if (cs.which == 2 || cs.which == 4) add(one, S1p, {F1, Fd}, "S1'");
    if (cs.which == 3 || cs.which == 4) add(one, S2p, {F1, Fd}, "S2'");
    return z;
}

struct PoleReport {
    std::vector<Pole> poles;
    bool guarantee_applies = false;  // d > p + q
    bool guarantee_holds = true;
};

inline PoleReport poles_dim2(const SqhData& s, const CountConfig& cfg = {}) {
    if (s.n() != 2) throw ContractError("poles_dim2 needs two variables");
    PoleReport r;
    r.poles = poles(normalize(motivic_zeta(s, true, cfg)));
    long d = s.w.d, W = s.w.total();
    r.guarantee_applies = d > W;
    if (r.guarantee_applies) {
        for (Q s0 : {Q(-1), Q(-W) / Q(d)}) {
            bool found = std::any_of(r.poles.begin(), r.poles.end(), [&](const Pole& p) { return p.s0 == s0; });
            if (!found) r.guarantee_holds = false;
        }
        if (!r.guarantee_holds) throw std::logic_error("poles_dim2: guaranteed pole missing");
    }
    return r;
}

struct ProbeReport {
    std::vector<TopZeta> top;
    std::vector<std::vector<bool>> equal;
    bool all_equal = true;
};

inline ProbeReport conjecture_probe(const std::vector<MPoly>& fs, const Weight& w, const CountConfig& cfg = {}) {
    ProbeReport r;
    for (auto& f : fs) {
        Weight ww = w;
        SqhData s = make_sqh(f, ww);
        if (!(s.tail.terms.empty())) throw ContractError("probe: input is not quasihomogeneous for the weight");
        if (w.d != 0 && s.w.d != w.d) throw ContractError("probe: mixed (w, d)");
        r.top.push_back(specialize_topological(motivic_zeta(s, true, cfg)));
    }
    size_t k = r.top.size();
    r.equal.assign(k, std::vector<bool>(k, true));
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            r.equal[a][b] = to_string(r.top[a]) == to_string(r.top[b]);
            if (!r.equal[a][b]) r.all_equal = false;
        }
    return r;
}

// N_m against p^{nm} [T^m] (1 - T Z(T)) / (1 - T), Z the p-adic specialization of the global zeta.
inline IgusaReport igusa_check(const MotZeta& global, const MPoly& f, long p, int m_max, const CountConfig& cfg = {}) {
    IgusaReport r;
    r.p = p;
    r.m_max = m_max;
    r.counts = igusa_counts(f, p, m_max, cfg.max_enum);
    PadicZeta z = specialize_padic(global, p);
    auto zs = z.series(m_max);
    Q partial = 0;
    r.matched = true;
    for (int m = 1; m <= m_max; ++m) {
        partial += zs[m - 1];
        Q e = (Q(1) - partial) * q_pow(Q(p), (long)f.n * m);
        r.expected.push_back(e);
        r.residuals.push_back(Q(r.counts[m - 1]) - e);
        if (r.residuals.back() != 0) r.matched = false;
    }
    return r;
}

}  // namespace qzeta
