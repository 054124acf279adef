#pragma once

#include "count.hpp"
#include "groups.hpp"
#include "laurent.hpp"
#include "sqh.hpp"
#include "toric.hpp"
#include "zeta.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeta {

struct NotLogTerminal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// num(q) / prod_k (q^{den_k} - 1); num is a LaurentLT with only L-exponents, read as q.
struct EFun {
    LaurentLT num;
    std::vector<Q> den;  // sorted

    EFun() = default;
    EFun(const LaurentLT& p) : num(p) {}
    static EFun from_upoly(const UPoly& p) { return EFun(LaurentLT::from_upoly_L(p)); }

    bool is_polynomial() const { return den.empty(); }
};

namespace detail {

inline LaurentLT q_monomial(const Q& e) { return LaurentLT::mono(e, Q(0)); }
inline LaurentLT q_binom(const Q& e) { return q_monomial(e) - LaurentLT(1); }

// multiply num by the factors of `want` missing from `have` (multiset difference)
inline std::vector<Q> missing(const std::vector<Q>& have, const std::vector<Q>& want) {
    std::vector<Q> out;
    std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

// cancel denominator binomials that divide the numerator
inline EFun reduce(EFun f) {
    std::vector<Q> keep;
    for (auto& e : f.den) {
        auto qt = divide_by_poly_in_monomial(f.num, {e, Q(0)}, {Q(-1), Q(1)});
        if (qt) {
            f.num = *qt;
        } else {
            keep.push_back(e);
        }
    }
    f.den = keep;
    return f;
}

inline EFun operator+(const EFun& a, const EFun& b) {
    EFun r;
    auto ma = detail::missing(a.den, b.den), mb = detail::missing(b.den, a.den);
    LaurentLT na = a.num, nb = b.num;
    for (auto& e : ma) na *= detail::q_binom(e);
    for (auto& e : mb) nb *= detail::q_binom(e);
    r.num = na + nb;
    r.den = a.den;
    r.den.insert(r.den.end(), ma.begin(), ma.end());
    std::sort(r.den.begin(), r.den.end());
    return reduce(r);
}

inline EFun& operator+=(EFun& a, const EFun& b) { return a = a + b; }

inline bool operator==(const EFun& a, const EFun& b) {
    LaurentLT l = a.num, r = b.num;
    for (auto& e : b.den) l *= detail::q_binom(e);
    for (auto& e : a.den) r *= detail::q_binom(e);
    return l == r;
}
inline bool operator!=(const EFun& a, const EFun& b) { return !(a == b); }

// E(S_G(nu)) * prod_i (q-1)/(q^{nu_i}-1), trivial factors dropped
inline EFun stringy_term(const UPoly& e_class, const DiagGroup& G, const std::vector<Q>& nu) {
    if ((int)nu.size() != G.dim()) throw ContractError("stringy term: nu length mismatch");
    for (auto& v : nu)
        if (v <= 0) throw NotLogTerminal("not log terminal: nu = " + str(v) + " <= 0");
    LaurentLT s;
    for (auto& [a, b] : sg_sum(G, std::vector<Q>(nu.size(), Q(0)), nu)) s.add({b, Q(0)}, Q(1));
    EFun t(LaurentLT::from_upoly_L(e_class) * s);
    for (auto& v : nu)
        if (v != 1) {
            t.num *= detail::q_binom(Q(1));
            t.den.push_back(v);
        }
    std::sort(t.den.begin(), t.den.end());
    return reduce(t);
}

inline std::string q_mono(const Q& e) {
    if (e == 0) return "1";
    if (e == 1) return "q";
    if (den(e) == 1) return "q^" + str(e);
    return "q^(" + str(e) + ")";
}

inline std::string q_poly_str(const LaurentLT& p) {
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        Q c = it->second;
        const Q& e = it->first.first;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << str(c);
        } else {
            if (c != 1) os << str(c) << "*";
            os << q_mono(e);
        }
    }
    return os.str();
}

inline std::string to_string(const EFun& f) {
    if (f.den.empty()) return q_poly_str(f.num);
    std::string s = "(" + q_poly_str(f.num) + ")/(";
    for (auto& e : f.den) s += "(" + q_mono(e) + " - 1)";
    return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const EFun& f) { return os << to_string(f); }

// Limit at q = 1. With q = e^x each binomial is nu x (1 + O(x)), so the value is
// [x^D] num(e^x) / prod nu, where D = #den, provided lower orders vanish.
inline Q stringy_euler(const EFun& f) {
    size_t D = f.den.size();
    auto moment = [&](size_t k) {
        Q s = 0;
        for (auto& [e, c] : f.num.terms) s += c * q_pow(e.first, (long)k);
        return s;
    };
    for (size_t k = 0; k < D; ++k)
        if (moment(k) != 0) throw std::domain_error("stringy Euler number is infinite");
    Q v = moment(D) / detail::factorial((long)D);
    for (auto& e : f.den) v /= e;
    return v;
}

struct StringyStratum {
    std::string label;
    UPoly e_class;
    DiagGroup group;
    std::vector<Q> nu;
};

inline EFun stringy_from_qres(const std::vector<StringyStratum>& strata) {
    EFun total;
    for (auto& s : strata) total += stringy_term(s.e_class, s.group, s.nu);
    return total;
}

// Weighted blow-up path: E(H) - 1 plus the exceptional pieces of every chart.
inline EFun stringy_sqh(const SqhData& s, const CountConfig& cfg = {}) {
    int n = s.n();
    long d = s.w.d, W = s.w.total();
    if (W - d <= 0) throw NotLogTerminal("not log terminal: |w| - d = " + std::to_string(W - d));
    EFun total = EFun::from_upoly(hypersurface_class(s.f, cfg) - UPoly::monomial(Q(1), 0));
    for (int i = 0; i < n; ++i) {
        Chart ch = chart_substitute(s.fd, s.w, i);
        std::vector<int> Z;
        for (int k = i + 1; k < n; ++k) Z.push_back(k);
        for (unsigned mask = 0; mask < (1u << Z.size()); ++mask) {
            std::vector<int> I;
            for (size_t b = 0; b < Z.size(); ++b)
                if (mask >> b & 1) I.push_back(Z[b]);
            DiagGroup GI = ch.group.fixing(I);
            for (auto& p : ehat_pieces(s, i, I, cfg)) {
                // coordinates (lambda, H, rest); H is not a coordinate of the strict transform
                DiagGroup G = detail::regroup_ehat(GI, i, p.j, d);
                std::vector<Q> nu(n, Q(1));
                nu[0] = W - d;
                std::vector<Gen> gens;
                for (auto& g : G.generators()) {
                    std::vector<long> a{g.a[0]};
                    a.insert(a.end(), g.a.begin() + 2, g.a.end());
                    gens.push_back(Gen{g.r, a});
                }
                DiagGroup Gh(n - 1, gens);
                nu.erase(nu.begin() + 1);
                total += stringy_term(p.cls, Gh.normalized(), nu);
            }
        }
    }
    return total;
}

namespace detail {

// strict transform g_sigma on U_sigma, x_k = prod_l u_l^{rho_l[k]}, divided by prod u_l^{m_l}
inline MPoly strict_transform(const MPoly& f, const std::vector<IVec>& rays, const std::vector<long>& m) {
    int n = (int)rays.size();
    MPoly g(n);
    for (auto& [a, c] : f.terms) {
        Exp e(n);
        for (int l = 0; l < n; ++l) {
            long s = 0;
            for (int k = 0; k < f.n; ++k) s += (long)a[k] * rays[l][k];
            e[l] = (int)(s - m[l]);
        }
        g.add_term(e, c);
    }
    return g;
}

inline bool rays_subset(const std::vector<IVec>& a, const std::vector<IVec>& b) {
    for (auto& r : a)
        if (std::find(b.begin(), b.end(), r) == b.end()) return false;
    return true;
}

}  // namespace detail

struct NondegStratum {
    std::string label;
    int cone = 0;
    std::vector<int> I;  // nonzero coordinates
    int j = 0;
    UPoly cls;
    EFun value;
};

struct NondegReport {
    Fan fan;
    Certificate cert;
    std::vector<NondegStratum> strata;
    EFun total;
};

// Toric path over a simplicial refinement of the Newton fan. Strata are the torus orbits
// of each chart not already in an earlier chart, split by the first nonvanishing partial.
inline NondegReport stringy_nondeg_report(const MPoly& f, const CountConfig& cfg = {}) {
    NondegReport rep;
    int n = f.n;
    rep.cert = is_nondegenerate(f);
    if (!rep.cert.holds) throw std::invalid_argument("degenerate polynomial: " + rep.cert.witness);
    NewtonData nd = newton_polyhedron(f);
    rep.fan = simplicial_subdivide(normal_fan(nd));
    const auto& cones = rep.fan.cones;
    for (size_t ci = 0; ci < cones.size(); ++ci) {
        const auto& rays = cones[ci].rays;
        DiagGroup G = group_from_cone(rays);
        std::vector<long> m(n);
        std::vector<Q> a(n);
        for (int l = 0; l < n; ++l) {
            m[l] = phi_f(nd, rays[l]);
            long s = 0;
            for (long x : rays[l]) s += x;
            a[l] = s - m[l];
        }
        MPoly g = detail::strict_transform(f, rays, m);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> I, Zs;
            std::vector<IVec> tau;
            for (int l = 0; l < n; ++l) {
                if (mask >> l & 1) {
                    I.push_back(l);
                } else {
                    Zs.push_back(l);
                    tau.push_back(rays[l]);
                }
            }
            bool seen = false;
            for (size_t k = 0; k < ci && !seen; ++k) seen = detail::rays_subset(tau, cones[k].rays);
            if (seen) continue;
            MPoly gr = detail::restrict_to_stratum(g, I);
            if (gr.zero()) throw std::logic_error("strict transform contains a torus orbit");
            if (detail::nonzero_const(gr)) continue;
            for (int l : Zs)
                if (a[l] <= 0) throw NotLogTerminal("not log terminal: discrepancy exponent " + str(a[l]));
            DiagGroup Gq = G.restrict_to(I);
            DiagGroup Gs = G.fixing(I);
            std::vector<Q> nu(n, Q(1));
            for (int l : Zs) nu[l] = a[l];
            std::vector<MPoly> prior;
            for (int j : I) {
                int jr = (int)(std::find(I.begin(), I.end(), j) - I.begin());
                MPoly Dj = gr.diff(jr);
                bool empty = std::any_of(prior.begin(), prior.end(), detail::nonzero_const);
                if (!empty && !Dj.zero()) {
                    StratumSpec sp;
                    sp.n = (int)I.size();
                    sp.torus.assign(I.size(), true);
                    sp.eqs.push_back(gr);
                    for (auto& p : prior)
                        if (!p.zero()) sp.eqs.push_back(p);
                    sp.neqs.push_back(Dj);
                    sp.group = Gq;
                    UPoly c = class_interpolate(sp, (int)I.size(), cfg);
                    if (!c.zero()) {
                        NondegStratum st;
                        st.cone = (int)ci;
                        st.I = I;
                        st.j = j;
                        st.cls = c;
                        st.value = stringy_term(c, Gs, nu);
                        st.label = "cone " + std::to_string(ci) + " I=" + detail::set_str(I) + " j=" + std::to_string(j + 1);
                        rep.total += st.value;
                        rep.strata.push_back(st);
                    }
                }
                prior.push_back(Dj);
            }
        }
    }
    return rep;
}

inline EFun stringy_nondeg(const MPoly& f, const CountConfig& cfg = {}) { return stringy_nondeg_report(f, cfg).total; }

}  // namespace qzeta
