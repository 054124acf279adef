#pragma once

#include "groups.hpp"
#include "laurent.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace qzeta {

// (N, nu): the factor (L-1) T^N L^{-nu} / (1 - T^N L^{-nu}); as a denominator entry, 1 - T^N L^{-nu}.
struct FactorNu {
    Q N, nu;
    FactorNu() = default;
    FactorNu(Q n_, Q nu_) : N(std::move(n_)), nu(std::move(nu_)) {
        if (N < 0 || nu <= 0) throw ContractError("FactorNu needs N >= 0 and nu > 0");
    }
    LTExp binomial_exp() const { return {-nu, N}; }
    friend bool operator==(const FactorNu& a, const FactorNu& b) { return a.N == b.N && a.nu == b.nu; }
    friend bool operator!=(const FactorNu& a, const FactorNu& b) { return !(a == b); }
};

// canonical order: (nu/N, N, nu), N = 0 last
inline bool factor_less(const FactorNu& a, const FactorNu& b) {
    bool ia = a.N == 0, ib = b.N == 0;
    if (ia != ib) return ib;
    if (!ia) {
        Q ra = a.nu / a.N, rb = b.nu / b.N;
        if (ra != rb) return ra < rb;
    }
    if (a.N != b.N) return a.N < b.N;
    return a.nu < b.nu;
}

struct MotTerm {
    UPoly cls;                     // class, polynomial in L
    SgSum sg{{Q(0), Q(0)}};        // S_G, list of (a, b) meaning L^{a s + b}
    std::vector<FactorNu> factors;
    std::string label;
};

struct MotZeta {
    Q prefactor = 0;  // global L^{prefactor}
    std::vector<MotTerm> terms;
};

struct RationalZeta {
    LaurentLT num;
    std::vector<FactorNu> den;
    Q prefactor = 0;
    friend bool operator==(const RationalZeta& a, const RationalZeta& b) {
        return a.prefactor == b.prefactor && a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RationalZeta& a, const RationalZeta& b) { return !(a == b); }
};

inline LaurentLT sg_laurent(const SgSum& sg) {
    LaurentLT r;
    for (auto& [a, b] : sg) r += LaurentLT::Ls(a, b);
    return r;
}

inline LaurentLT factor_numerator(const FactorNu& f) {
    // (L - 1) T^N L^{-nu}
    return (LaurentLT::mono(1, 0) - LaurentLT(1)) * LaurentLT::mono(-f.nu, f.N);
}

inline LaurentLT term_numerator(const MotTerm& t) {
    LaurentLT r = LaurentLT::from_upoly_L(t.cls) * sg_laurent(t.sg);
    for (auto& f : t.factors) r *= factor_numerator(f);
    return r;
}

namespace detail {

// rational gcd: largest g > 0 with a/g, b/g coprime integers
inline Q q_gcd(const Q& a, const Q& b) {
    Int D = boost::multiprecision::lcm(den(a), den(b));
    Int x = abs(num(a * Q(D))), y = abs(num(b * Q(D)));
    Int g = boost::multiprecision::gcd(x, y);
    return Q(g) / Q(D);
}

struct Direction {
    Int N0, nu0;  // coprime, N0 >= 0
    friend bool operator<(const Direction& a, const Direction& b) { return std::tie(a.N0, a.nu0) < std::tie(b.N0, b.nu0); }
};

inline std::pair<Direction, Q> split_direction(const FactorNu& f) {
    Q g = q_gcd(f.N, f.nu);
    return {Direction{num(f.N / g), num(f.nu / g)}, g};
}

inline LTExp dir_exp(const Direction& d, const Q& scale) { return {-Q(d.nu0) * scale, Q(d.N0) * scale}; }

// 1 + Y^m + ... + Y^{(k-1) m} as coefficient vector in Y
inline std::vector<Q> geometric(long m, long k) {
    std::vector<Q> c((k - 1) * m + 1, Q(0));
    for (long j = 0; j < k; ++j) c[j * m] = 1;
    return c;
}

inline LaurentLT poly_in_monomial(const std::vector<Q>& c, const LTExp& v) {
    LaurentLT r;
    for (size_t j = 0; j < c.size(); ++j) r.add({v.first * Q((long)j), v.second * Q((long)j)}, c[j]);
    return r;
}

inline std::vector<long> divisors(long m) {
    std::vector<long> d;
    for (long i = 1; i <= m; ++i)
        if (m % i == 0) d.push_back(i);
    return d;
}

}  // namespace detail

// Put num / prod(den) over a canonical denominator and cancel binomial factors.
inline RationalZeta canonicalize(const std::vector<std::pair<LaurentLT, std::vector<FactorNu>>>& parts, const Q& prefactor,
                                 const Int& R_bound = Int(0)) {
    using namespace detail;
    // unit per direction
    std::map<Direction, Q> unit;
    for (auto& [n, fs] : parts)
        for (auto& f : fs) {
            auto [d, g] = split_direction(f);
            auto it = unit.find(d);
            unit[d] = it == unit.end() ? g : q_gcd(it->second, g);
        }
    std::map<Direction, long> Mdir, Kdir;
    for (auto& [n, fs] : parts) {
        std::map<Direction, long> cnt;
        for (auto& f : fs) {
            auto [d, g] = split_direction(f);
            long m = to_long(g / unit[d]);
            Mdir[d] = Mdir.count(d) ? lcm_l(Mdir[d], m) : m;
            cnt[d]++;
        }
        for (auto& [d, c] : cnt) Kdir[d] = std::max(Kdir[d], c);
    }
    LaurentLT total;
    for (auto& [n, fs] : parts) {
        if (n.zero()) continue;
        LaurentLT t = n;
        std::map<Direction, long> cnt;
        for (auto& f : fs) {
            auto [d, g] = split_direction(f);
            long m = to_long(g / unit[d]);
            LTExp v = dir_exp(d, unit[d] * Q(m));
            t *= poly_in_monomial(geometric(1, Mdir[d] / m), v);
            cnt[d]++;
        }
        for (auto& [d, K] : Kdir) {
            long missing = K - cnt[d];
            LTExp v = dir_exp(d, unit[d] * Q(Mdir[d]));
            for (long j = 0; j < missing; ++j) t *= poly_in_monomial({Q(1), Q(-1)}, v);
        }
        total += t;
    }
    RationalZeta out;
    out.prefactor = prefactor;
    if (total.zero()) {
        out.num = total;
        return out;
    }
    for (auto& [d, K] : Kdir) {
        std::vector<long> ms(K, Mdir[d]);
        const Q& u = unit[d];
        bool changed = true;
        while (changed) {
            changed = false;
            std::sort(ms.rbegin(), ms.rend());
            for (size_t i = 0; i < ms.size() && !changed; ++i) {
                long m = ms[i];
                LTExp vm = dir_exp(d, u * Q(m));
                if (auto q = divide_by_poly_in_monomial(total, vm, {Q(1), Q(-1)})) {
                    total = *q;
                    ms.erase(ms.begin() + i);
                    changed = true;
                    break;
                }
                for (long mp : divisors(m)) {
                    if (mp == m) break;
                    LTExp vp = dir_exp(d, u * Q(mp));
                    if (auto q = divide_by_poly_in_monomial(total, vp, geometric(1, m / mp))) {
                        total = *q;
                        ms[i] = mp;
                        changed = true;
                        break;
                    }
                }
            }
        }
        for (long m : ms) out.den.push_back(FactorNu(Q(d.N0) * u * Q(m), Q(d.nu0) * u * Q(m)));
    }
    std::sort(out.den.begin(), out.den.end(), factor_less);
    out.num = total;
    if (R_bound > 0) {
        Int R = out.num.denom_bound();
        for (auto& f : out.den) R = boost::multiprecision::lcm(R, boost::multiprecision::lcm(den(f.N), den(f.nu)));
        if (R > R_bound) throw ConfigError("exponent denominator " + R.str() + " exceeds the configured bound " + R_bound.str());
    }
    return out;
}

inline RationalZeta normalize(const MotZeta& z, const Int& R_bound = Int(0)) {
    std::vector<std::pair<LaurentLT, std::vector<FactorNu>>> parts;
    for (auto& t : z.terms) {
        if (t.sg.empty()) throw ContractError("normalize: term without S_G data");
        parts.push_back({term_numerator(t), t.factors});
    }
    return canonicalize(parts, z.prefactor, R_bound);
}

inline RationalZeta canonicalize(const RationalZeta& r) { return canonicalize({{r.num, r.den}}, r.prefactor); }

// value as a single fraction, for equality tests independent of canonical form
inline bool same_function(const RationalZeta& a, const RationalZeta& b) {
    LaurentLT lhs = a.num * LaurentLT::mono(a.prefactor, 0), rhs = b.num * LaurentLT::mono(b.prefactor, 0);
    for (auto& f : b.den) lhs *= LaurentLT(1) - LaurentLT::mono(-f.nu, f.N);
    for (auto& f : a.den) rhs *= LaurentLT(1) - LaurentLT::mono(-f.nu, f.N);
    return lhs == rhs;
}

struct Pole {
    Q s0;
    long mult;
    friend bool operator==(const Pole& a, const Pole& b) { return a.s0 == b.s0 && a.mult == b.mult; }
};

// Real candidate poles s0 = -nu/N with multiplicities after binomial cancellation.
inline std::vector<Pole> poles(const RationalZeta& z) {
    using namespace detail;
    std::vector<Pole> out;
    if (z.num.zero()) return out;
    Int R = z.num.denom_bound();
    for (auto& f : z.den) R = boost::multiprecision::lcm(R, boost::multiprecision::lcm(den(f.N), den(f.nu)));
    std::map<Direction, long> k;
    for (auto& f : z.den)
        if (f.N > 0) k[split_direction(f).first]++;
    for (auto& [d, K] : k) {
        LTExp fine = dir_exp(d, Q(1) / Q(R));
        long c = 0;
        LaurentLT cur = z.num;
        while (c < K) {
            auto q = divide_by_poly_in_monomial(cur, fine, {Q(1), Q(-1)});
            if (!q) break;
            cur = *q;
            ++c;
        }
        if (K - c > 0) out.push_back({-Q(d.nu0) / Q(d.N0), K - c});
    }
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) { return a.s0 < b.s0; });
    return out;
}

// Topological zeta function: num / prod (N s + nu) with (N, nu) coprime integers, N > 0.
struct TopZeta {
    UPoly num;
    std::vector<std::pair<long, long>> den;
    friend bool operator==(const TopZeta& a, const TopZeta& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const TopZeta& a, const TopZeta& b) { return !(a == b); }
};

inline UPoly linear(long N, long nu) { return UPoly(std::vector<Q>{Q(nu), Q(N)}); }

// Sum of num_i / prod(N s + nu) over parts, reduced.
inline TopZeta topzeta_sum(const std::vector<std::pair<UPoly, std::vector<std::pair<Q, Q>>>>& parts) {
    std::vector<std::pair<UPoly, std::map<std::pair<long, long>, long>>> norm;
    std::map<std::pair<long, long>, long> common;
    for (auto& [n, ys] : parts) {
        UPoly p = n;
        std::map<std::pair<long, long>, long> cnt;
        for (auto& [N, nu] : ys) {
            if (N == 0) {
                if (nu == 0) throw ArithmeticError("zero linear factor");
                p = p * UPoly(Q(1) / nu);
                continue;
            }
            Q g = detail::q_gcd(N, nu);
            Q sgn = N < 0 ? Q(-1) : Q(1);
            long a = to_long(N / g * sgn), b = to_long(nu / g * sgn);
            p = p * UPoly(Q(1) / (g * sgn));
            cnt[{a, b}]++;
        }
        for (auto& [k, c] : cnt) common[k] = std::max(common[k], c);
        norm.push_back({p, cnt});
    }
    UPoly total;
    for (auto& [p, cnt] : norm) {
        UPoly t = p;
        for (auto& [k, c] : common)
            for (long j = cnt.count(k) ? cnt.at(k) : 0; j < c; ++j) t *= linear(k.first, k.second);
        total += t;
    }
    TopZeta z;
    if (total.zero()) return z;
    for (auto& [k, c] : common) {
        long left = c;
        while (left > 0 && total(Q(-k.second) / Q(k.first)) == 0) {
            total = divmod(total, linear(k.first, k.second)).first;
            --left;
        }
        for (long j = 0; j < left; ++j) z.den.push_back(k);
    }
    // ascending in the root -nu/N
    std::sort(z.den.begin(), z.den.end(), [](auto& a, auto& b) {
        Q ra = Q(a.second) / Q(a.first), rb = Q(b.second) / Q(b.first);
        return ra != rb ? ra > rb : a < b;
    });
    z.num = total;
    return z;
}

inline std::string compact_poly(const UPoly& p, const std::string& var) {
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = p.deg(); k >= 0; --k) {
        Q a = p.c[k];
        if (a == 0) continue;
        bool neg = a < 0;
        Q m = neg ? Q(-a) : a;
        if (!first || neg) os << (neg ? "-" : "+");
        first = false;
        if (k == 0 || m != 1) os << (is_int(m) || k == 0 ? str(m) : "(" + str(m) + ")");
        if (k >= 1) os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

inline std::string to_string(const TopZeta& z) {
    if (z.num.zero()) return "0";
    std::string n = compact_poly(z.num, "s");
    long nterms = 0;
    for (auto& c : z.num.c)
        if (c != 0) ++nterms;
    if (z.den.empty()) return n;
    std::ostringstream ds;
    std::map<std::pair<long, long>, long> cnt;
    std::vector<std::pair<long, long>> order;
    for (auto& k : z.den)
        if (cnt[k]++ == 0) order.push_back(k);
    for (auto& k : order) {
        ds << "(" << compact_poly(linear(k.first, k.second), "s") << ")";
        if (cnt[k] > 1) ds << "^" << cnt[k];
    }
    std::string d = ds.str();
    if (order.size() > 1 || cnt[order[0]] > 1) d = "(" + d + ")";
    return (nterms > 1 ? "(" + n + ")" : n) + "/" + d;
}

struct SpecializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
// truncated power series in t with polynomial-in-s coefficients
using SSeries = std::vector<UPoly>;

inline SSeries s_mul(const SSeries& a, const SSeries& b, size_t depth) {
    SSeries r(depth + 1);
    for (size_t i = 0; i < a.size() && i <= depth; ++i)
        for (size_t j = 0; j < b.size() && i + j <= depth; ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Q factorial(long k) {
    Q f = 1;
    for (long i = 2; i <= k; ++i) f *= i;
    return f;
}

// exp(c t) for c a polynomial in s
inline SSeries s_exp(const UPoly& c, size_t depth) {
    SSeries r(depth + 1);
    UPoly pw(1);
    for (size_t k = 0; k <= depth; ++k) {
        r[k] = pw * UPoly(Q(1) / factorial((long)k));
        pw *= c;
    }
    return r;
}

// (e^t - 1) / (e^{y t} - 1) * y, y = N s + nu  (the 1/y is kept aside)
inline SSeries s_factor(const UPoly& y, size_t depth) {
    SSeries A(depth + 1), B(depth + 1);
    UPoly pw(1);
    for (size_t k = 0; k <= depth; ++k) {
        A[k] = UPoly(Q(1) / factorial((long)k + 1));
        B[k] = pw * UPoly(Q(1) / factorial((long)k + 1));
        pw *= y;
    }
    // invert B (B[0] = 1)
    SSeries inv(depth + 1);
    inv[0] = UPoly(1);
    for (size_t k = 1; k <= depth; ++k) {
        UPoly acc;
        for (size_t j = 1; j <= k; ++j) acc += B[j] * inv[k - j];
        inv[k] = -acc;
    }
    return s_mul(A, inv, depth);
}
}  // namespace detail

inline TopZeta specialize_topological(const MotZeta& z) {
    using namespace detail;
    std::vector<std::pair<UPoly, std::vector<std::pair<Q, Q>>>> parts;
    std::vector<SSeries> below;  // negative orders would show up here (kept for the check)
    for (auto& t : z.terms) {
        size_t depth = t.factors.size() + 2;
        // class * S_G * L^{prefactor}: sum of monomials exp((e_L - s e_T) t)
        LaurentLT mon = LaurentLT::from_upoly_L(t.cls) * sg_laurent(t.sg) * LaurentLT::mono(z.prefactor, 0);
        SSeries ser(depth + 1);
        for (auto& [e, c] : mon.terms) {
            UPoly rate(std::vector<Q>{e.first, -e.second});
            SSeries ex = s_exp(rate, depth);
            for (size_t k = 0; k <= depth; ++k) ser[k] += ex[k] * UPoly(c);
        }
        std::vector<std::pair<Q, Q>> ys;
        for (auto& f : t.factors) {
            UPoly y(std::vector<Q>{f.nu, f.N});
            ser = s_mul(ser, s_factor(y, depth), depth);
            ys.push_back({f.N, f.nu});
        }
        parts.push_back({ser[0], ys});
    }
    // every factor carries (e^t - 1), so the t-valuation of each term is >= 0 and the t^0
    // coefficient is the sum above; a malformed term list cannot produce negative orders here.
    return topzeta_sum(parts);
}

// L -> p specialization: (sum c T^b) * p^{pre} / prod (1 - p^{-nu} T^N)
struct PadicZeta {
    long p = 0;
    std::map<Q, Q> num;  // T exponent -> coefficient
    std::vector<std::pair<Q, Q>> den;  // (N, p^{-nu})

    // power series coefficients of T^0..T^m (integer exponents)
    std::vector<Q> series(long m) const {
        Q lo = 0;
        for (auto& kv : num) lo = std::min(lo, kv.first);
        Q top = Q(m) - lo;
        std::map<Q, Q> cur = num;
        for (auto& [N, a] : den) {
            if (N == 0) {
                if (a == 1) throw SpecializationError("pole at T-independent factor");
                Q inv = 1 / (1 - a);
                for (auto& kv : cur) kv.second *= inv;
                continue;
            }
            std::map<Q, Q> nxt;
            for (auto& [e, c] : cur) {
                Q ak = 1;
                for (Q k = 0; e + k * N <= Q(m); k += 1) {
                    nxt[e + k * N] += c * ak;
                    ak *= a;
                }
            }
            cur = std::move(nxt);
            (void)top;
        }
        std::vector<Q> out(m + 1, Q(0));
        for (auto& [e, c] : cur) {
            if (c == 0 || e > Q(m)) continue;
            if (!is_int(e)) throw SpecializationError("fractional T exponent " + str(e) + " in p-adic series");
            if (e < 0) throw SpecializationError("negative T exponent in p-adic series");
            out[to_long(e)] += c;
        }
        return out;
    }
};

inline PadicZeta specialize_padic(const MotZeta& z, long p) {
    RationalZeta r = normalize(z);
    PadicZeta out;
    out.p = p;
    auto ppow = [&](const Q& e) -> Q {
        if (!is_int(e)) throw SpecializationError("fractional L exponent " + str(e) + " survives L -> p");
        return q_pow(Q(p), to_long(e));
    };
    Q pre = ppow(r.prefactor);
    for (auto& [e, c] : r.num.terms) out.num[e.second] += c * ppow(e.first) * pre;
    for (auto it = out.num.begin(); it != out.num.end();)
        it = it->second == 0 ? out.num.erase(it) : std::next(it);
    for (auto& f : r.den) out.den.push_back({f.N, ppow(-f.nu)});
    return out;
}

inline std::string factor_str(const FactorNu& f) {
    std::string e = ls_exponent(f.N, f.nu);
    return "(L-1)L^{-(" + e + ")}/(1-L^{-(" + e + ")})";
}

inline std::string sg_str(const SgSum& sg) {
    LaurentLT l = sg_laurent(sg);
    return to_string(l);
}

inline std::string to_string(const MotZeta& z) {
    std::ostringstream os;
    if (z.prefactor != 0) os << "L^{" << str(z.prefactor) << "} * [\n";
    if (z.terms.empty()) os << "  0\n";
    for (size_t i = 0; i < z.terms.size(); ++i) {
        auto& t = z.terms[i];
        os << "  " << (i ? "+ " : "  ") << "(" << t.cls.str("L") << ")";
        if (!(t.sg.size() == 1 && t.sg[0].first == 0 && t.sg[0].second == 0)) os << " * (" << sg_str(t.sg) << ")";
        for (auto& f : t.factors) os << " * " << factor_str(f);
        if (!t.label.empty()) os << "    [" << t.label << "]";
        os << "\n";
    }
    if (z.prefactor != 0) os << "]";
    return os.str();
}

inline std::string to_string(const RationalZeta& r) {
    std::ostringstream os;
    if (r.prefactor != 0) os << "L^{" << str(r.prefactor) << "} * ";
    os << "(" << to_string(r.num) << ")";
    if (!r.den.empty()) {
        os << " / (";
        for (auto& f : r.den) os << "(1-L^{-(" << ls_exponent(f.N, f.nu) << ")})";
        os << ")";
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RationalZeta& r) { return os << to_string(r); }
inline std::ostream& operator<<(std::ostream& os, const TopZeta& z) { return os << to_string(z); }

inline std::string to_string(const std::vector<Pole>& ps) {
    std::ostringstream os;
    for (size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << str(ps[i].s0) << " (mult " << ps[i].mult << ")";
    return os.str();
}

}  // namespace qzeta
