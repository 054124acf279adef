#pragma once

#include "groups.hpp"
#include "mpoly.hpp"
#include "upoly.hpp"

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qzeta {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPolynomialClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CountConfig {
    unsigned long long max_enum = 100000000ULL;  // points x group elements per count
    std::vector<long> primes;                    // explicit prime list; empty = automatic
    long min_prime = 11;
    std::vector<long> ladder{1, 2, 3, 4, 6, 8, 12, 24};

    static CountConfig from_env() {
        CountConfig c;
        if (const char* s = std::getenv("QZETA_MAX_ENUM")) c.max_enum = std::stoull(s);
        if (const char* s = std::getenv("QZETA_PRIMES")) c.primes = parse_prime_list(s);
        return c;
    }
    static std::vector<long> parse_prime_list(const std::string& s) {
        std::vector<long> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(std::stol(tok));
        return out;
    }
};

namespace ff {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long mulmod(long a, long b, long m) { return (long)((__int128)a * b % m); }

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline long primitive_root(long q) {
    long phi = q - 1, t = phi;
    std::vector<long> fac;
    for (long d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            fac.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) fac.push_back(t);
    for (long g = 2; g < q; ++g) {
        bool ok = true;
        for (long f : fac)
            if (powmod(g, phi / f, q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;  // q = 2
}

// rational -> F_q; throws if the denominator vanishes mod q
inline long reduce(const Q& c, long q) {
    Int n = num(c) % q, d = den(c) % q;
    long nn = n.convert_to<long>(), dd = d.convert_to<long>();
    if (nn < 0) nn += q;
    if (dd < 0) dd += q;
    if (dd == 0) throw ArithmeticError("denominator vanishes mod q");
    return mulmod(nn, powmod(dd, q - 2, q), q);
}

// primes dividing some coefficient numerator or denominator
inline bool bad_prime(const MPoly& f, long q) {
    for (auto& [e, c] : f.terms) {
        if (num(c) % q == 0 || den(c) % q == 0) return true;
    }
    return false;
}

// polynomial reduced mod q for fast evaluation
struct ModPoly {
    long q = 0;
    int n = 0;
    std::vector<std::pair<std::vector<int>, long>> terms;
    int maxdeg = 0;
};

inline ModPoly to_mod(const MPoly& f, long q) {
    ModPoly m;
    m.q = q;
    m.n = f.n;
    for (auto& [e, c] : f.terms) {
        long r = reduce(c, q);
        if (r == 0) continue;
        m.terms.push_back({e, r});
        for (int a : e) m.maxdeg = std::max(m.maxdeg, a);
    }
    return m;
}

}  // namespace ff

// A locally closed stratum: equations = 0, inequations != 0, torus coordinates != 0,
// optionally divided by a diagonal group acting on the coordinates.
struct StratumSpec {
    int n = 0;
    std::vector<MPoly> eqs, neqs;
    std::vector<bool> torus;
    std::optional<DiagGroup> group;

    void check() const {
        for (auto& f : eqs)
            if (f.n != n) throw ContractError("stratum: equation arity mismatch");
        for (auto& f : neqs)
            if (f.n != n) throw ContractError("stratum: inequation arity mismatch");
        if (!torus.empty() && (int)torus.size() != n) throw ContractError("stratum: torus mask arity");
        if (group && group->dim() != n) throw ContractError("stratum: group dimension mismatch");
    }
    bool is_torus(int i) const { return !torus.empty() && torus[i]; }
};

namespace detail {

struct Evaluator {
    long q;
    int n;
    std::vector<ff::ModPoly> eqs, neqs;
    std::vector<bool> torus;
    int maxdeg = 1;

    long eval(const ff::ModPoly& p, const std::vector<std::vector<long>>& pw) const {
        long s = 0;
        for (auto& [e, c] : p.terms) {
            long t = c;
            for (int i = 0; i < n && t; ++i)
                if (e[i]) t = ff::mulmod(t, pw[i][e[i]], q);
            s += t;
            if (s >= q) s -= q;
        }
        return s;
    }

    unsigned long long run() const {
        std::vector<long> y(n, 0);
        std::vector<std::vector<long>> pw(n, std::vector<long>(maxdeg + 1, 0));
        auto set_pw = [&](int i) {
            pw[i][0] = 1;
            for (int k = 1; k <= maxdeg; ++k) pw[i][k] = ff::mulmod(pw[i][k - 1], y[i], q);
        };
        for (int i = 0; i < n; ++i) {
            y[i] = torus[i] ? 1 : 0;
            set_pw(i);
        }
        unsigned long long count = 0;
        if (n == 0) {
            bool ok = true;
            for (auto& p : eqs)
                if (eval(p, pw) != 0) ok = false;
            for (auto& p : neqs)
                if (eval(p, pw) == 0) ok = false;
            return ok ? 1 : 0;
        }
        for (;;) {
            bool ok = true;
            for (auto& p : eqs)
                if (eval(p, pw) != 0) {
                    ok = false;
                    break;
                }
            if (ok)
                for (auto& p : neqs)
                    if (eval(p, pw) == 0) {
                        ok = false;
                        break;
                    }
            if (ok) ++count;
            int i = n - 1;
            while (i >= 0) {
                if (++y[i] < q) {
                    set_pw(i);
                    break;
                }
                y[i] = torus[i] ? 1 : 0;
                set_pw(i);
                --i;
            }
            if (i < 0) break;
        }
        return count;
    }
};

inline unsigned long long pow_ull(unsigned long long b, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (b && r > ~0ULL / b) return ~0ULL;
        r *= b;
    }
    return r;
}

// h(t o y) up to the nonzero factor t^{a0}: coefficients twisted by g^{((a - a0).e)/M}
inline ff::ModPoly twist(const MPoly& h, const std::vector<long>& e, long M, long q, long g) {
    ff::ModPoly base = ff::to_mod(h, q);
    if (base.terms.empty()) return base;
    const auto& a0 = base.terms[0].first;
    for (auto& [a, c] : base.terms) {
        long dot = 0;
        for (size_t i = 0; i < a.size(); ++i) dot += (long)(a[i] - a0[i]) * e[i];
        if (mod_l(dot, M) != 0) throw ContractError("equation is not semi-invariant under the group");
        long k = mod_l(dot / M, q - 1);
        c = ff::mulmod(c, ff::powmod(g, k, q), q);
    }
    return base;
}

}  // namespace detail

// Number of F_q points (q prime) of a stratum without group.
inline unsigned long long count_points(const StratumSpec& s, long q, unsigned long long budget = 100000000ULL) {
    s.check();
    if (!ff::is_prime(q)) throw std::invalid_argument("count_points: q must be prime");
    if (detail::pow_ull(q, s.n) > budget) throw BudgetExceeded("enumeration budget exceeded: " + std::to_string(q) + "^" + std::to_string(s.n));
    detail::Evaluator ev{q, s.n, {}, {}, {}, 1};
    for (auto& f : s.eqs) ev.eqs.push_back(ff::to_mod(f, q));
    for (auto& f : s.neqs) ev.neqs.push_back(ff::to_mod(f, q));
    for (auto& p : ev.eqs) ev.maxdeg = std::max(ev.maxdeg, p.maxdeg);
    for (auto& p : ev.neqs) ev.maxdeg = std::max(ev.maxdeg, p.maxdeg);
    ev.torus.assign(s.n, false);
    for (int i = 0; i < s.n; ++i) ev.torus[i] = s.is_torus(i);
    return ev.run();
}

// Frobenius-twisted orbit count (1/|G|) sum_gamma #{x : Frob(x) = gamma x}; needs q = 1 mod exponent(G).
inline Q count_quotient(const StratumSpec& s, long q, unsigned long long budget = 100000000ULL) {
    s.check();
    if (!s.group || s.group->is_trivial()) return Q((long long)count_points(s, q, budget));
    const DiagGroup& G = *s.group;
    long M = G.exponent();
    if ((q - 1) % M != 0) throw ContractError("count_quotient: q must be 1 mod the group exponent");
    unsigned long long pts = detail::pow_ull(q, s.n);
    if (pts == ~0ULL || pts * G.order() > budget) throw BudgetExceeded("enumeration budget exceeded");
    long g = ff::primitive_root(q);
    unsigned long long total = 0;
    for (auto& e : G.elements()) {
        detail::Evaluator ev{q, s.n, {}, {}, {}, 1};
        for (auto& f : s.eqs) ev.eqs.push_back(detail::twist(f, e, M, q, g));
        for (auto& f : s.neqs) ev.neqs.push_back(detail::twist(f, e, M, q, g));
        for (auto& p : ev.eqs) ev.maxdeg = std::max(ev.maxdeg, p.maxdeg);
        for (auto& p : ev.neqs) ev.maxdeg = std::max(ev.maxdeg, p.maxdeg);
        ev.torus.assign(s.n, false);
        for (int i = 0; i < s.n; ++i) ev.torus[i] = s.is_torus(i);
        total += ev.run();
    }
    return Q((long long)total) / Q((long long)G.order());
}

using GrVal = UPoly;

struct ClassResult {
    GrVal cls;
    std::vector<long> primes;  // interpolation primes followed by the holdout
};


inline bool spec_bad_prime(const StratumSpec& s, long q) {
    for (auto& f : s.eqs)
        if (ff::bad_prime(f, q)) return true;
    for (auto& f : s.neqs)
        if (ff::bad_prime(f, q)) return true;
    if (s.group && s.group->order() % q == 0) return true;
    return false;
}

namespace detail {

inline UPoly to_upoly(const MPoly& f) {
    UPoly u;
    for (auto& [e, c] : f.terms) u = u + UPoly::monomial(c, e.empty() ? 0 : e[0]);
    return u;
}

inline UPoly squarefree(const UPoly& g) {
    if (g.deg() <= 0) return g;
    return divmod(g, gcd(g, g.derivative())).first;
}

// Strata on a line (or a point) have an exact class: count distinct roots and divide out free orbits.
inline UPoly exact_line_class(const StratumSpec& s) {
    if (s.n == 0) {
        for (auto& f : s.eqs)
            if (f.constant_term() != 0) return UPoly();
        for (auto& f : s.neqs)
            if (f.constant_term() == 0) return UPoly();
        return UPoly(Q(1));
    }
    long r = s.group ? (long)s.group->order() : 1;
    bool torus = s.is_torus(0);
    UPoly bad(Q(1));  // points removed by inequations
    for (auto& h : s.neqs) {
        UPoly u = to_upoly(h);
        if (u.zero()) return UPoly();
        bad = bad * u;
    }
    bad = squarefree(bad);
    bool have_eq = false;
    UPoly g;
    for (auto& f : s.eqs) {
        UPoly u = to_upoly(f);
        if (u.zero()) continue;
        g = have_eq ? gcd(g, u) : u;
        have_eq = true;
    }
    auto orbit_count = [&](UPoly pts) {
        bool zero_in = pts.deg() > 0 && pts.coef(0) == 0;
        if (zero_in) pts = divmod(pts, UPoly::x()).first;
        long nonzero = std::max(0L, pts.deg());
        if (nonzero % r != 0) throw ContractError("finite stratum is not a union of free orbits");
        return Q(nonzero / r) + Q((zero_in && !torus) ? 1 : 0);
    };
    if (!have_eq) {
        UPoly base = torus ? UPoly(std::vector<Q>{Q(-1), Q(1)}) : UPoly::x();
        return base - UPoly(orbit_count(bad));
    }
    UPoly pts = squarefree(g);
    if (pts.deg() <= 0) return UPoly();
    UPoly common = gcd(pts, bad);
    if (common.deg() > 0) pts = divmod(pts, common).first;
    return UPoly(orbit_count(pts));
}

inline long prime_1_mod(long mod, long from, const StratumSpec& s) {
    for (long p = from;; ++p)
        if ((p - 1) % mod == 0 && ff::is_prime(p) && !spec_bad_prime(s, p)) return p;
}

}  // namespace detail

// Counting polynomial of the stratum, validated on holdout primes. Strata of dimension <= 1 are exact.
inline ClassResult class_interpolate_ex(const StratumSpec& s, int dim_bound, const CountConfig& cfg = {}) {
    s.check();
    if (s.n <= 1) return {detail::exact_line_class(s), {}};
    long M = s.group ? s.group->exponent() : 1;
    size_t G = s.group ? s.group->order() : 1;
    size_t need = (size_t)dim_bound + 2;
    std::string last_err = "no admissible primes";
    for (long k : cfg.ladder) {
        long mod = lcm_l(M, k);
        std::vector<long> ps;
        if (!cfg.primes.empty()) {
            for (long p : cfg.primes)
                if (ff::is_prime(p) && (p - 1) % mod == 0 && !spec_bad_prime(s, p)) ps.push_back(p);
        } else {
            for (long p = cfg.min_prime; ps.size() < need; ++p) {
                if ((p - 1) % mod != 0 || !ff::is_prime(p) || spec_bad_prime(s, p)) continue;
                unsigned long long pts = detail::pow_ull(p, s.n);
                if (pts == ~0ULL || pts * G > cfg.max_enum) break;
                ps.push_back(p);
            }
        }
        if (ps.size() < need) {
            last_err = "enumeration budget exceeded before finding " + std::to_string(need) + " primes = 1 mod " + std::to_string(mod);
            continue;
        }
        ps.resize(need);
        std::vector<Q> xs, ys;
        for (size_t i = 0; i + 1 < need; ++i) {
            xs.push_back(Q(ps[i]));
            ys.push_back(count_quotient(s, ps[i], cfg.max_enum));
        }
        UPoly P = lagrange(xs, ys);
        bool integral = P.deg() <= dim_bound;
        for (auto& c : P.c)
            if (!is_int(c)) integral = false;
        if (!integral) {
            last_err = "interpolated counts are not an integral polynomial";
            continue;
        }
        Q hold = count_quotient(s, ps.back(), cfg.max_enum);
        if (P(Q(ps.back())) != hold) {
            last_err = "holdout prime " + std::to_string(ps.back()) + " disagrees";
            continue;
        }
        // a second holdout where small cyclotomic fields split
        long split = detail::prime_1_mod(lcm_l(mod, 120), cfg.min_prime, s);
        unsigned long long pts = detail::pow_ull(split, s.n);
        if (cfg.primes.empty() && pts != ~0ULL && pts * G <= cfg.max_enum) {
            if (P(Q(split)) != count_quotient(s, split, cfg.max_enum)) {
                last_err = "splitting holdout prime " + std::to_string(split) + " disagrees";
                continue;
            }
            ps.push_back(split);
        }
        return {P, ps};
    }
    if (last_err.rfind("enumeration budget", 0) == 0) throw BudgetExceeded(last_err);
    throw NonPolynomialClass("non-polynomial class (heuristic limits): " + last_err);
}

inline GrVal class_interpolate(const StratumSpec& s, int dim_bound, const CountConfig& cfg = {}) {
    return class_interpolate_ex(s, dim_bound, cfg).cls;
}

inline Q euler_char(const GrVal& c) { return c(Q(1)); }

// E-polynomial in q = uv (Hodge-Tate): the counting polynomial.
using EPoly = UPoly;
inline EPoly epoly_oracle(const StratumSpec& s, int dim_bound, const CountConfig& cfg = {}) {
    return class_interpolate(s, dim_bound, cfg);
}

// N_m = #{x in (Z/p^m)^n : f(x) = 0 mod p^m}, m = 1..m_max, by lifting.
inline std::vector<Int> igusa_counts(const MPoly& f, long p, int m_max, unsigned long long budget = 100000000ULL) {
    Int D = f.denominator_lcm();
    if (D % p == 0) throw std::invalid_argument("igusa: p divides a coefficient denominator");
    int n = f.n;
    std::vector<std::pair<std::vector<int>, Int>> terms;
    for (auto& [e, c] : f.terms) terms.push_back({e, num(c * Q(D))});
    auto eval_mod = [&](const std::vector<long>& x, long mod) {
        __int128 s = 0;
        for (auto& [e, c] : terms) {
            Int cm = c % mod;
            __int128 t = cm.convert_to<long>();
            if (t < 0) t += mod;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < e[i]; ++k) t = t * x[i] % mod;
            s = (s + t) % mod;
        }
        return (long)s;
    };
    std::vector<Int> counts;
    std::vector<std::vector<long>> sols{std::vector<long>(n, 0)};
    long pm = 1;
    unsigned long long pn = detail::pow_ull(p, n);
    for (int m = 1; m <= m_max; ++m) {
        long prev = pm;
        pm *= p;
        if ((unsigned long long)sols.size() * pn > budget) throw BudgetExceeded("igusa: enumeration budget exceeded at level " + std::to_string(m));
        std::vector<std::vector<long>> next;
        std::vector<long> t(n, 0), x(n);
        for (auto& base : sols) {
            std::fill(t.begin(), t.end(), 0);
            for (;;) {
                for (int i = 0; i < n; ++i) x[i] = base[i] + prev * t[i];
                if (eval_mod(x, pm) == 0) next.push_back(x);
                int i = n - 1;
                while (i >= 0 && ++t[i] == p) t[i--] = 0;
                if (i < 0) break;
            }
        }
        sols = std::move(next);
        counts.push_back(Int(sols.size()));
    }
    return counts;
}

struct IgusaReport {
    long p = 0;
    int m_max = 0;
    std::vector<Int> counts;       // N_1..N_m
    std::vector<Q> expected;       // p^{nm} * (coefficient of T^m in (1 - T Z)/(1 - T)), m = 1..m_max
    std::vector<Q> residuals;
    bool matched = false;
};

}  // namespace qzeta
