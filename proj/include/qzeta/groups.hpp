#pragma once

#include "rational.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <set>
#include <string>
#include <vector>

namespace qzeta {

using IMat = std::vector<std::vector<long>>;

struct SNF {
    IMat U, D, V;
};

namespace detail {
inline IMat identity(size_t n) {
    IMat I(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}
inline long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("overflow in integer matrix arithmetic");
    return r;
}
inline long checked_sub(long a, long b) {
    long r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("overflow in integer matrix arithmetic");
    return r;
}
}  // namespace detail

// U*A*V = D, U and V unimodular, D diagonal with d1 | d2 | ... and d_i >= 0.
inline SNF smith_normal_form(const IMat& A) {
    using detail::checked_mul;
    using detail::checked_sub;
    size_t m = A.size(), n = m ? A[0].size() : 0;
    SNF s{detail::identity(m), A, detail::identity(n)};
    IMat& D = s.D;
    auto row_op = [&](size_t dst, size_t src, long k) {  // row dst -= k*row src
        for (size_t j = 0; j < n; ++j) D[dst][j] = checked_sub(D[dst][j], checked_mul(k, D[src][j]));
        for (size_t j = 0; j < m; ++j) s.U[dst][j] = checked_sub(s.U[dst][j], checked_mul(k, s.U[src][j]));
    };
    auto col_op = [&](size_t dst, size_t src, long k) {  // col dst -= k*col src
        for (size_t i = 0; i < m; ++i) D[i][dst] = checked_sub(D[i][dst], checked_mul(k, D[i][src]));
        for (size_t i = 0; i < n; ++i) s.V[i][dst] = checked_sub(s.V[i][dst], checked_mul(k, s.V[i][src]));
    };
    auto swap_rows = [&](size_t a, size_t b) {
        std::swap(D[a], D[b]);
        std::swap(s.U[a], s.U[b]);
    };
    auto swap_cols = [&](size_t a, size_t b) {
        for (auto& r : D) std::swap(r[a], r[b]);
        for (auto& r : s.V) std::swap(r[a], r[b]);
    };
    size_t r = std::min(m, n);
    for (size_t t = 0; t < r; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block
            long best = 0;
            size_t bi = t, bj = t;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (best == 0 || std::labs(D[i][j]) < best)) {
                        best = std::labs(D[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) return s;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i)
                if (D[i][t] != 0) {
                    row_op(i, t, D[i][t] / D[t][t]);
                    if (D[i][t] != 0) clean = false;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (D[t][j] != 0) {
                    col_op(j, t, D[t][j] / D[t][t]);
                    if (D[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility of the remaining block
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        row_op(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
            for (size_t j = 0; j < m; ++j) s.U[t][j] = -s.U[t][j];
        }
    }
    return s;
}

inline IMat mat_mul(const IMat& A, const IMat& B) {
    size_t m = A.size(), k = B.size(), n = k ? B[0].size() : 0;
    IMat C(m, std::vector<long>(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

// One diagonal generator diag(zeta_r^{a_1}, ..., zeta_r^{a_n}).
struct Gen {
    long r;
    std::vector<long> a;
};

// Finite abelian group of diagonal matrices.
class DiagGroup {
  public:
    static constexpr size_t kDefaultCap = 1000000;

    DiagGroup() = default;
    explicit DiagGroup(int n) : n_(n) {}
    DiagGroup(int n, std::vector<Gen> gens, size_t cap = kDefaultCap) : n_(n), gens_(std::move(gens)), cap_(cap) {
        for (auto& g : gens_) {
            if (g.r <= 0) throw std::invalid_argument("group generator order must be positive");
            if ((int)g.a.size() != n_) throw std::invalid_argument("generator length mismatch");
        }
    }
    static DiagGroup cyclic(long r, std::vector<long> a) {
        int n = (int)a.size();
        return DiagGroup(n, {Gen{r, std::move(a)}});
    }
    static DiagGroup trivial(int n) { return DiagGroup(n); }

    int dim() const { return n_; }
    const std::vector<Gen>& generators() const { return gens_; }

    // lcm of generator orders; all element angles are multiples of 1/exponent
    long exponent() const {
        long M = 1;
        for (auto& g : gens_) M = lcm_l(M, g.r);
        return M;
    }

    // elements as angle vectors e with entries in [0, exponent()), gamma = diag(zeta_M^{e_i})
    const std::vector<std::vector<long>>& elements() const {
        if (!enumerated_) enumerate();
        return elems_;
    }
    size_t order() const { return elements().size(); }

    // order computed from the generator lattice via Smith normal form
    long order_snf() const {
        long M = exponent();
        IMat A;
        for (auto& g : gens_) {
            std::vector<long> row(n_);
            for (int i = 0; i < n_; ++i) row[i] = mod_l(g.a[i], g.r) * (M / g.r);
            A.push_back(row);
        }
        for (int i = 0; i < n_; ++i) {
            std::vector<long> row(n_, 0);
            row[i] = M;
            A.push_back(row);
        }
        if (n_ == 0) return 1;
        SNF s = smith_normal_form(A);
        // |H| = M^n / prod(d_i)
        Int num = 1, den = 1;
        for (int i = 0; i < n_; ++i) {
            num *= M;
            den *= s.D[i][i];
        }
        return to_long(Int(num / den));
    }

    // epsilon_{gamma,i} normalised to r = |G| as in 0 <= eps < r
    std::vector<std::vector<long>> epsilons() const {
        long r = (long)order(), M = exponent();
        std::vector<std::vector<long>> out;
        for (auto& e : elements()) {
            std::vector<long> v(n_);
            for (int i = 0; i < n_; ++i) v[i] = e[i] * (r / M);
            out.push_back(v);
        }
        return out;
    }

    bool is_trivial() const { return order() == 1; }

    friend bool operator==(const DiagGroup& a, const DiagGroup& b) {
        if (a.n_ != b.n_ || a.order() != b.order()) return false;
        return a.element_set() == b.element_set();
    }
    friend bool operator!=(const DiagGroup& a, const DiagGroup& b) { return !(a == b); }

    // set of elements as reduced fractions per coordinate, presentation independent
    std::set<std::vector<std::pair<long, long>>> element_set() const {
        std::set<std::vector<std::pair<long, long>>> s;
        long M = exponent();
        for (auto& e : elements()) {
            std::vector<std::pair<long, long>> v;
            for (long x : e) {
                long g = gcd_l(x, M);
                v.push_back({x / g, M / g});
            }
            s.insert(v);
        }
        return s;
    }

    bool subgroup_of(const DiagGroup& o) const {
        auto big = o.element_set();
        for (auto& x : element_set())
            if (!big.count(x)) return false;
        return true;
    }

    // subgroup of elements acting trivially on the given coordinates
    DiagGroup fixing(const std::vector<int>& coords) const {
        long M = exponent();
        std::vector<Gen> gens;
        for (auto& e : elements()) {
            bool ok = true;
            for (int c : coords)
                if (e[c] != 0) ok = false;
            if (ok && std::any_of(e.begin(), e.end(), [](long x) { return x != 0; })) gens.push_back(Gen{M, e});
        }
        return DiagGroup(n_, reduce_generators(gens)).normalized();
    }

    // action restricted to a subset of coordinates (possibly non-faithful presentation)
    DiagGroup restrict_to(const std::vector<int>& coords) const {
        std::vector<Gen> gens;
        for (auto& g : gens_) {
            std::vector<long> a;
            for (int c : coords) a.push_back(g.a[c]);
            gens.push_back(Gen{g.r, a});
        }
        return DiagGroup((int)coords.size(), gens).normalized();
    }

    // generators reduced: exponents mod r, r divided by the common gcd, identity generators dropped
    DiagGroup normalized() const {
        std::vector<Gen> out;
        for (auto& g : gens_) {
            long gg = g.r;
            std::vector<long> a(n_);
            for (int i = 0; i < n_; ++i) {
                a[i] = mod_l(g.a[i], g.r);
                gg = gcd_l(gg, a[i]);
            }
            if (gg == g.r) continue;
            for (auto& x : a) x /= gg;
            out.push_back(Gen{g.r / gg, a});
        }
        return DiagGroup(n_, out, cap_);
    }

    // cyclic generator if the group is cyclic (found by searching for an element of full order)
    std::optional<Gen> cyclic_generator() const {
        long r = (long)order(), M = exponent();
        if (r == 1) return Gen{1, std::vector<long>(n_, 0)};
        for (auto& e : elements()) {
            long o = 1;
            for (long x : e) o = lcm_l(o, M / gcd_l(x, M));
            if (o == r) {
                std::vector<long> a(n_);
                for (int i = 0; i < n_; ++i) a[i] = e[i] * r / M;
                return Gen{r, a};
            }
        }
        return std::nullopt;
    }

    std::string str() const;

  private:
    int n_ = 0;
    std::vector<Gen> gens_;
    size_t cap_ = kDefaultCap;
    mutable bool enumerated_ = false;
    mutable std::vector<std::vector<long>> elems_;

    static std::vector<Gen> reduce_generators(const std::vector<Gen>& all) {
        // keep a small generating set: greedily add elements not yet generated
        if (all.empty()) return {};
        int n = (int)all[0].a.size();
        std::vector<Gen> chosen;
        for (auto& g : all) {
            DiagGroup cur(n, chosen);
            auto es = cur.element_set();
            DiagGroup single(n, {g});
            bool inside = true;
            for (auto& x : single.element_set())
                if (!es.count(x)) {
                    inside = false;
                    break;
                }
            if (!inside) chosen.push_back(g);
        }
        return chosen;
    }

    void enumerate() const {
        long M = exponent();
        std::vector<std::vector<long>> steps;
        for (auto& g : gens_) {
            std::vector<long> s(n_);
            for (int i = 0; i < n_; ++i) s[i] = mod_l(g.a[i], g.r) * (M / g.r);
            steps.push_back(s);
        }
        std::set<std::vector<long>> seen;
        std::deque<std::vector<long>> q;
        std::vector<long> zero(n_, 0);
        seen.insert(zero);
        q.push_back(zero);
        elems_.clear();
        while (!q.empty()) {
            auto e = q.front();
            q.pop_front();
            elems_.push_back(e);
            if (elems_.size() > cap_) throw ConfigError("group order exceeds enumeration cap");
            for (auto& s : steps) {
                std::vector<long> f(n_);
                for (int i = 0; i < n_; ++i) f[i] = (e[i] + s[i]) % M;
                if (seen.insert(f).second) q.push_back(f);
            }
        }
        std::sort(elems_.begin(), elems_.end());
        enumerated_ = true;
    }
};

inline std::string gen_str(const Gen& g) {
    std::ostringstream os;
    os << "1/" << g.r << "(";
    for (size_t i = 0; i < g.a.size(); ++i) os << (i ? "," : "") << g.a[i];
    os << ")";
    return os.str();
}

inline std::string DiagGroup::str() const {
    auto nz = normalized();
    if (nz.gens_.empty()) return "{1}";
    std::string s;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) s += " + ";
        s += gen_str(gens_[i]);
    }
    return s;
}

// Parse "1/r(a1,...,an)", "{1}" (needs n), or generators joined by '+'.
inline DiagGroup parse_group(const std::string& src, int n_hint = -1) {
    std::string s;
    for (char ch : src)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s == "{1}" || s == "1") {
        if (n_hint < 0) throw std::invalid_argument("trivial group needs a dimension");
        return DiagGroup::trivial(n_hint);
    }
    std::vector<Gen> gens;
    size_t p = 0;
    int n = -1;
    while (p < s.size()) {
        if (s.compare(p, 2, "1/") != 0) throw std::invalid_argument("group: expected '1/' at " + std::to_string(p));
        p += 2;
        size_t b = p;
        while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
        if (b == p) throw std::invalid_argument("group: expected order");
        long r = std::stol(s.substr(b, p - b));
        if (p >= s.size() || s[p] != '(') throw std::invalid_argument("group: expected '('");
        ++p;
        std::vector<long> a;
        for (;;) {
            b = p;
            if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
            if (b == p) throw std::invalid_argument("group: expected exponent");
            a.push_back(std::stol(s.substr(b, p - b)));
            if (p < s.size() && s[p] == ',') {
                ++p;
                continue;
            }
            if (p < s.size() && s[p] == ')') {
                ++p;
                break;
            }
            throw std::invalid_argument("group: expected ',' or ')'");
        }
        if (n >= 0 && (int)a.size() != n) throw std::invalid_argument("group: generator lengths differ");
        n = (int)a.size();
        if (r <= 0) throw std::invalid_argument("group: order must be positive");
        gens.push_back(Gen{r, a});
        if (p < s.size()) {
            if (s[p] != '+') throw std::invalid_argument("group: trailing characters");
            ++p;
        }
    }
    if (n < 0) throw std::invalid_argument("group: empty");
    if (n_hint >= 0 && n != n_hint) throw std::invalid_argument("group: dimension mismatch");
    return DiagGroup(n, gens);
}

// Stabilizer of the points of C_I for G = <diag(zeta_a^{-1}, zeta_a^{b_2}, ...)>; I holds
// 0-based coordinates and must avoid the coordinate carrying the exponent -1.
inline DiagGroup stabilizer(const DiagGroup& G, const std::vector<int>& I) {
    if (G.generators().size() != 1) throw ContractError("stabilizer: group must be given by one generator");
    const Gen& g = G.generators()[0];
    long a = g.r;
    int special = -1;
    for (int i = 0; i < G.dim(); ++i)
        if (mod_l(g.a[i], a) == mod_l(-1, a)) {
            special = i;
            break;
        }
    if (special < 0) throw ContractError("stabilizer: no coordinate with exponent -1");
    for (int j : I)
        if (j == special) throw ContractError("stabilizer: I contains the distinguished coordinate");
    if (I.empty()) return G;
    long dI = 0;
    for (int j : I) dI = gcd_l(dI, mod_l(g.a[j], a));
    long bI = a / gcd_l(a, dI);
    std::vector<long> e(G.dim());
    for (int i = 0; i < G.dim(); ++i) e[i] = g.a[i] * bI;
    return DiagGroup(G.dim(), {Gen{a, e}}).normalized();
}

// S_G(N, nu, s) as the list of (varpi_N(gamma), varpi_nu(gamma)).
using SgSum = std::vector<std::pair<Q, Q>>;

inline SgSum sg_sum(const DiagGroup& G, const std::vector<Q>& N, const std::vector<Q>& nu) {
    if ((int)N.size() != G.dim() || (int)nu.size() != G.dim()) throw ContractError("sg_sum: length mismatch");
    long M = G.exponent();
    SgSum out;
    for (auto& e : G.elements()) {
        Q a = 0, b = 0;
        for (int i = 0; i < G.dim(); ++i) {
            a += N[i] * e[i];
            b += nu[i] * e[i];
        }
        out.push_back({a / M, b / M});
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct NonSimplicialCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group G with U_sigma = C^n / G for the cone spanned by the rays (rows).
inline DiagGroup group_from_cone(const std::vector<std::vector<long>>& rays) {
    int n = (int)rays.size();
    for (auto& r : rays)
        if ((int)r.size() != n) throw NonSimplicialCone("non-simplicial cone: need n rays in dimension n");
    if (n == 0) return DiagGroup(0);
    SNF s = smith_normal_form(rays);
    std::vector<Gen> gens;
    for (int i = 0; i < n; ++i) {
        long d = s.D[i][i];
        if (d == 0) throw NonSimplicialCone("non-simplicial cone: rays are linearly dependent");
        if (d == 1) continue;
        std::vector<long> a(n);
        for (int j = 0; j < n; ++j) a[j] = mod_l(s.U[i][j], d);
        gens.push_back(Gen{d, a});
    }
    return DiagGroup(n, gens).normalized();
}

}  // namespace qzeta
