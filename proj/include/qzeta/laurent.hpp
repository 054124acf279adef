#pragma once

#include "rational.hpp"
#include "upoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qzeta {

// Exponent pair (e_L, e_T) of a monomial L^{e_L} T^{e_T}, T = L^{-s}.
using LTExp = std::pair<Q, Q>;

// Sparse Laurent polynomial in L and T with rational exponents.
struct LaurentLT {
    std::map<LTExp, Q> terms;

    LaurentLT() = default;
    LaurentLT(const Q& c) {
        if (c != 0) terms[{Q(0), Q(0)}] = c;
    }
    static LaurentLT mono(const Q& eL, const Q& eT, const Q& c = 1) {
        LaurentLT r;
        if (c != 0) r.terms[{eL, eT}] = c;
        return r;
    }
    // L^{a s + b} = L^b T^{-a}
    static LaurentLT Ls(const Q& a, const Q& b, const Q& c = 1) { return mono(b, -a, c); }
    static LaurentLT from_upoly_L(const UPoly& p) {
        LaurentLT r;
        for (long k = 0; k <= p.deg(); ++k)
            if (p.c[k] != 0) r.terms[{Q(k), Q(0)}] = p.c[k];
        return r;
    }

    bool zero() const { return terms.empty(); }

    void add(const LTExp& e, const Q& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    LaurentLT& operator+=(const LaurentLT& o) {
        for (auto& [e, c] : o.terms) add(e, c);
        return *this;
    }
    LaurentLT& operator-=(const LaurentLT& o) {
        for (auto& [e, c] : o.terms) add(e, -c);
        return *this;
    }
    friend LaurentLT operator+(LaurentLT a, const LaurentLT& b) { return a += b; }
    friend LaurentLT operator-(LaurentLT a, const LaurentLT& b) { return a -= b; }
    friend LaurentLT operator-(LaurentLT a) {
        for (auto& kv : a.terms) kv.second = -kv.second;
        return a;
    }
    friend LaurentLT operator*(const LaurentLT& a, const LaurentLT& b) {
        LaurentLT r;
        for (auto& [ea, ca] : a.terms)
            for (auto& [eb, cb] : b.terms) r.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return r;
    }
    LaurentLT& operator*=(const LaurentLT& o) { return *this = *this * o; }
    friend bool operator==(const LaurentLT& a, const LaurentLT& b) { return a.terms == b.terms; }
    friend bool operator!=(const LaurentLT& a, const LaurentLT& b) { return !(a == b); }

    LaurentLT pow(long k) const {
        LaurentLT r(1);
        for (long i = 0; i < k; ++i) r *= *this;
        return r;
    }

    // smallest R with R*e_L, R*e_T integral for every term
    Int denom_bound() const {
        Int R = 1;
        for (auto& kv : terms) {
            R = boost::multiprecision::lcm(R, den(kv.first.first));
            R = boost::multiprecision::lcm(R, den(kv.first.second));
        }
        return R;
    }
};

// Exact division by D(Y) = sum_j d[j] Y^j with Y = L^{v.first} T^{v.second}; nullopt if not divisible.
inline std::optional<LaurentLT> divide_by_poly_in_monomial(const LaurentLT& a, const LTExp& v, const std::vector<Q>& d) {
    if (d.empty() || d.front() == 0 || d.back() == 0) throw ContractError("divisor must have nonzero end coefficients");
    if (v.first == 0 && v.second == 0) throw ContractError("divisor monomial must be nontrivial");
    long t = (long)d.size() - 1;
    bool useT = v.second != 0;
    const Q& vc = useT ? v.second : v.first;
    // group exponents into classes modulo Z*v
    std::map<LTExp, std::map<long, Q>> groups;
    for (auto& [e, c] : a.terms) {
        const Q& ec = useT ? e.second : e.first;
        long k = to_long(floor_q(ec / vc));
        LTExp base{e.first - k * v.first, e.second - k * v.second};
        groups[base][k] = c;
    }
    LaurentLT out;
    for (auto& [base, poly] : groups) {
        long kmin = poly.begin()->first, kmax = poly.rbegin()->first;
        long len = kmax - kmin + 1;
        if (len - 1 < t) return std::nullopt;
        std::vector<Q> p(len, Q(0));
        for (auto& [k, c] : poly) p[k - kmin] = c;
        std::vector<Q> q(len - t, Q(0));
        for (long i = len - 1; i >= t; --i) {
            if (p[i] == 0) continue;
            Q f = p[i] / d[t];
            q[i - t] = f;
            for (long j = 0; j <= t; ++j) p[i - t + j] -= f * d[j];
        }
        for (long i = 0; i < t; ++i)
            if (p[i] != 0) return std::nullopt;
        for (long i = 0; i < (long)q.size(); ++i)
            if (q[i] != 0) {
                long k = i + kmin;
                out.add({base.first + k * v.first, base.second + k * v.second}, q[i]);
            }
    }
    return out;
}

// exponent "as+b" for L^{as+b}
inline std::string ls_exponent(const Q& a, const Q& b) {
    std::ostringstream os;
    if (a != 0) {
        if (a == -1)
            os << "-";
        else if (a != 1)
            os << (is_int(a) ? str(a) : "(" + str(a) + ")");
        os << "s";
        if (b > 0) os << "+" << str(b);
        if (b < 0) os << "-" << str(-b);
    } else {
        os << str(b);
    }
    return os.str();
}

inline std::string mono_str(const LTExp& e) {
    // L^{e_L} T^{e_T} = L^{(-e_T) s + e_L}
    Q a = -e.second, b = e.first;
    if (a == 0 && b == 0) return "1";
    if (a == 0 && b == 1) return "L";
    return "L^{" + ls_exponent(a, b) + "}";
}

inline std::string to_string(const LaurentLT& p) {
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const Q& c = it->second;
        bool neg = c < 0;
        Q m = neg ? Q(-c) : c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::string ms = mono_str(it->first);
        if (ms == "1")
            os << str(m);
        else if (m == 1)
            os << ms;
        else
            os << str(m) << "*" << ms;
    }
    return os.str();
}

}  // namespace qzeta
