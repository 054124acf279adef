#pragma once

#include "rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qzeta {

// Dense univariate polynomial over Q, c[k] is the coefficient of x^k.
struct UPoly {
    std::vector<Q> c;

    UPoly() = default;
    UPoly(Q a) {
        if (a != 0) c.push_back(a);
    }
    explicit UPoly(std::vector<Q> v) : c(std::move(v)) { trim(); }

    static UPoly x() { return UPoly(std::vector<Q>{0, 1}); }
    static UPoly monomial(Q a, long k) {
        std::vector<Q> v(k + 1, Q(0));
        v[k] = a;
        return UPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    long deg() const { return (long)c.size() - 1; }
    Q lead() const { return c.empty() ? Q(0) : c.back(); }
    Q coef(long k) const { return (k >= 0 && k < (long)c.size()) ? c[k] : Q(0); }

    Q operator()(const Q& t) const {
        Q r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
        return r;
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), Q(0));
        for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), Q(0));
        for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(UPoly a) {
        for (auto& x : a.c) x = -x;
        return a;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<Q> r(a.c.size() + b.c.size() - 1, Q(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            if (a.c[i] != 0)
                for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    UPoly derivative() const {
        std::vector<Q> r;
        for (size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * Q((long)i));
        return UPoly(std::move(r));
    }

    UPoly monic() const {
        if (zero()) return {};
        UPoly r = *this;
        Q l = lead();
        for (auto& x : r.c) x /= l;
        return r;
    }

    std::string str(const std::string& var = "x") const;
};

inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.zero()) throw ArithmeticError("polynomial division by zero");
    UPoly q, r = a;
    if (a.deg() < b.deg()) return {q, r};
    q.c.assign(a.deg() - b.deg() + 1, Q(0));
    while (!r.zero() && r.deg() >= b.deg()) {
        long k = r.deg() - b.deg();
        Q t = r.lead() / b.lead();
        q.c[k] = t;
        for (long i = 0; i <= b.deg(); ++i) r.c[i + k] -= t * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.zero()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Lagrange interpolation through (xs[i], ys[i]).
inline UPoly lagrange(const std::vector<Q>& xs, const std::vector<Q>& ys) {
    UPoly res;
    for (size_t i = 0; i < xs.size(); ++i) {
        UPoly term(ys[i]);
        Q denom = 1;
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term *= UPoly(std::vector<Q>{-xs[j], 1});
            denom *= xs[i] - xs[j];
        }
        for (auto& x : term.c) x /= denom;
        res += term;
    }
    return res;
}

inline std::string UPoly::str(const std::string& var) const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = deg(); k >= 0; --k) {
        Q a = c[k];
        if (a == 0) continue;
        bool neg = a < 0;
        Q m = neg ? Q(-a) : a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (k == 0) {
            os << qzeta::str(m);
            continue;
        }
        if (m != 1) os << qzeta::str(m) << (is_int(m) ? "" : "*");
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

}  // namespace qzeta
