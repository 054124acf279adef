#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace qzeta {

using Exp = std::vector<int>;

struct MPoly {
    int n = 0;
    std::map<Exp, Q> terms;

    MPoly() = default;
    explicit MPoly(int nvars) : n(nvars) {}

    static MPoly constant(int nvars, const Q& c) {
        MPoly p(nvars);
        if (c != 0) p.terms[Exp(nvars, 0)] = c;
        return p;
    }
    static MPoly var(int nvars, int i, int power = 1) {
        MPoly p(nvars);
        Exp e(nvars, 0);
        e[i] = power;
        p.terms[e] = 1;
        return p;
    }
    static MPoly mono(const Exp& e, const Q& c) {
        MPoly p((int)e.size());
        if (c != 0) p.terms[e] = c;
        return p;
    }

    bool zero() const { return terms.empty(); }
    size_t size() const { return terms.size(); }

    void add_term(const Exp& e, const Q& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        for (auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (auto& [e, c] : o.terms) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(std::max(a.n, b.n));
        for (auto& [ea, ca] : a.terms)
            for (auto& [eb, cb] : b.terms) {
                Exp e(r.n, 0);
                for (int i = 0; i < a.n; ++i) e[i] += ea[i];
                for (int i = 0; i < b.n; ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const Q& s, MPoly a) {
        if (s == 0) return MPoly(a.n);
        for (auto& [e, c] : a.terms) c *= s;
        return a;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.n == b.n && a.terms == b.terms; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(int k) const {
        MPoly r = constant(n, 1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    MPoly diff(int i) const {
        MPoly r(n);
        for (auto& [e, c] : terms)
            if (e[i] > 0) {
                Exp f = e;
                f[i] -= 1;
                r.add_term(f, c * e[i]);
            }
        return r;
    }

    int total_degree() const {
        int d = 0;
        for (auto& kv : terms) {
            int s = 0;
            for (int a : kv.first) s += a;
            d = std::max(d, s);
        }
        return d;
    }

    Q constant_term() const {
        auto it = terms.find(Exp(n, 0));
        return it == terms.end() ? Q(0) : it->second;
    }

    // set x_i = value for each i in fix (value may be zero)
    MPoly substitute_const(const std::vector<std::pair<int, Q>>& fix) const {
        MPoly r(n);
        for (auto& [e, c] : terms) {
            Q cc = c;
            Exp f = e;
            for (auto& [i, v] : fix) {
                cc *= q_pow(v, f[i]);
                f[i] = 0;
                if (cc == 0) break;
            }
            r.add_term(f, cc);
        }
        return r;
    }

    bool uses_var(int i) const {
        for (auto& kv : terms)
            if (kv.first[i] != 0) return true;
        return false;
    }

    // lcm of coefficient denominators; scaling by it gives integer coefficients
    Int denominator_lcm() const {
        Int l = 1;
        for (auto& kv : terms) l = boost::multiprecision::lcm(l, den(kv.second));
        return l;
    }

    std::vector<Exp> support() const {
        std::vector<Exp> s;
        for (auto& kv : terms) s.push_back(kv.first);
        return s;
    }
};

inline std::vector<std::string> default_var_names(int n) {
    static const char* base[] = {"x", "y", "z", "w"};
    std::vector<std::string> v;
    if (n <= 4) {
        for (int i = 0; i < n; ++i) v.push_back(base[i]);
    } else {
        for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
    }
    return v;
}

inline std::string to_string(const MPoly& p, const std::vector<std::string>& names = {}) {
    auto vn = names.empty() ? default_var_names(p.n) : names;
    if (p.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // graded reverse order: higher total degree first, then lexicographic
    std::vector<std::pair<Exp, Q>> t(p.terms.rbegin(), p.terms.rend());
    for (auto& [e, c] : t) {
        bool neg = c < 0;
        Q m = neg ? Q(-c) : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool has_var = std::any_of(e.begin(), e.end(), [](int a) { return a != 0; });
        bool wrote = false;
        if (m != 1 || !has_var) {
            os << str(m);
            wrote = true;
        }
        for (int i = 0; i < p.n; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << vn[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// poly := term (('+'|'-') term)*; term := [coef '*'] factor ('*' factor)*
// factor := var ['^' nat]; coef := int | int '/' nat.  A bare coef is a constant term.
class PolyParser {
  public:
    PolyParser(const std::string& src, std::vector<std::string> vars, bool grow)
        : s_(src), vars_(std::move(vars)), grow_(grow) {}

    MPoly parse() {
        std::vector<std::pair<std::map<int, int>, Q>> raw;
        skip();
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++p_;
        }
        for (;;) {
            auto t = term();
            if (neg) t.second = -t.second;
            raw.push_back(std::move(t));
            skip();
            if (p_ >= s_.size()) break;
            char ch = s_[p_];
            if (ch != '+' && ch != '-') throw ParseError(std::string("unexpected '") + ch + "'", p_);
            neg = ch == '-';
            ++p_;
        }
        int n = (int)vars_.size();
        MPoly f(n);
        for (auto& [m, c] : raw) {
            Exp e(n, 0);
            for (auto& [i, k] : m) e[i] += k;
            f.add_term(e, c);
        }
        return f;
    }
    const std::vector<std::string>& vars() const { return vars_; }

  private:
    std::string s_;
    std::vector<std::string> vars_;
    bool grow_;
    size_t p_ = 0;

    void skip() {
        while (p_ < s_.size() && std::isspace((unsigned char)s_[p_])) ++p_;
    }
    char peek() {
        skip();
        return p_ < s_.size() ? s_[p_] : '\0';
    }
    std::string digits() {
        skip();
        size_t b = p_;
        while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
        if (b == p_) throw ParseError("expected number", b);
        return s_.substr(b, p_ - b);
    }
    int var_index() {
        skip();
        size_t b = p_;
        if (p_ >= s_.size() || !std::isalpha((unsigned char)s_[p_])) throw ParseError("expected variable", b);
        while (p_ < s_.size() && (std::isalnum((unsigned char)s_[p_]) || s_[p_] == '_')) ++p_;
        std::string name = s_.substr(b, p_ - b);
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return (int)i;
        if (grow_) {
            // default names: x,y,z,w then x1..xn; accept them in order of first appearance slot
            auto defs4 = default_var_names(4);
            for (int i = 0; i < 4; ++i)
                if (defs4[i] == name) return grow_to(i);
            if (name.size() > 1 && name[0] == 'x' &&
                std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit((unsigned char)ch); })) {
                int k = std::stoi(name.substr(1));
                if (k >= 1) return grow_to(k - 1, true);
            }
        }
        throw ParseError("unknown variable '" + name + "'", b);
    }
    int grow_to(int i, bool indexed = false) {
        if (indexed) {
            // switching to x1..xn naming; existing names must be compatible
            for (size_t j = 0; j < vars_.size(); ++j)
                if (vars_[j] != "x" + std::to_string(j + 1)) throw ParseError("mixed variable naming", p_);
            while ((int)vars_.size() <= i) vars_.push_back("x" + std::to_string(vars_.size() + 1));
            return i;
        }
        auto defs = default_var_names(4);
        for (size_t j = 0; j < vars_.size(); ++j)
            if (j >= 4 || vars_[j] != defs[j]) throw ParseError("mixed variable naming", p_);
        while ((int)vars_.size() <= i) vars_.push_back(defs[vars_.size()]);
        return i;
    }
    std::pair<std::map<int, int>, Q> term() {
        Q coef = 1;
        std::map<int, int> m;
        char ch = peek();
        bool need_factor = true;
        if (std::isdigit((unsigned char)ch)) {
            Int a(digits());
            Q c = Q(a);
            if (peek() == '/') {
                ++p_;
                size_t b = p_;
                Int d(digits());
                if (d == 0) throw ParseError("zero denominator", b);
                c /= Q(d);
            }
            coef = c;
            if (peek() == '*') {
                ++p_;
            } else {
                need_factor = false;
            }
        }
        if (need_factor) {
            for (;;) {
                int v = var_index();
                int k = 1;
                if (peek() == '^') {
                    ++p_;
                    size_t b = p_;
                    std::string ds = digits();
                    if (ds.size() > 6) throw ParseError("exponent too large", b);
                    k = std::stoi(ds);
                }
                m[v] += k;
                if (peek() == '*') {
                    ++p_;
                    continue;
                }
                break;
            }
        }
        return {m, coef};
    }
};

// Parse with an explicit variable list, or (empty list) the default naming with the
// number of variables equal to the highest one used.
inline MPoly parse_poly(const std::string& src, const std::vector<std::string>& vars = {}) {
    PolyParser pp(src, vars, vars.empty());
    MPoly f = pp.parse();
    return f;
}

// Parse several polynomials so they share the variable count.
inline std::vector<MPoly> parse_polys(const std::vector<std::string>& srcs, const std::vector<std::string>& vars = {}) {
    std::vector<MPoly> out;
    int n = 0;
    for (auto& s : srcs) {
        out.push_back(parse_poly(s, vars));
        n = std::max(n, out.back().n);
    }
    for (auto& f : out) {
        if (f.n == n) continue;
        MPoly g(n);
        for (auto& [e, c] : f.terms) {
            Exp e2 = e;
            e2.resize(n, 0);
            g.add_term(e2, c);
        }
        f = g;
    }
    return out;
}

inline MPoly resize_vars(const MPoly& f, int n) {
    MPoly g(n);
    for (auto& [e, c] : f.terms) {
        Exp e2 = e;
        e2.resize(n, 0);
        g.add_term(e2, c);
    }
    return g;
}

}  // namespace qzeta
