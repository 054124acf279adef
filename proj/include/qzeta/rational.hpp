#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeta {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Int num(const Q& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Q& q) { return boost::multiprecision::denominator(q); }
inline bool is_int(const Q& q) { return den(q) == 1; }

inline Int floor_q(const Q& q) {
    Int n = num(q), d = den(q);
    Int f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

inline long to_long(const Int& z) {
    if (z > Int(std::numeric_limits<long>::max()) || z < Int(std::numeric_limits<long>::min()))
        throw ArithmeticError("integer overflow");
    return z.convert_to<long>();
}
inline long to_long(const Q& q) {
    if (!is_int(q)) throw ArithmeticError("expected integer, got " + num(q).str() + "/" + den(q).str());
    return to_long(num(q));
}

inline std::string str(const Q& q) {
    if (is_int(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Q q_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Q(Int(s));
    Int d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Q(Int(s.substr(0, slash))) / Q(d);
}

inline Q q_pow(const Q& b, long e) {
    if (e < 0) {
        if (b == 0) throw ArithmeticError("0 to a negative power");
        return q_pow(1 / b, -e);
    }
    Q r = 1, x = b;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

inline long gcd_l(long a, long b) { return std::gcd(a, b); }
inline long lcm_l(long a, long b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

inline long mod_l(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// lcm of the denominators of a list of rationals
inline Int den_lcm(const std::vector<Q>& v) {
    Int l = 1;
    for (auto& x : v) l = boost::multiprecision::lcm(l, den(x));
    return l;
}

}  // namespace qzeta
