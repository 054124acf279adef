#pragma once

#include "count.hpp"
#include "stringy.hpp"
#include "symb.hpp"
#include "toric.hpp"
#include "zeta.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qzeta::json_io {

using json = nlohmann::ordered_json;

// Rationals travel as strings ("-5/6") so nothing is lost to doubles.
inline json rat(const Q& q) { return str(q); }
inline Q rat(const json& j) {
    if (j.is_number_integer()) return Q(j.get<long>());
    return q_parse(j.get<std::string>());
}

inline json coeffs(const UPoly& p) {
    json a = json::array();
    for (auto& c : p.c) a.push_back(rat(c));
    return a;
}
inline UPoly upoly(const json& j) {
    std::vector<Q> c;
    for (auto& x : j) c.push_back(rat(x));
    return UPoly(c);
}

inline json pairs(const std::vector<std::pair<Q, Q>>& v) {
    json a = json::array();
    for (auto& [x, y] : v) a.push_back(json::array({rat(x), rat(y)}));
    return a;
}

inline json to_json(const MotZeta& z) {
    json terms = json::array();
    for (auto& t : z.terms) {
        std::vector<std::pair<Q, Q>> f;
        for (auto& x : t.factors) f.push_back({x.N, x.nu});
        terms.push_back({{"label", t.label}, {"class", coeffs(t.cls)}, {"sg", pairs(t.sg)}, {"factors", pairs(f)}});
    }
    return {{"prefactor", rat(z.prefactor)}, {"terms", terms}};
}

inline MotZeta motzeta_from_json(const json& j) {
    MotZeta z;
    z.prefactor = rat(j.at("prefactor"));
    for (auto& t : j.at("terms")) {
        MotTerm m;
        m.label = t.value("label", "");
        m.cls = upoly(t.at("class"));
        m.sg.clear();
        for (auto& p : t.at("sg")) m.sg.push_back({rat(p[0]), rat(p[1])});
        for (auto& p : t.at("factors")) m.factors.emplace_back(rat(p[0]), rat(p[1]));
        z.terms.push_back(m);
    }
    return z;
}

inline json to_json(const LaurentLT& p) {
    json a = json::array();
    for (auto& [e, c] : p.terms) a.push_back(json::array({rat(e.first), rat(e.second), rat(c)}));
    return a;
}

inline json to_json(const RationalZeta& r) {
    std::vector<std::pair<Q, Q>> d;
    for (auto& f : r.den) d.push_back({f.N, f.nu});
    return {{"text", to_string(r)}, {"prefactor", rat(r.prefactor)}, {"num", to_json(r.num)}, {"den", pairs(d)}};
}

inline json to_json(const TopZeta& t) {
    json den = json::array();
    for (auto& [N, nu] : t.den) den.push_back(json::array({N, nu}));
    return {{"text", to_string(t)}, {"num", coeffs(t.num)}, {"den", den}};
}

inline json to_json(const std::vector<Pole>& ps) {
    json a = json::array();
    for (auto& p : ps) a.push_back({{"s0", rat(p.s0)}, {"mult", p.mult}});
    return a;
}

inline std::vector<Pole> poles_from_json(const json& j) {
    std::vector<Pole> out;
    for (auto& p : j) out.push_back({rat(p.at("s0")), p.at("mult").get<long>()});
    return out;
}

inline json to_json(const Fan& f) {
    json cones = json::array();
    for (auto& c : f.cones) cones.push_back(c.rays);
    return {{"n", f.n}, {"rays", f.rays}, {"cones", cones}};
}

inline Fan fan_from_json(const json& j) {
    Fan f;
    f.n = j.at("n").get<int>();
    f.rays = j.at("rays").get<std::vector<IVec>>();
    for (auto& c : j.at("cones")) f.cones.push_back(Cone{c.get<std::vector<IVec>>()});
    return f;
}

inline json to_json(const EFun& e) {
    json num = json::array();
    for (auto& [x, c] : e.num.terms) num.push_back(json::array({rat(x.first), rat(c)}));
    json den = json::array();
    for (auto& d : e.den) den.push_back(rat(d));
    return {{"text", to_string(e)}, {"num", num}, {"den", den}};
}

inline EFun efun_from_json(const json& j) {
    EFun e;
    for (auto& t : j.at("num")) e.num.add({rat(t[0]), Q(0)}, rat(t[1]));
    for (auto& d : j.at("den")) e.den.push_back(rat(d));
    return e;
}

inline json to_json(const IgusaReport& r) {
    json counts = json::array(), exp = json::array(), res = json::array();
    for (auto& c : r.counts) counts.push_back(c.str());
    for (auto& e : r.expected) exp.push_back(rat(e));
    for (auto& e : r.residuals) res.push_back(rat(e));
    return {{"p", r.p}, {"m_max", r.m_max}, {"counts", counts}, {"expected", exp}, {"residuals", res}, {"matched", r.matched}};
}

inline json to_json(const ProbeReport& r) {
    json top = json::array();
    for (auto& t : r.top) top.push_back(to_string(t));
    return {{"topological", top}, {"equal", r.equal}, {"all_equal", r.all_equal}};
}

inline json to_json(const Certificate& c) {
    return {{"holds", c.holds}, {"kind", kind_str(c.kind)}, {"primes", c.primes}, {"witness", c.witness}};
}

inline DiagGroup group_from_json(const json& j, int n) {
    if (j.is_null()) return DiagGroup::trivial(n);
    std::string s = j.get<std::string>();
    if (s == "1" || s == "{1}" || s.empty()) return DiagGroup::trivial(n);
    return parse_group(s, n);
}

// A class given either as coefficients [c0, c1, ...] or as a polynomial string in one variable.
inline UPoly class_from_json(const json& j, const std::string& var) {
    if (j.is_array()) return upoly(j);
    if (j.is_number_integer()) return UPoly(std::vector<Q>{Q(j.get<long>())});
    MPoly p = parse_poly(j.get<std::string>(), {var});
    std::vector<Q> c;
    for (auto& [e, v] : p.terms) {
        if ((int)c.size() <= e[0]) c.resize(e[0] + 1, Q(0));
        c[e[0]] = v;
    }
    return UPoly(c);
}

// [{"e_class": "q^2-1" | [c0,..], "group": "1/r(a,...)" | "1", "nu": [..], "label": ..}, ...]
inline std::vector<StringyStratum> stringy_strata_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("qres file: expected a JSON array of strata");
    std::vector<StringyStratum> out;
    for (auto& s : j) {
        StringyStratum st;
        st.label = s.value("label", "");
        for (auto& v : s.at("nu")) st.nu.push_back(rat(v));
        st.e_class = class_from_json(s.at("e_class"), "q");
        st.group = group_from_json(s.contains("group") ? s.at("group") : json(), (int)st.nu.size());
        out.push_back(st);
    }
    return out;
}

// {"vars": [..], "eqs": [..], "neqs": [..], "torus": [..], "group": "1/r(..)", "dim_bound": k}
struct StratumRequest {
    StratumSpec spec;
    int dim_bound = 0;
};

inline StratumRequest stratum_from_json(const json& j) {
    StratumRequest r;
    auto vars = j.at("vars").get<std::vector<std::string>>();
    r.spec.n = (int)vars.size();
    for (auto& e : j.value("eqs", std::vector<std::string>{})) r.spec.eqs.push_back(parse_poly(e, vars));
    for (auto& e : j.value("neqs", std::vector<std::string>{})) r.spec.neqs.push_back(parse_poly(e, vars));
    if (j.contains("torus")) r.spec.torus = j.at("torus").get<std::vector<bool>>();
    if (j.contains("group") && !j.at("group").is_null()) r.spec.group = group_from_json(j.at("group"), r.spec.n);
    r.dim_bound = j.value("dim_bound", r.spec.n);
    r.spec.check();
    return r;
}

}  // namespace qzeta::json_io
