// qzeta command-line front end.
#include "qzeta/acceptance.hpp"
#include "qzeta/json_io.hpp"
#include "qzeta/stringy.hpp"
#include "qzeta/toric.hpp"
#include "qzeta/zeta.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qzeta;
using json = json_io::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string vars;
    bool as_json = false;
    std::string primes;
    unsigned long long max_enum = 0;

    std::vector<std::string> var_list() const {
        std::vector<std::string> out;
        std::stringstream ss(vars);
        std::string t;
        while (std::getline(ss, t, ','))
            if (!t.empty()) out.push_back(t);
        return out;
    }
    CountConfig config() const {
        CountConfig c = CountConfig::from_env();
        if (!primes.empty()) c.primes = CountConfig::parse_prime_list(primes);
        if (max_enum) c.max_enum = max_enum;
        return c;
    }
};

MPoly poly(const Options& o, const std::string& src) {
    try {
        return parse_poly(src, o.var_list());
    } catch (const ParseError& e) {
        throw UsageError(std::string("cannot parse polynomial: ") + e.what());
    }
}

std::vector<long> int_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        try {
            out.push_back(std::stol(t));
        } catch (const std::exception&) {
            throw UsageError("bad integer list '" + s + "'");
        }
    }
    return out;
}

SqhData sqh_of(const Options& o, const std::string& src, const std::string& weight) {
    MPoly f = poly(o, src);
    if (!weight.empty()) return make_sqh(f, Weight{int_list(weight), 0});
    auto s = infer_weight(f);
    if (!s) throw ConfigError("no weight makes the principal part an isolated singularity; pass --weight");
    return *s;
}

json weight_json(const SqhData& s) { return {{"w", s.w.w}, {"d", s.w.d}, {"isolated", json_io::to_json(s.isolated)}}; }

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motivic, topological and stringy zeta computations for hypersurface singularities"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--vars", o.vars, "comma-separated variable order, e.g. x,y,z");
    app.add_flag("--json", o.as_json, "machine-readable output");
    app.add_option("--primes", o.primes, "comma-separated primes for the counting oracle (overrides QZETA_PRIMES)");
    app.add_option("--max-enum", o.max_enum, "enumeration budget per count (overrides QZETA_MAX_ENUM)");

    std::string src, weight, path = "sqh", qres_file, spec_file;
    std::vector<std::string> srcs;
    bool local = false, global = false, fastpath = false, simplicial = false;
    long p = 0;
    int max_m = 3;
    std::vector<int> ids;

    auto* zeta = app.add_subcommand("zeta", "motivic zeta function (global unless --local)");
    zeta->add_flag("--local", local, "zeta function at the origin");
    zeta->add_option("--weight", weight, "weight vector p,q,...");
    zeta->add_flag("--dim2-fastpath", fastpath, "two-variable closed form (local only)");
    zeta->add_option("poly", src)->required();

    auto* top = app.add_subcommand("topzeta", "topological zeta function (local unless --global)");
    top->add_flag("--global", global);
    top->add_option("--weight", weight);
    top->add_option("poly", src)->required();

    auto* pol = app.add_subcommand("poles", "poles of the motivic zeta function");
    pol->add_flag("--local", local);
    pol->add_option("--weight", weight);
    pol->add_option("poly", src)->required();

    auto* str_cmd = app.add_subcommand("stringy", "stringy E-function of {f = 0}");
    str_cmd->add_option("--path", path, "sqh or nondeg")->check(CLI::IsMember({"sqh", "nondeg"}));
    str_cmd->add_option("--qres-file", qres_file, "JSON strata list; replaces the polynomial");
    str_cmd->add_option("--weight", weight);
    str_cmd->add_option("poly", src);

    auto* fan = app.add_subcommand("fan", "normal fan of the Newton polyhedron");
    fan->add_flag("--simplicial", simplicial, "pulling refinement without new rays");
    fan->add_option("poly", src)->required();

    auto* cls = app.add_subcommand("class", "class of a stratum by point counting");
    cls->add_option("spec", spec_file, "StratumSpec JSON file")->required();

    auto* ig = app.add_subcommand("igusa-check", "Igusa Poincare series against the p-adic specialization");
    ig->add_option("-p", p, "prime")->required();
    ig->add_option("-m,--max-m", max_m, "largest level m");
    ig->add_option("--weight", weight);
    ig->add_option("poly", src)->required();

    auto* probe = app.add_subcommand("probe", "compare topological zeta functions for a fixed (w, d)");
    probe->add_option("--weight", weight)->required();
    probe->add_option("polys", srcs)->required();

    auto* fix = app.add_subcommand("fixtures", "run the acceptance suite");
    fix->add_option("ids", ids, "criterion numbers (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CountConfig cfg = o.config();
        if (*zeta) {
            SqhData s = sqh_of(o, src, weight);
            MotZeta z;
            if (fastpath) {
                if (!local) throw UsageError("--dim2-fastpath computes the local zeta function; add --local");
                z = motivic_zeta_dim2(s);
            } else {
                z = motivic_zeta(s, local, cfg);
            }
            RationalZeta r = normalize(z);
            json j{{"weight", weight_json(s)}, {"local", local}, {"zeta", json_io::to_json(z)}, {"normalized", json_io::to_json(r)}};
            emit(o, j, "w = " + s.w.str() + ", d = " + std::to_string(s.w.d) + "\n" + to_string(z) + "\nnormalized: " + to_string(r));
        } else if (*top) {
            SqhData s = sqh_of(o, src, weight);
            TopZeta t = specialize_topological(motivic_zeta(s, !global, cfg));
            emit(o, {{"weight", weight_json(s)}, {"local", !global}, {"topzeta", json_io::to_json(t)}}, to_string(t));
        } else if (*pol) {
            SqhData s = sqh_of(o, src, weight);
            auto ps = poles(normalize(motivic_zeta(s, local, cfg)));
            emit(o, {{"weight", weight_json(s)}, {"local", local}, {"poles", json_io::to_json(ps)}}, to_string(ps));
        } else if (*str_cmd) {
            EFun e;
            json j;
            if (!qres_file.empty()) {
                e = stringy_from_qres(json_io::stringy_strata_from_json(parse_json(qres_file)));
                j["path"] = "qres";
            } else {
                if (src.empty()) throw UsageError("stringy needs a polynomial or --qres-file");
                if (path == "sqh") {
                    SqhData s = sqh_of(o, src, weight);
                    e = stringy_sqh(s, cfg);
                    j["weight"] = weight_json(s);
                } else {
                    e = stringy_nondeg(poly(o, src), cfg);
                }
                j["path"] = path;
            }
            j["stringy"] = json_io::to_json(e);
            std::string text = to_string(e);
            try {
                Q chi = stringy_euler(e);
                j["euler"] = json_io::rat(chi);
                text += "\nstringy Euler number: " + str(chi);
            } catch (const std::domain_error&) {
                j["euler"] = nullptr;
            }
            emit(o, j, text);
        } else if (*fan) {
            MPoly f = poly(o, src);
            Fan F = normal_fan(newton_polyhedron(f));
            if (simplicial) F = simplicial_subdivide(F);
            std::ostringstream os;
            os << "rays:";
            for (auto& r : F.rays) {
                os << "\n ";
                for (long x : r) os << " " << x;
            }
            os << "\ncones:";
            for (auto& c : F.cones) {
                os << "\n ";
                for (size_t k = 0; k < c.rays.size(); ++k) {
                    os << (k ? " |" : "");
                    for (long x : c.rays[k]) os << " " << x;
                }
            }
            emit(o, json_io::to_json(F), os.str());
        } else if (*cls) {
            auto req = json_io::stratum_from_json(parse_json(spec_file));
            UPoly c = class_interpolate(req.spec, req.dim_bound, cfg);
            emit(o, {{"class", json_io::coeffs(c)}, {"text", c.zero() ? "0" : c.str("L")}, {"euler", str(Q(euler_char(c)))}},
                 c.zero() ? "0" : c.str("L"));
        } else if (*ig) {
            SqhData s = sqh_of(o, src, weight);
            IgusaReport r = igusa_check(motivic_zeta(s, false, cfg), s.f, p, max_m, cfg);
            std::ostringstream os;
            os << "p = " << p << ", m <= " << max_m << (r.matched ? ": match" : ": MISMATCH");
            for (int m = 1; m <= max_m; ++m)
                os << "\n  N_" << m << " = " << r.counts[m - 1] << "  expected " << str(r.expected[m - 1]);
            emit(o, json_io::to_json(r), os.str());
            if (!r.matched) return 1;
        } else if (*probe) {
            std::vector<MPoly> fs;
            for (auto& x : srcs) fs.push_back(poly(o, x));
            ProbeReport r = conjecture_probe(fs, Weight{int_list(weight), 0}, cfg);
            std::ostringstream os;
            for (size_t k = 0; k < fs.size(); ++k) os << srcs[k] << ": " << to_string(r.top[k]) << "\n";
            os << (r.all_equal ? "all equal" : "not all equal");
            emit(o, json_io::to_json(r), os.str());
        } else if (*fix) {
            if (ids.empty())
                for (int i = 1; i <= (int)acceptance::criteria().size(); ++i) ids.push_back(i);
            json arr = json::array();
            std::ostringstream os;
            bool all = true;
            for (int id : ids) {
                auto r = acceptance::run_one(id, cfg);
                all = all && r.pass;
                os << acceptance::line(r) << "\n";
                arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
            }
            emit(o, {{"criteria", arr}, {"all_pass", all}}, os.str());
            return all ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::string kind = dynamic_cast<const ConfigError*>(&e)          ? "config"
                           : dynamic_cast<const BudgetExceeded*>(&e)     ? "budget"
                           : dynamic_cast<const NonPolynomialClass*>(&e) ? "non-polynomial"
                           : dynamic_cast<const NotLogTerminal*>(&e)     ? "not-log-terminal"
                                                                         : "computation";
        if (o.as_json) {
            std::cout << json{{"error", {{"kind", kind}, {"message", e.what()}}}}.dump(2) << "\n";
        } else {
            std::cerr << "error (" << kind << "): " << e.what() << "\n";
        }
        return 1;
    }
    return 0;
}
