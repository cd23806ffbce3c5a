#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "qprob/catalog.hpp"
#include "qprob/gamble.hpp"
#include "qprob/io.hpp"
#include "qprob/lattice.hpp"
#include "qprob/polytope.hpp"
#include "qprob/projgeom.hpp"
#include "qprob/random.hpp"
#include "qprob/version.hpp"
#include "qprob/witness.hpp"

namespace qp::cli {

namespace {

using io::json;

// 12 significant digits
json num(double x) {
    if (!std::isfinite(x)) return json(nullptr);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return json(std::strtod(buf, nullptr));
}

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

json cnum(cplx z) { return json::array({num(z.real()), num(z.imag())}); }

// phase fixed so the first clearly non-zero entry is real and positive
Vec<cplx> fix_phase(Vec<cplx> v) {
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-9) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i).imag()) < 1e-15) v(i).imag(0);
        if (std::abs(v(i).real()) < 1e-15) v(i).real(0);
    }
    return v;
}

json vec_out(const Vec<cplx>& v) {
    bool real = true;
    for (int i = 0; i < v.size(); ++i) real &= std::abs(v(i).imag()) < 1e-15;
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(real ? num(v(i).real()) : cnum(v(i)));
    return a;
}

json mat_out(const Mat<cplx>& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(cnum(m(i, j)));
        a.push_back(row);
    }
    return a;
}

json rat(const Rational& r, bool exact) {
    if (!exact) return num(to_double(r));
    return json{{"exact", to_string(r)}, {"float", num(to_double(r))}};
}

struct Outcome {
    json result;
    int code = ok;
    std::string csv;  // empty when the command has no tabular form
};

struct Common {
    std::string out;
    std::string format = "json";
    std::string mode = "exact";
    std::uint64_t seed = 0;
};

gamble::OrthoGraph load_graph(const std::string& path) {
    json j = io::load_file(path);
    return io::read_graph(io::Field(j, path));
}

int node(const gamble::OrthoGraph& g, const std::string& label) {
    auto i = g.find(label);
    if (!i) throw InvalidInput("unknown node \"" + label + "\"");
    return *i;
}

std::string designated_or(const gamble::OrthoGraph& g, const std::string& given, const std::string& role) {
    if (!given.empty()) return given;
    auto it = g.designated.find(role);
    if (it == g.designated.end()) throw InvalidInput("no --" + role + " given and the graph designates none");
    return it->second;
}

gamble::LinearForm objective_form(const gamble::OrthoGraph& g, const std::string& text) {
    gamble::LinearForm f;
    for (const auto& t : parse_objective(text)) f.push_back({node(g, t.label), parse_rational(t.coef)});
    return f;
}

std::vector<gamble::LinearConstraint> fixes(const gamble::OrthoGraph& g, const std::vector<std::string>& specs) {
    std::vector<gamble::LinearConstraint> out;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw InvalidInput("--fix expects node=p/q, got \"" + s + "\"");
        gamble::LinearConstraint c;
        c.terms = {{node(g, s.substr(0, eq)), Rational(1)}};
        c.sense = lp::Sense::eq;
        c.rhs = parse_rational(s.substr(eq + 1));
        out.push_back(c);
    }
    return out;
}

std::vector<Rational> load_assignment(const gamble::OrthoGraph& g, const std::string& path) {
    json j = io::load_file(path);
    io::Field f(j, path);
    io::Field a = f.has("assignment") ? f["assignment"] : f;
    if (!a.value().is_object()) a.fail("expected an object mapping node labels to probabilities");
    std::vector<Rational> p(g.size(), Rational(0));
    std::vector<char> seen(g.size(), 0);
    for (auto it = a.value().begin(); it != a.value().end(); ++it) {
        auto i = g.find(it.key());
        if (!i) a[it.key()].fail("unknown node \"" + it.key() + "\"");
        p[*i] = a[it.key()].rational();
        seen[*i] = 1;
    }
    for (int i = 0; i < g.size(); ++i)
        if (!seen[i]) throw InvalidInput("assignment misses node \"" + g.label(i) + "\"");
    return p;
}

json assignment_json(const gamble::OrthoGraph& g, const std::vector<Rational>& p, bool exact) {
    json a = json::object();
    for (int i = 0; i < g.size(); ++i) a[g.label(i)] = exact ? json(to_string(p[i])) : num(to_double(p[i]));
    return a;
}

Vec<cplx> vector_arg(const std::string& text, const std::string& name) {
    json j = io::parse_text(text, "--" + name);
    return io::read_vector(io::Field(j, "--" + name));
}

lattice::FiniteOrtholattice builtin_lattice(const std::string& name) {
    auto tail = [&](size_t k) {
        try {
            return std::stoi(name.substr(k));
        } catch (...) {
            throw InvalidInput("unknown builtin lattice \"" + name + "\"");
        }
    };
    if (name.rfind("boolean", 0) == 0) return lattice::boolean_algebra(tail(7));
    if (name.rfind("mo", 0) == 0) return lattice::mo(tail(2));
    if (name.rfind("fp", 0) == 0) return lattice::subspace_lattice_over_prime_field(tail(2));
    throw InvalidInput("unknown builtin lattice \"" + name + "\" (boolean<n>, mo<n>, fp<p>)");
}

polytope::EventScheme load_scheme(const std::string& path) {
    if (path == "ch") return polytope::ch_scheme();
    json j = io::load_file(path);
    return io::read_scheme(io::Field(j, path));
}

std::string csv_rationals(const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
}

json setup_json(const polytope::QuantumSetup& s) {
    return json{{"a1", vec_out(fix_phase(s.a1.vector()))},
                {"a2", vec_out(fix_phase(s.a2.vector()))},
                {"b1", vec_out(fix_phase(s.b1.vector()))},
                {"b2", vec_out(fix_phase(s.b2.vector()))},
                {"W", mat_out(s.W.matrix())}};
}

std::vector<Rational> exact_point(const std::vector<double>& p) {
    std::vector<Rational> q;
    for (double x : p) q.push_back(rational_from_double(x));
    return q;
}

// ---- subcommands ----------------------------------------------------------

struct LatticeArgs {
    std::string file, builtin;
    std::vector<std::string> axioms;
};

Outcome lattice_check(const LatticeArgs& a) {
    if (a.file.empty() == a.builtin.empty()) throw InvalidInput("give exactly one of --lattice and --builtin");
    auto L = [&] {
        if (!a.builtin.empty()) return builtin_lattice(a.builtin);
        json j = io::load_file(a.file);
        return io::read_lattice(io::Field(j, a.file));
    }();
    std::vector<lattice::Axiom> which;
    for (const auto& id : a.axioms) {
        auto ax = lattice::parse_axiom(id);
        if (!ax) throw InvalidInput("unknown axiom \"" + id + "\"");
        which.push_back(*ax);
    }
    if (which.empty()) which = lattice::all_axioms();
    json reports = json::array(), failed = json::array();
    for (auto ax : which) {
        auto r = lattice::check_axiom(L, ax);
        json e{{"axiom", lattice::axiom_id(ax)}, {"holds", r.holds}, {"counterexample", r.counterexample}};
        if (!r.note.empty()) e["note"] = r.note;
        if (!r.holds) {
            e["reverified"] = lattice::violates(L, ax, r.witness);
            failed.push_back(lattice::axiom_id(ax));
        }
        reports.push_back(e);
    }
    return {json{{"elements", L.size()}, {"axioms", reports}, {"failed", failed}}};
}

struct HarmonicArgs {
    std::string x, y, z, u, v;
};

template <class S>
Ray<S> to_ray(const Vec<cplx>& v) {
    if constexpr (is_complex_v<S>)
        return Ray<S>(v);
    else
        return Ray<S>(Vec<double>(v.real()));
}

template <class S>
Outcome harmonic_impl(const HarmonicArgs& a, std::uint64_t seed) {
    Ray<S> x = to_ray<S>(vector_arg(a.x, "x")), y = to_ray<S>(vector_arg(a.y, "y")), z = to_ray<S>(vector_arg(a.z, "z"));
    projgeom::HarmonicInput<S> in = (a.u.empty() && a.v.empty())
                                        ? projgeom::default_input(x, y, z, seed)
                                        : projgeom::HarmonicInput<S>{x, y, z, to_ray<S>(vector_arg(a.u, "u")),
                                                                     to_ray<S>(vector_arg(a.v, "v"))};
    if (a.u.empty() != a.v.empty()) throw InvalidInput("give both --u and --v or neither");
    Ray<S> w = projgeom::harmonic_conjugate(in);
    S cr = projgeom::cross_ratio(x, y, z, w);
    Vec<cplx> wc = w.vector().template cast<cplx>();
    json r{{"conjugate", vec_out(fix_phase(wc))},
           {"cross_ratio", is_complex_v<S> ? cnum(cplx(cr)) : num(re(cr))},
           {"u", vec_out(fix_phase(in.u.vector().template cast<cplx>()))},
           {"v", vec_out(fix_phase(in.v.vector().template cast<cplx>()))},
           {"field", is_complex_v<S> ? "complex" : "real"}};
    return {r};
}

bool has_imag(const std::string& text, const std::string& name) {
    if (text.empty()) return false;
    Vec<cplx> v = vector_arg(text, name);
    return (v.imag().array() != 0).any();
}

Outcome harmonic(const HarmonicArgs& a, std::uint64_t seed) {
    bool complex = has_imag(a.x, "x") || has_imag(a.y, "y") || has_imag(a.z, "z") || has_imag(a.u, "u") ||
                   has_imag(a.v, "v");
    return complex ? harmonic_impl<cplx>(a, seed) : harmonic_impl<double>(a, seed);
}

struct SolerArgs {
    std::string x, y, field = "both";
    int samples = 100;
};

template <class S>
json soler_batch(int samples, std::uint64_t seed, bool& all) {
    double worst = 0;
    int holds = 0;
    for (int i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        Vec<S> x = random_ray<S>(3, rng).vector(), y = gaussian_vector<S>(3, rng);
        y -= x * x.dot(y);
        auto c = projgeom::check_soler_pair(Ray<S>(x), Ray<S>(y), derive_seed(seed, 1000000 + i));
        worst = std::max(worst, c.overlap);
        holds += c.holds;
    }
    all &= holds == samples;
    return json{{"pairs", samples}, {"holds", holds}, {"max_overlap", num(worst)}};
}

Outcome soler_check(const SolerArgs& a, std::uint64_t seed) {
    if (!a.x.empty() || !a.y.empty()) {
        if (a.x.empty() || a.y.empty()) throw InvalidInput("give both --x and --y or neither");
        Vec<cplx> x = vector_arg(a.x, "x"), y = vector_arg(a.y, "y");
        auto c = projgeom::check_soler_pair(Ray<cplx>(x), Ray<cplx>(y), seed);
        return {json{{"z", vec_out(fix_phase(c.z.vector()))},
                     {"conjugate", vec_out(fix_phase(c.conjugate.vector()))},
                     {"overlap", num(c.overlap)},
                     {"holds", c.holds}}};
    }
    if (a.samples < 1) throw InvalidInput("--samples must be positive");
    if (a.field != "real" && a.field != "complex" && a.field != "both")
        throw InvalidInput("--field must be real, complex or both");
    json r;
    bool all = true;
    if (a.field != "complex") r["real"] = soler_batch<double>(a.samples, derive_seed(seed, 1), all);
    if (a.field != "real") r["complex"] = soler_batch<cplx>(a.samples, derive_seed(seed, 2), all);
    r["holds"] = all;
    return {r};
}

struct GambleArgs {
    std::string graph, objective;
    std::vector<std::string> fix;
    bool minimize = false;
};

Outcome gamble_solve(const GambleArgs& a, bool exact) {
    auto g = load_graph(a.graph);
    g.validate();
    auto form = objective_form(g, a.objective);
    auto res = gamble::state_lp(g, form, fixes(g, a.fix), !a.minimize);
    json r{{"objective", a.objective}, {"sense", a.minimize ? "min" : "max"}};
    if (res.status == lp::Status::infeasible) {
        r["verdict"] = "infeasible";
        r["farkas"] = io::rationals(res.raw.y);
        r["certificate_verified"] = lp::verify_farkas(res.problem, res.raw.y);
        return {r, infeasible};
    }
    r["verdict"] = "optimal";
    r["optimum"] = rat(res.value, exact);
    r["assignment"] = assignment_json(g, res.assignment, exact);
    r["certificate_verified"] = lp::verify_optimal(res.problem, res.raw);
    std::string why;
    r["state_verified"] = gamble::verify_state(g, res.assignment, &why);
    auto ctx = gamble::enumerate_contexts(g);
    r["contexts"] = {{"full", ctx.full.size()}, {"partial", ctx.partial.size()}};
    if (exact) r["duals"] = io::rationals(res.raw.y);
    return {r};
}

struct PairArgs {
    std::string graph, x, y;
};

Outcome indeterminacy(const PairArgs& a, bool exact) {
    auto g = load_graph(a.graph);
    g.validate();
    std::string xl = designated_or(g, a.x, "x"), yl = designated_or(g, a.y, "z");
    int x = node(g, xl), y = node(g, yl);
    json r{{"x", xl}, {"y", yl}};
    auto both = gamble::two_valued_search(g, {{x, 1}, {y, 1}});
    r["two_valued_with_both_one"] = both.has_value();
    r["two_valued_with_x_one"] = gamble::two_valued_search(g, {{x, 1}}).has_value();
    try {
        auto iv = gamble::indeterminacy_range(g, x, y);
        r["verdict"] = "feasible";
        r["range"] = {rat(iv.lo, exact), rat(iv.hi, exact)};
        return {r};
    } catch (const Infeasible& e) {
        r["verdict"] = "infeasible";
        r["reason"] = e.what();
        return {r, infeasible};
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct FrameArgs {
    std::string graph, target, zero, bound = "1";
};

Outcome frame_bound(const FrameArgs& a, bool exact) {
    auto g = load_graph(a.graph);
    g.validate();
    gamble::FrameProblem p;
    p.graph = &g;
    std::string t = designated_or(g, a.target, "z");
    p.target = node(g, t);
    for (const auto& z : split_list(a.zero)) p.zero_nodes.push_back(node(g, z));
    p.bound = parse_rational(a.bound);
    auto fb = gamble::frame_lp(p);
    return {json{{"target", t},
                 {"bound", rat(fb.value, exact)},
                 {"range", {rat(fb.lo, exact), rat(fb.hi, exact)}},
                 {"constant_forced_zero", fb.constant_forced_zero},
                 {"constant", rat(fb.constant, exact)},
                 {"argmax", assignment_json(g, fb.argmax, exact)}}};
}

struct WonderArgs {
    std::string target = "z";
    int k = 1;
};

Outcome wonder(const WonderArgs& a, bool exact) {
    auto res = gamble::wonder_iterate([](const std::string& n) { return catalog::halving_gadget(n); }, a.target, a.k,
                                      catalog::frame_zero_labels());
    json levels = json::array();
    for (const auto& l : res.levels)
        levels.push_back({{"k", l.k}, {"nodes", l.nodes}, {"contexts", l.contexts}, {"bound", rat(l.bound, exact)}});
    return {json{{"target", a.target}, {"k", a.k}, {"bound", rat(res.bound, exact)}, {"levels", levels},
                 {"gadget", "abstract halving gadget (not realized)"}}};
}

struct ExtendArgs {
    std::string graph, state, target_graph;
    int rounds = 3;
};

Outcome extend(const ExtendArgs& a, bool exact) {
    auto g0 = load_graph(a.graph);
    g0.validate();
    auto p0 = load_assignment(g0, a.state);
    gamble::OrthoGraph g = a.target_graph.empty() ? gamble::closure(g0, a.rounds) : load_graph(a.target_graph);
    auto res = gamble::extend_state(g0, p0, g);
    json r{{"nodes", g.size()}, {"source_nodes", g0.size()}};
    if (a.target_graph.empty()) r["closure_rounds"] = a.rounds;
    if (res.feasible) {
        r["verdict"] = "extends";
        r["assignment"] = assignment_json(g, res.assignment, exact);
        r["state_verified"] = gamble::verify_state(g, res.assignment);
        return {r};
    }
    r["verdict"] = "no-extension";
    r["farkas"] = io::rationals(res.farkas);
    r["certificate_verified"] = lp::verify_farkas(res.problem, res.farkas);
    return {r, infeasible};
}

struct FitArgs {
    std::string graph, state;
    int iterations = 20000;
};

Outcome fit(const FitArgs& a, std::uint64_t seed, bool exact) {
    auto g = load_graph(a.graph);
    g.validate();
    auto p = load_assignment(g, a.state);
    std::vector<double> pd;
    for (const auto& x : p) pd.push_back(to_double(x));
    auto f = gamble::fit_quantum_state(g, pd, seed, a.iterations);
    json r{{"W", mat_out(f.W.matrix())}, {"deviation", num(f.deviation)}, {"iterations", f.iterations}};
    r["born"] = nums(gamble::born_assignment(g, f.W));
    if (exact) r["state_distance"] = rat(gamble::state_distance(g, p), true);
    return {r};
}

Outcome polytope_vertices(const std::string& scheme) {
    auto P = polytope::vertices(load_scheme(scheme));
    std::string csv;
    for (const auto& v : P.vertices) {
        for (size_t i = 0; i < v.size(); ++i) csv += (i ? "," : "") + std::to_string(v[i]);
        csv += "\n";
    }
    return {json{{"scheme", io::scheme_json(P.scheme)}, {"count", P.vertices.size()}, {"vertices", P.vertices}}, ok,
            csv};
}

Outcome polytope_facets(const std::string& scheme) {
    auto P = polytope::vertices(load_scheme(scheme));
    try {
        auto F = polytope::facets(P);
        json list = json::array();
        std::string csv = "coeffs,lo,hi\n";
        for (const auto& f : F) {
            list.push_back(io::inequality_json(f));
            csv += "\"" + csv_rationals(f.coeffs) + "\"," + (f.lo ? to_string(*f.lo) : "") + "," +
                   (f.hi ? to_string(*f.hi) : "") + "\n";
        }
        return {json{{"scheme", io::scheme_json(P.scheme)}, {"vertices", P.vertices.size()}, {"count", F.size()},
                     {"facets", list}},
                ok, csv};
    } catch (const polytope::DegeneratePolytope& e) {
        json hull = json::array();
        for (const auto& h : e.affine_hull()) hull.push_back(io::inequality_json(h));
        return {json{{"verdict", "degenerate"}, {"message", e.what()}, {"affine_hull", hull}}, invalid};
    }
}

Outcome polytope_member(const std::string& scheme, const std::string& point) {
    auto P = polytope::vertices(load_scheme(scheme));
    json j = io::load_file(point);
    io::Field f(j, point);
    auto p = io::read_rationals(f.has("point") ? f["point"] : f);
    auto m = polytope::membership(p, P);
    json r{{"point", io::rationals(p)}};
    if (m.inside) {
        r["verdict"] = "inside";
        r["weights"] = io::rationals(m.weights);
        return {r};
    }
    r["verdict"] = "outside";
    r["separator"] = io::inequality_json(*m.separator);
    r["separator_verified"] = polytope::separates(*m.separator, P, p);
    return {r, infeasible};
}

polytope::QuantumSetup load_setup(const std::string& path) {
    json j = io::load_file(path);
    io::Field f(j, path);
    auto ray = [&](const char* k) { return Ray<cplx>(io::read_vector(f[k])); };
    auto W = f.has("W") ? DensityOperator<cplx>(io::read_matrix(f["W"]))
                        : DensityOperator<cplx>::pure(Ray<cplx>(io::read_vector(f["psi"])));
    return {ray("a1"), ray("a2"), ray("b1"), ray("b2"), W};
}

Outcome quantum_point(const std::string& setup) {
    auto s = load_setup(setup);
    auto p = polytope::quantum_point(s);
    std::string csv = "x1,x2,y1,y2,x1y1,x1y2,x2y1,x2y2\n";
    for (size_t i = 0; i < p.size(); ++i) {
        char b[32];
        std::snprintf(b, sizeof b, "%.12g", p[i]);
        csv += (i ? "," : "") + std::string(b);
    }
    csv += "\n";
    return {json{{"point", nums(p)}, {"ch_value", num(polytope::ch_value(p))}}, ok, csv};
}

Outcome ch_value(const std::string& point, const std::string& values, bool exact) {
    if (point.empty() == values.empty()) throw InvalidInput("give exactly one of --point and --values");
    std::vector<Rational> p;
    if (!values.empty()) {
        for (const auto& s : split_list(values)) p.push_back(parse_rational(s));
    } else {
        json j = io::load_file(point);
        io::Field f(j, point);
        p = io::read_rationals(f.has("point") ? f["point"] : f);
    }
    Rational v = polytope::ch_value(p);
    return {json{{"value", rat(v, exact)}, {"classical_range", v >= -1 && v <= 0}}};
}

struct ViolationArgs {
    int restarts = 64;
    bool product_only = false;
};

Outcome maximize_violation(const ViolationArgs& a, std::uint64_t seed) {
    polytope::ViolationOptions o;
    o.restarts = a.restarts;
    o.seed = seed;
    o.product_only = a.product_only;
    auto v = polytope::maximize_violation(o);
    auto P = polytope::vertices(polytope::ch_scheme());
    auto q = exact_point(v.point);
    auto m = polytope::membership(q, P);
    json r{{"value", num(v.value)}, {"best_restart", v.best_restart}, {"point", nums(v.point)},
           {"setup", setup_json(v.setup)}, {"template", a.product_only ? "product" : "pure"}};
    r["membership"] = m.inside ? json{{"verdict", "inside"}}
                               : json{{"verdict", "outside"},
                                      {"separator", io::inequality_json(*m.separator)},
                                      {"separator_verified", polytope::separates(*m.separator, P, q)}};
    return {r};
}

struct WitnessArgs {
    std::string state;
    int ghz = 0;
    bool survey = false;
};

Outcome witness_estimate(const WitnessArgs& a, std::uint64_t seed) {
    if (a.state.empty() == (a.ghz == 0)) throw InvalidInput("give exactly one of --state and --ghz");
    witness::NQubitRay x = [&] {
        if (a.ghz) return witness::ghz(a.ghz);
        json j = io::load_file(a.state);
        Vec<cplx> v = io::read_vector(io::Field(j, a.state));
        int n = 0;
        while ((1L << n) < v.size()) ++n;
        return witness::NQubitRay(n, Ray<cplx>(v));
    }();
    auto fam = a.survey ? witness::FamilyOptions::survey() : witness::FamilyOptions{};
    fam.seed = seed;
    auto e = witness::entanglement_estimate(x, fam);
    json r{{"n", x.n},
           {"family", fam.describe()},
           {"estimate", num(e.value)},
           {"mk", {{"value", num(e.mk_value)}, {"expectation", num(e.mk_raw)}, {"separable_sup", num(e.mk_sup)}}},
           {"projector", {{"value", num(e.projector_value)}, {"certified", e.projector_certified}}},
           {"kind", "lower bound over the family"}};
    return {r};
}

struct ConjArgs {
    std::string range = "4..8";
    double C = 1;
    int samples = 10000;
};

Outcome conjecture(const ConjArgs& a, std::uint64_t seed) {
    auto dots = a.range.find("..");
    if (dots == std::string::npos) throw InvalidInput("--n-range expects lo..hi");
    int lo, hi;
    try {
        lo = std::stoi(a.range.substr(0, dots));
        hi = std::stoi(a.range.substr(dots + 2));
    } catch (...) {
        throw InvalidInput("--n-range expects lo..hi");
    }
    auto rep = witness::conjecture_experiment(lo, hi, a.C, a.samples, seed);
    json recs = json::array();
    for (const auto& r : rep.records)
        recs.push_back({{"n", r.n},
                        {"samples", r.samples},
                        {"C", num(r.C)},
                        {"threshold", num(r.threshold)},
                        {"exceed_fraction", num(r.exceed_fraction)},
                        {"mean_estimate", num(r.mean_estimate)},
                        {"seed", r.seed}});
    return {json{{"records", recs},
                 {"family", rep.family},
                 {"seed", rep.seed},
                 {"non_increasing", rep.non_increasing},
                 {"trend_slope", num(rep.trend_slope)}},
            ok, witness::to_csv(rep)};
}

json config_echo(CLI::App* sub, const Common& c) {
    json args = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        if (o->count() == 0 || o->get_name() == "--help") continue;
        std::string name = o->get_name();
        auto res = o->results();
        if (o->get_expected_max() == 0)
            args[name] = true;
        else if (res.size() == 1 && o->get_items_expected_max() <= 1)
            args[name] = res[0];
        else
            args[name] = res;
    }
    return json{{"command", sub->get_name()},
                {"seed", c.seed},
                {"mode", c.mode},
                {"format", c.format},
                {"output", c.out.empty() ? json(nullptr) : json(c.out)},
                {"tolerances",
                 {{"subspace", tol::subspace}, {"normalization", tol::normalization}, {"orthogonality", gamble::orthogonality_tol}}},
                {"caps", {{"closure_nodes", 10000}, {"vertex_n", 20}, {"facet_vertices", 64}, {"facet_dimension", 12}, {"haar_scalars", 1e8}}},
                {"args", args}};
}

json versions() {
    return json{{"core", version::core},         {"lattice", version::lattice}, {"projgeom", version::projgeom},
                {"gamble", version::gamble},     {"polytope", version::polytope}, {"witness", version::witness},
                {"cli", version::cli}};
}

void emit(const std::string& text, const std::string& command, const Common& c, std::ostream& out) {
    std::string path = c.out;
    if (path.empty())
        if (const char* dir = std::getenv("QPROB_OUT_DIR"); dir && *dir)
            path = std::string(dir) + "/" + command + (c.format == "csv" ? ".csv" : ".json");
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    f << text;
}

}  // namespace

std::vector<Term> parse_objective(const std::string& text) {
    // split on top-level signs; a term is [coef "*"] label
    std::vector<std::pair<bool, std::string>> raw;
    bool neg = false;
    std::string cur;
    bool started = false;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '+' || ch == '-') {
            if (!cur.empty()) raw.push_back({neg, cur});
            else if (started) throw InvalidInput("objective: empty term in \"" + text + "\"");
            neg = ch == '-';
            cur.clear();
            started = true;
            continue;
        }
        cur += ch;
        started = true;
    }
    if (cur.empty()) throw InvalidInput("objective: empty term in \"" + text + "\"");
    raw.push_back({neg, cur});

    std::vector<Term> out;
    for (auto& [minus, t] : raw) {
        Term term{t, "1"};
        if (auto star = t.find('*'); star != std::string::npos) {
            term.coef = t.substr(0, star);
            term.label = t.substr(star + 1);
            try {
                parse_rational(term.coef);
            } catch (const Error&) {
                throw InvalidInput("objective: bad coefficient \"" + term.coef + "\"");
            }
        }
        if (term.label.empty() || term.label.find('*') != std::string::npos)
            throw InvalidInput("objective: bad term \"" + t + "\"");
        if (minus) term.coef = "-" + term.coef;
        out.push_back(term);
    }
    return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum probability workbench", "qprob"};
    app.require_subcommand(1);
    Common c;
    std::function<Outcome()> action;

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "master seed")->capture_default_str();
        s->add_option("--out", c.out, "report path");
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--mode", c.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    };
    auto exact = [&] { return c.mode == "exact"; };

    LatticeArgs la;
    auto* s = app.add_subcommand("lattice-check", "check the orthomodular-lattice axioms");
    s->add_option("--lattice", la.file, "lattice JSON file");
    s->add_option("--builtin", la.builtin, "boolean<n>, mo<n> or fp<p>");
    s->add_option("--axiom", la.axioms, "axiom ids to check (default all)");
    common(s);
    s->callback([&] { action = [&] { return lattice_check(la); }; });

    HarmonicArgs ha;
    s = app.add_subcommand("harmonic", "harmonic conjugate by joins and meets");
    s->add_option("--x", ha.x)->required();
    s->add_option("--y", ha.y)->required();
    s->add_option("--z", ha.z)->required();
    s->add_option("--u", ha.u);
    s->add_option("--v", ha.v);
    common(s);
    s->callback([&] { action = [&] { return harmonic(ha, c.seed); }; });

    SolerArgs sa;
    s = app.add_subcommand("soler-check", "bisector check H(z; x, y) ⊥ z for orthogonal pairs");
    s->add_option("--x", sa.x);
    s->add_option("--y", sa.y);
    s->add_option("--samples", sa.samples);
    s->add_option("--field", sa.field)->check(CLI::IsMember({"real", "complex", "both"}));
    common(s);
    s->callback([&] { action = [&] { return soler_check(sa, c.seed); }; });

    GambleArgs ga;
    s = app.add_subcommand("gamble-solve", "optimize a linear objective over the states of a graph");
    s->add_option("--graph", ga.graph)->required();
    s->add_option("--objective", ga.objective)->required();
    s->add_option("--fix", ga.fix, "node=p/q");
    s->add_flag("--minimize", ga.minimize);
    common(s);
    s->callback([&] { action = [&] { return gamble_solve(ga, exact()); }; });

    PairArgs pa;
    s = app.add_subcommand("indeterminacy", "range of P(y) given P(x) = 1");
    s->add_option("--graph", pa.graph)->required();
    s->add_option("--x", pa.x);
    s->add_option("--y", pa.y);
    common(s);
    s->callback([&] { action = [&] { return indeterminacy(pa, exact()); }; });

    FrameArgs fa;
    s = app.add_subcommand("frame-bound", "max |f(target)| over bounded frame functions");
    s->add_option("--graph", fa.graph)->required();
    s->add_option("--target", fa.target);
    s->add_option("--zero", fa.zero, "comma-separated nodes pinned to 0");
    s->add_option("--bound", fa.bound);
    common(s);
    s->callback([&] { action = [&] { return frame_bound(fa, exact()); }; });

    WonderArgs wa;
    s = app.add_subcommand("wonder-iterate", "iterate the halving gadget k times");
    s->add_option("--target", wa.target);
    s->add_option("--k", wa.k)->required();
    common(s);
    s->callback([&] { action = [&] { return wonder(wa, exact()); }; });

    ExtendArgs ea;
    s = app.add_subcommand("extend-state", "extend a state to a larger graph");
    s->add_option("--graph", ea.graph)->required();
    s->add_option("--state", ea.state)->required();
    s->add_option("--target-graph", ea.target_graph);
    s->add_option("--closure-rounds", ea.rounds);
    common(s);
    s->callback([&] { action = [&] { return extend(ea, exact()); }; });

    FitArgs fi;
    s = app.add_subcommand("fit-state", "nearest Born assignment to a state");
    s->add_option("--graph", fi.graph)->required();
    s->add_option("--state", fi.state)->required();
    s->add_option("--iterations", fi.iterations);
    common(s);
    s->callback([&] { action = [&] { return fit(fi, c.seed, exact()); }; });

    std::string scheme, point, values, setup;
    s = app.add_subcommand("polytope-vertices", "truth-table vertices");
    s->add_option("--scheme", scheme)->required();
    common(s);
    s->callback([&] { action = [&] { return polytope_vertices(scheme); }; });

    s = app.add_subcommand("polytope-facets", "facets by double description");
    s->add_option("--scheme", scheme)->required();
    common(s);
    s->callback([&] { action = [&] { return polytope_facets(scheme); }; });

    s = app.add_subcommand("polytope-member", "exact membership with a separating inequality");
    s->add_option("--scheme", scheme)->required();
    s->add_option("--point", point)->required();
    common(s);
    s->callback([&] { action = [&] { return polytope_member(scheme, point); }; });

    s = app.add_subcommand("quantum-point", "Born probabilities of a two-qubit setup");
    s->add_option("--setup", setup)->required();
    common(s);
    s->callback([&] { action = [&] { return quantum_point(setup); }; });

    s = app.add_subcommand("ch-value", "evaluate the CH expression");
    s->add_option("--point", point);
    s->add_option("--values", values, "comma-separated coordinates");
    common(s);
    s->callback([&] { action = [&] { return ch_value(point, values, exact()); }; });

    ViolationArgs va;
    s = app.add_subcommand("maximize-violation", "seeded multi-start CH maximization");
    s->add_option("--restarts", va.restarts);
    s->add_flag("--product-only", va.product_only);
    common(s);
    s->callback([&] { action = [&] { return maximize_violation(va, c.seed); }; });

    WitnessArgs wi;
    s = app.add_subcommand("witness-estimate", "lower bound on the witness value of a ray");
    s->add_option("--state", wi.state, "JSON vector of length 2^n");
    s->add_option("--ghz", wi.ghz, "use the n-qubit GHZ ray");
    s->add_flag("--survey", wi.survey, "cheaper family settings");
    common(s);
    s->callback([&] { action = [&] { return witness_estimate(wi, c.seed); }; });

    ConjArgs ca;
    s = app.add_subcommand("conjecture-run", "Monte Carlo exceed fractions over Haar rays");
    s->add_option("--n-range", ca.range);
    s->add_option("--constant-C", ca.C);
    s->add_option("--samples", ca.samples);
    common(s);
    s->callback([&] { action = [&] { return conjecture(ca, c.seed); }; });

    std::vector<std::string> rev(args_in.rbegin(), args_in.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "qprob: " << e.what() << "\n";
        return usage;
    }
    CLI::App* sub = app.get_subcommands().front();
    try {
        Outcome o = action();
        if (c.format == "csv") {
            if (o.csv.empty()) throw InvalidInput(sub->get_name() + " has no CSV form");
            emit(o.csv, sub->get_name(), c, out);
        } else {
            json report{{"schema_version", version::schema},
                        {"config", config_echo(sub, c)},
                        {"versions", versions()},
                        {"status", o.code == ok ? "ok" : o.code == infeasible ? "infeasible" : "invalid"},
                        {"result", o.result}};
            emit(report.dump(2) + "\n", sub->get_name(), c, out);
        }
        return o.code;
    } catch (const ParseError& e) {
        err << "qprob: malformed input: " << e.what() << "\n";
        return malformed;
    } catch (const InvalidInput& e) {
        err << "qprob: invalid input: " << e.what() << "\n";
        return invalid;
    } catch (const Infeasible& e) {
        err << "qprob: infeasible: " << e.what() << "\n";
        return infeasible;
    } catch (const Error& e) {
        err << "qprob: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qp::cli
