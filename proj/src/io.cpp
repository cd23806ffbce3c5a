#include "qprob/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qp::io {

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

bool Field::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Field Field::operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) throw ParseError(path_ + ": missing field \"" + key + "\"");
    return Field(*it, path_ + "." + key);
}

Field Field::operator[](size_t i) const {
    if (!j_->is_array()) fail("expected an array");
    if (i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
    return Field((*j_)[i], path_ + "[" + std::to_string(i) + "]");
}

size_t Field::size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
}

void Field::fail(const std::string& msg) const { throw ParseError(path_ + ": " + msg); }

std::string Field::str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
}

long Field::integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<long>();
}

double Field::number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
}

Rational Field::rational() const {
    try {
        if (j_->is_string()) return parse_rational(j_->get<std::string>());
        if (j_->is_number_integer()) return parse_rational(std::to_string(j_->get<long>()));
        if (j_->is_number_float()) {
            // shortest round-trip decimal, read exactly
            char buf[64];
            auto r = std::to_chars(buf, buf + sizeof buf, j_->get<double>());
            std::string s(buf, r.ptr);
            if (s.find('e') != std::string::npos) return rational_from_double(j_->get<double>());
            return parse_rational(s);
        }
    } catch (const ParseError& e) {
        fail(e.what());
    }
    fail("expected a rational (\"p/q\", integer or decimal)");
}

cplx Field::complex() const {
    if (j_->is_number()) return {j_->get<double>(), 0.0};
    if (j_->is_array() && j_->size() == 2 && (*j_)[0].is_number() && (*j_)[1].is_number())
        return {(*j_)[0].get<double>(), (*j_)[1].get<double>()};
    fail("expected a number or [re, im]");
}

json to_json(const Rational& r) { return qp::to_string(r); }

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_json(r));
    return a;
}

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json vector_json(const Vec<cplx>& v) {
    bool real = (v.imag().array() == 0).all();
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(real ? json(v(i).real()) : to_json(v(i)));
    return a;
}

json matrix_json(const Mat<cplx>& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

std::vector<Rational> read_rationals(const Field& f) {
    std::vector<Rational> out;
    for (size_t i = 0; i < f.size(); ++i) out.push_back(f[i].rational());
    return out;
}

std::vector<double> read_numbers(const Field& f) {
    std::vector<double> out;
    for (size_t i = 0; i < f.size(); ++i) {
        Field e = f[i];
        out.push_back(e.value().is_string() ? to_double(e.rational()) : e.number());
    }
    return out;
}

Vec<cplx> read_vector(const Field& f) {
    Vec<cplx> v(static_cast<int>(f.size()));
    for (size_t i = 0; i < f.size(); ++i) v(static_cast<int>(i)) = f[i].complex();
    return v;
}

Mat<cplx> read_matrix(const Field& f) {
    const size_t r = f.size();
    if (r == 0) f.fail("empty matrix");
    const size_t c = f[0].size();
    Mat<cplx> m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (f[i].size() != c) f[i].fail("ragged matrix row");
        for (size_t j = 0; j < c; ++j) m(i, j) = f[i][j].complex();
    }
    return m;
}

json graph_json(const gamble::OrthoGraph& g) {
    json j;
    j["dimension"] = g.dimension();
    j["nodes"] = g.labels();
    json e = json::array();
    for (auto [a, b] : g.edges()) e.push_back({g.label(a), g.label(b)});
    j["edges"] = e;
    if (g.realized()) {
        json r = json::array();
        for (const auto& v : g.realization()) r.push_back(vector_json(v));
        j["realization"] = r;
    }
    if (!g.designated.empty()) j["designated"] = g.designated;
    if (!g.metadata.empty()) j["metadata"] = g.metadata;
    return j;
}

gamble::OrthoGraph read_graph(const Field& f) {
    long d = f["dimension"].integer();
    if (d < 1 || d > 64) f["dimension"].fail("dimension must be between 1 and 64");
    gamble::OrthoGraph g(static_cast<int>(d));
    Field nodes = f["nodes"];
    for (size_t i = 0; i < nodes.size(); ++i) {
        std::string l = nodes[i].str();
        if (g.has(l)) nodes[i].fail("duplicate node \"" + l + "\"");
        g.add_node(l);
    }
    Field edges = f["edges"];
    for (size_t i = 0; i < edges.size(); ++i) {
        Field e = edges[i];
        if (e.size() != 2) e.fail("an edge is a pair of node labels");
        std::string a = e[0].str(), b = e[1].str();
        if (!g.has(a)) e[0].fail("unknown node \"" + a + "\"");
        if (!g.has(b)) e[1].fail("unknown node \"" + b + "\"");
        if (a == b) e.fail("self loop");
        g.add_edge(a, b);
    }
    if (f.has("realization")) {
        Field r = f["realization"];
        if (r.size() != static_cast<size_t>(g.size())) r.fail("one vector per node is required");
        std::vector<Vec<cplx>> rays;
        for (size_t i = 0; i < r.size(); ++i) {
            Vec<cplx> v = read_vector(r[i]);
            if (v.size() != d) r[i].fail("vector length differs from the dimension");
            if (v.norm() == 0) r[i].fail("zero vector");
            rays.push_back(v);
        }
        g.set_realization(std::move(rays));
    }
    if (f.has("designated")) {
        Field m = f["designated"];
        if (!m.value().is_object()) m.fail("expected an object");
        for (auto it = m.value().begin(); it != m.value().end(); ++it) {
            std::string node = m[it.key()].str();
            if (!g.has(node)) m[it.key()].fail("unknown node \"" + node + "\"");
            g.designated[it.key()] = node;
        }
    }
    if (f.has("metadata")) {
        Field m = f["metadata"];
        if (!m.value().is_object()) m.fail("expected an object");
        for (auto it = m.value().begin(); it != m.value().end(); ++it)
            g.metadata[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    return g;
}

json lattice_json(const lattice::FiniteOrtholattice& L) {
    json j;
    j["elements"] = L.labels();
    json leq = json::array();
    for (auto [a, b] : L.leq_pairs())
        if (a != b) leq.push_back({L.label(a), L.label(b)});
    j["leq"] = leq;
    json comp = json::object();
    for (int i = 0; i < L.size(); ++i) comp[L.label(i)] = L.label(L.comp(i));
    j["comp"] = comp;
    j["zero"] = L.label(L.zero());
    j["one"] = L.label(L.one());
    return j;
}

lattice::FiniteOrtholattice read_lattice(const Field& f) {
    Field el = f["elements"];
    std::vector<std::string> labels;
    std::map<std::string, int> idx;
    for (size_t i = 0; i < el.size(); ++i) {
        std::string l = el[i].str();
        if (idx.count(l)) el[i].fail("duplicate element \"" + l + "\"");
        idx[l] = static_cast<int>(labels.size());
        labels.push_back(l);
    }
    const int n = static_cast<int>(labels.size());
    if (n == 0) el.fail("no elements");
    if (n > 4096) throw CapExceeded("lattice capped at 4096 elements");
    auto lookup = [&](const Field& x) {
        std::string l = x.str();
        auto it = idx.find(l);
        if (it == idx.end()) x.fail("unknown element \"" + l + "\"");
        return it->second;
    };
    // listed pairs, closed reflexively and transitively
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) leq[i][i] = 1;
    Field pairs = f["leq"];
    for (size_t i = 0; i < pairs.size(); ++i) {
        Field p = pairs[i];
        if (p.size() != 2) p.fail("expected a pair");
        leq[lookup(p[0])][lookup(p[1])] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (leq[i][k])
                for (int j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (leq[i][j] && leq[j][i]) pairs.fail("order is not antisymmetric (" + labels[i] + ", " + labels[j] + ")");
    Field comp = f["comp"];
    std::vector<int> c(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!comp.has(labels[i])) comp.fail("no complement for \"" + labels[i] + "\"");
        c[i] = lookup(comp[labels[i]]);
    }
    return lattice::FiniteOrtholattice(labels, leq, c, lookup(f["zero"]), lookup(f["one"]));
}

json scheme_json(const polytope::EventScheme& s) {
    json j;
    j["n"] = s.n;
    j["monomials"] = s.monomials;
    if (!s.names.empty()) j["names"] = s.names;
    return j;
}

polytope::EventScheme read_scheme(const Field& f) {
    polytope::EventScheme s;
    s.n = static_cast<int>(f["n"].integer());
    Field m = f["monomials"];
    for (size_t i = 0; i < m.size(); ++i) {
        std::vector<int> mono;
        for (size_t k = 0; k < m[i].size(); ++k) mono.push_back(static_cast<int>(m[i][k].integer()));
        s.monomials.push_back(mono);
    }
    if (f.has("names"))
        for (size_t i = 0; i < f["names"].size(); ++i) s.names.push_back(f["names"][i].str());
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        f.fail(e.what());
    }
    return s;
}

json inequality_json(const polytope::LinearInequality& f) {
    json j;
    j["coeffs"] = rationals(f.coeffs);
    j["lo"] = f.lo ? to_json(*f.lo) : json(nullptr);
    j["hi"] = f.hi ? to_json(*f.hi) : json(nullptr);
    return j;
}

}  // namespace qp::io
