#include "doctest.h"

#include "qprob/catalog.hpp"
#include "qprob/io.hpp"

using namespace qp;
using io::json;

namespace {

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

json data(const std::string& name) { return io::load_file(std::string(QP_SOURCE_DIR) + "/data/" + name); }

bool same_graph(const gamble::OrthoGraph& a, const gamble::OrthoGraph& b) {
    if (a.labels() != b.labels() || a.edges() != b.edges() || a.designated != b.designated) return false;
    if (a.realized() != b.realized()) return false;
    if (!a.realized()) return true;
    for (int i = 0; i < a.size(); ++i)
        if ((a.realization()[i] - b.realization()[i]).norm() > 1e-12) return false;
    return true;
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
    auto msg = error_of([] { io::parse_text("{\n  \"a\": [1,\n  }", "x.json"); });
    CHECK(msg.rfind("x.json:3:", 0) == 0);
    CHECK(error_of([] { io::load_file("/nonexistent/file.json"); }).find("cannot open") != std::string::npos);
}

TEST_CASE("field paths in diagnostics") {
    json j = json::parse(R"({"dimension": 3, "nodes": ["a", "b"], "edges": [["a", "c"]]})");
    auto msg = error_of([&] { io::read_graph(io::Field(j, "g")); });
    CHECK(msg.find("g.edges[0][1]") != std::string::npos);
    json k = json::parse(R"({"dimension": 3, "nodes": ["a", "a"], "edges": []})");
    CHECK(error_of([&] { io::read_graph(io::Field(k, "g")); }).find("duplicate") != std::string::npos);
    json m = json::parse(R"({"dimension": 3, "edges": []})");
    CHECK(error_of([&] { io::read_graph(io::Field(m, "g")); }).find("missing field \"nodes\"") != std::string::npos);
}

TEST_CASE("rationals read from strings, integers and decimals") {
    json j = json::parse(R"(["3/6", 2, 0.1, "-1/3", 1e-3])");
    auto r = io::read_rationals(io::Field(j, "p"));
    CHECK(r[0] == Rational(1, 2));
    CHECK(r[1] == 2);
    CHECK(r[2] == Rational(1, 10));
    CHECK(r[3] == Rational(-1, 3));
    CHECK(to_double(r[4]) == doctest::Approx(1e-3));
    json bad = json::parse(R"(["1/0"])");
    CHECK_THROWS_AS(io::read_rationals(io::Field(bad, "p")), ParseError);
    CHECK(io::to_json(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("complex vectors and matrices") {
    json j = json::parse(R"([1, [0, 2], -0.5])");
    auto v = io::read_vector(io::Field(j, "v"));
    CHECK(v(1) == cplx(0, 2));
    CHECK(io::read_vector(io::Field(io::vector_json(v), "w")) == v);
    json rag = json::parse(R"([[1, 2], [3]])");
    CHECK_THROWS_AS(io::read_matrix(io::Field(rag, "m")), ParseError);
}

TEST_CASE("graph round trip") {
    for (const auto& g : {catalog::cats_cradle(), catalog::ks_gamma(), catalog::halving_gadget("z")}) {
        json j = io::graph_json(g);
        CHECK(same_graph(io::read_graph(io::Field(j, "g")), g));
    }
}

TEST_CASE("lattice round trip and order closure") {
    auto L = lattice::mo(2);
    json j = io::lattice_json(L);
    auto back = io::read_lattice(io::Field(j, "L"));
    CHECK(back.labels() == L.labels());
    CHECK(back.leq_pairs() == L.leq_pairs());

    // only covering pairs listed: the reader closes them
    json chain = json::parse(
        R"({"elements": ["0", "a", "1"], "leq": [["0", "a"], ["a", "1"]], "comp": {"0": "1", "a": "a", "1": "0"},
            "zero": "0", "one": "1"})");
    auto C = io::read_lattice(io::Field(chain, "c"));
    CHECK(C.leq(C.index("0"), C.index("1")));
    json cyc = json::parse(
        R"({"elements": ["0", "a", "1"], "leq": [["a", "1"], ["1", "a"]], "comp": {"0": "1", "a": "a", "1": "0"},
            "zero": "0", "one": "1"})");
    CHECK(error_of([&] { io::read_lattice(io::Field(cyc, "c")); }).find("antisymmetric") != std::string::npos);
}

TEST_CASE("scheme round trip") {
    auto s = polytope::ch_scheme();
    json j = io::scheme_json(s);
    auto back = io::read_scheme(io::Field(j, "s"));
    CHECK(back.monomials == s.monomials);
    CHECK(back.names == s.names);
    json bad = json::parse(R"({"n": 2, "monomials": [[0], [3]]})");
    CHECK_THROWS_AS(io::read_scheme(io::Field(bad, "s")), ParseError);
}

TEST_CASE("shipped data files match the catalog") {
    CHECK(same_graph(io::read_graph(io::Field(data("cats_cradle.json"), "cc")), catalog::cats_cradle()));
    CHECK(same_graph(io::read_graph(io::Field(data("ks_gamma.json"), "ks")), catalog::ks_gamma()));
    CHECK(same_graph(io::read_graph(io::Field(data("ks_core.json"), "core")), catalog::ks_core()));
    CHECK(data("boolean3.json") == io::lattice_json(lattice::boolean_algebra(3)));
    CHECK(data("mo2.json") == io::lattice_json(lattice::mo(2)));
    CHECK(data("f3.json") == io::lattice_json(lattice::subspace_lattice_over_prime_field(3)));
    CHECK(data("ch.json") == io::scheme_json(polytope::ch_scheme()));
}
