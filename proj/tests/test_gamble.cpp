#include "doctest.h"

#include <set>

#include "qprob/catalog.hpp"
#include "qprob/gamble.hpp"
#include "qprob/random.hpp"

using namespace qp;
using namespace qp::gamble;

namespace {

LinearForm form(const OrthoGraph& g, std::vector<std::pair<std::string, Rational>> t) {
    LinearForm f;
    for (auto& [l, c] : t) f.push_back({g.index(l), c});
    return f;
}

LinearConstraint pin(const OrthoGraph& g, const std::string& l, Rational v) {
    LinearConstraint c;
    c.terms = {{g.index(l), Rational(1)}};
    c.rhs = v;
    return c;
}

// every full context sums to 1, partial ones to at most 1, entries in [0,1]
bool state_oracle(const OrthoGraph& g, const std::vector<Rational>& p) {
    for (const auto& r : p)
        if (r < 0 || r > 1) return false;
    auto ctx = enumerate_contexts(g);
    for (const auto& c : ctx.full) {
        Rational s = 0;
        for (int i : c) s += p[i];
        if (s != 1) return false;
    }
    for (const auto& c : ctx.partial) {
        Rational s = 0;
        for (int i : c) s += p[i];
        if (s > 1) return false;
    }
    return true;
}

// integer direction of a realized ray with small integer coordinates
std::vector<long> integer_direction(const Vec<cplx>& v) {
    double m = 0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-9 && (m == 0 || std::abs(v(i)) < m)) m = std::abs(v(i));
    for (int k = 1; k <= 60; ++k) {
        std::vector<long> n;
        bool ok = true;
        for (int i = 0; i < v.size(); ++i) {
            double x = v(i).real() / m * k;
            n.push_back(std::lround(x));
            ok &= std::abs(x - n.back()) < 1e-7 && std::abs(v(i).imag()) < 1e-12;
        }
        if (ok) return n;
    }
    return {};
}

// exact <x, Wx> for W = |e><e| on a graph realized by integer rays
std::vector<Rational> born_exact(const OrthoGraph& g, const std::vector<long>& e) {
    std::vector<Rational> p;
    for (const auto& v : g.realization()) {
        auto n = integer_direction(v);
        REQUIRE(n.size() == e.size());
        Rational dot = 0, nn = 0, ee = 0;
        for (size_t i = 0; i < e.size(); ++i) {
            dot += Rational(e[i] * n[i]);
            nn += Rational(n[i] * n[i]);
            ee += Rational(e[i] * e[i]);
        }
        Rational q = dot * dot / (nn * ee);
        q.canonicalize();
        p.push_back(q);
    }
    return p;
}

OrthoGraph drop_edges(const OrthoGraph& g, const std::set<std::pair<int, int>>& drop) {
    OrthoGraph h(g.dimension());
    for (const auto& l : g.labels()) h.add_node(l);
    for (auto e : g.edges())
        if (!drop.count(e)) h.add_edge(e.first, e.second);
    return h;
}

}  // namespace

TEST_CASE("cat's cradle catalog graph") {
    auto g = catalog::cats_cradle();
    g.validate();
    CHECK(g.size() == 13);
    auto ctx = enumerate_contexts(g);
    CHECK(ctx.full.size() == 7);
    CHECK(ctx.partial.empty());
    int x1 = g.index("x1"), x8 = g.index("x8");
    CHECK_FALSE(g.adjacent(x1, x8));
    REQUIRE(g.realized());
    double c = std::abs(g.realization()[x1].dot(g.realization()[x8]));
    CHECK(c > 1e-3);
    CHECK(std::abs(c * c - 0.1) <= 1e-12);
    for (const auto& t : ctx.full)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK(std::abs(g.realization()[t[i]].dot(g.realization()[t[j]])) <= 1e-10);
}

TEST_CASE("context enumeration examples") {
    OrthoGraph empty(3);
    empty.add_node("a");
    empty.add_node("b");
    auto c = enumerate_contexts(empty);
    CHECK(c.full.empty());
    CHECK(c.partial.size() == 2);
    CHECK(enumerate_contexts(catalog::triangle()).full.size() == 1);

    OrthoGraph k4(3);
    for (auto l : {"a", "b", "c", "d"}) k4.add_node(l);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    CHECK_THROWS_AS(enumerate_contexts(k4), ValidationError);
}

TEST_CASE("cat's cradle bounds") {
    auto g = catalog::cats_cradle();
    auto r = state_lp(g, form(g, {{"x1", 1}, {"x8", 1}}));
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(r.value == Rational(3, 2));
    CHECK(state_oracle(g, r.assignment));
    CHECK(verify_state(g, r.assignment));
    CHECK(r.assignment[g.index("x1")] + r.assignment[g.index("x8")] == Rational(3, 2));
    CHECK(lp::verify_optimal(r.problem, r.raw));

    auto c = state_lp(g, form(g, {{"x8", 1}}), {pin(g, "x1", 1)});
    REQUIRE(c.status == lp::Status::optimal);
    CHECK(c.value == Rational(1, 2));
    CHECK(state_oracle(g, c.assignment));

    auto both = state_lp(g, form(g, {{"x8", 1}}), {pin(g, "x1", 1), pin(g, "x8", 1)});
    CHECK(both.status == lp::Status::infeasible);
    CHECK(lp::verify_farkas(both.problem, both.raw.y));

    auto t = catalog::triangle();
    CHECK(state_lp(t, form(t, {{"e1", 1}})).value == 1);
}

TEST_CASE("indeterminacy ranges") {
    auto g = catalog::cats_cradle();
    int x1 = g.index("x1"), x8 = g.index("x8");
    auto r = indeterminacy_range(g, x1, x8);
    CHECK(r.hi == Rational(1, 2));
    auto same = indeterminacy_range(g, x1, x1);
    CHECK(same.lo == 1);
    CHECK(same.hi == 1);
    int nb = g.neighbors(x1).front();
    auto adj = indeterminacy_range(g, x1, nb);
    CHECK(adj.lo == 0);
    CHECK(adj.hi == 0);
}

TEST_CASE("KS graph admits no two-valued state with P(x) = P(z) = 1") {
    auto g = catalog::ks_gamma();
    g.validate();
    int x = g.index(g.designated.at("x")), z = g.index(g.designated.at("z"));
    CHECK_FALSE(two_valued_search(g, {{x, 1}, {z, 1}}).has_value());
    // binary values on x and z force both to 0
    CHECK_FALSE(two_valued_search(g, {{x, 1}}).has_value());
    CHECK_FALSE(two_valued_search(g, {{z, 1}}).has_value());
    CHECK(two_valued_search(g, {{x, 0}, {z, 0}}).has_value());
    auto r = indeterminacy_range(g, x, z);
    CHECK(r.hi < 1);

    auto core = catalog::ks_core();
    core.validate();
    auto tv = catalog::ks_core_two_valued();
    CHECK(verify_state(core, tv));
    CHECK(g.contains(core));
}

TEST_CASE("two-valued search counts on small graphs") {
    auto t = catalog::triangle();
    CHECK(count_two_valued(t) == 3);
    CHECK(count_two_valued(t, {{0, 1}}) == 1);
    CHECK_THROWS_AS(two_valued_search(t, {{0, 2}}), InvalidInput);
}

TEST_CASE("frame function bounds") {
    auto t = catalog::triangle();
    FrameProblem p;
    p.graph = &t;
    p.target = 0;
    p.zero_nodes = {0, 1, 2};
    CHECK(frame_lp(p).value == 0);

    OrthoGraph lone(3);
    lone.add_node("a");
    FrameProblem q;
    q.graph = &lone;
    q.target = 0;
    CHECK(frame_lp(q).value == 1);

    // a zero-context forces Σ f = 0 on every context
    auto g = catalog::cats_cradle();
    FrameProblem fp;
    fp.graph = &g;
    fp.target = g.index("x8");
    for (auto l : {"x1", "x2", "y2"}) fp.zero_nodes.push_back(g.index(l));
    auto b = frame_lp(fp);
    CHECK(b.constant_forced_zero);
    CHECK(b.constant == 0);
    for (const auto& c : enumerate_contexts(g).full) {
        Rational s = 0;
        for (int i : c) s += b.argmax[i];
        CHECK(s == 0);
    }
}

TEST_CASE("halving gadget and the wonder iteration") {
    auto h = catalog::halving_gadget("z");
    FrameProblem fp;
    fp.graph = &h;
    fp.target = h.index("z");
    for (const auto& l : catalog::frame_zero_labels())
        if (auto i = h.find(l)) fp.zero_nodes.push_back(*i);
    CHECK(frame_lp(fp).value == Rational(1, 2));

    auto b = [](const std::string& n) { return catalog::halving_gadget(n); };
    CHECK(wonder_iterate(b, "z", 0, catalog::frame_zero_labels()).bound == Rational(1, 2));
    auto k1 = wonder_iterate(b, "z", 1, catalog::frame_zero_labels());
    CHECK(k1.bound <= Rational(1, 4));
    auto k2 = wonder_iterate(b, "z", 2, catalog::frame_zero_labels());
    CHECK(k2.bound <= Rational(1, 8));
    CHECK(k2.graph.size() <= 500);

    auto bad = [](const std::string& n) { return catalog::triangle(n, n + "/p", n + "/q"); };
    CHECK_THROWS_AS(wonder_iterate(bad, "z", 1, catalog::frame_zero_labels()), ValidationError);
    CHECK_THROWS_AS(wonder_iterate(b, "z", 5, catalog::frame_zero_labels()), CapExceeded);
}

TEST_CASE("extension of states") {
    auto core = catalog::ks_core();
    auto tv = catalog::ks_core_two_valued();
    auto same = extend_state(core, tv, core);
    REQUIRE(same.feasible);
    CHECK(same.assignment == tv);

    auto big = closure(core, 3);
    CHECK(big.contains(core));
    auto r = extend_state(core, tv, big);
    CHECK_FALSE(r.feasible);
    CHECK(lp::verify_farkas(r.problem, r.farkas));

    // Born-derived assignments extend: the maximally mixed state and pure
    // states along integer directions
    std::vector<Rational> third(core.size(), Rational(1, 3));
    REQUIRE(verify_state(core, third));
    auto u = extend_state(core, third, big);
    CHECK(u.feasible);
    CHECK(state_oracle(big, u.assignment));
    for (std::vector<long> e : {std::vector<long>{1, 2, 3}, {0, 1, -1}, {2, -1, 5}}) {
        auto p0 = born_exact(core, e);
        REQUIRE(verify_state(core, p0));
        auto x = extend_state(core, p0, big);
        CHECK(x.feasible);
        CHECK(x.assignment == born_exact(big, e));
    }

    CHECK_THROWS_AS(extend_state(big, std::vector<Rational>(big.size(), 0), core), InvalidInput);
}

TEST_CASE("closure rounds are nested and extension feasibility only shrinks") {
    auto core = catalog::ks_core();
    auto tv = catalog::ks_core_two_valued();
    bool feasible = true;
    OrthoGraph prev = core;
    for (int r = 1; r <= 3; ++r) {
        auto g = closure(core, r);
        CHECK(g.contains(prev));
        bool f = extend_state(core, tv, g).feasible;
        if (!feasible) CHECK_FALSE(f);
        feasible = f;
        prev = g;
    }
    CHECK_FALSE(feasible);
}

TEST_CASE("removing edges never lowers a state LP maximum") {
    auto g = catalog::cats_cradle();
    auto edges = g.edges();
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        std::set<std::pair<int, int>> drop;
        for (auto e : edges)
            if (rng.uniform() < 0.2) drop.insert(e);
        auto h = drop_edges(g, drop);
        LinearForm f;
        for (int i = 0; i < g.size(); ++i) f.push_back({i, Rational(static_cast<long>(rng.next() % 4))});
        auto a = state_lp(g, f), b = state_lp(h, f);
        REQUIRE(a.status == lp::Status::optimal);
        REQUIRE(b.status == lp::Status::optimal);
        REQUIRE(a.value <= b.value);
        REQUIRE(state_oracle(h, b.assignment));
    }
}

TEST_CASE("fitting density operators") {
    auto g = catalog::cats_cradle();
    Rng rng(9);
    auto W0 = random_density<cplx>(3, rng);
    auto born = born_assignment(g, W0);
    auto fit = fit_quantum_state(g, born, 3);
    CHECK(fit.deviation <= 1e-6);

    auto t = catalog::triangle();
    Mat<cplx> I = Mat<cplx>::Identity(3, 3);
    t.set_realization({I.col(0), I.col(1), I.col(2)});
    auto u = fit_quantum_state(t, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(u.deviation <= 1e-6);

    // P(x) = P(z) = 1 on non-orthogonal x, z: <x,Wx> + <z,Wz> <= 1 + |<x,z>|
    auto core = catalog::ks_core();
    std::vector<double> p;
    for (const auto& r : catalog::ks_core_two_valued()) p.push_back(to_double(r));
    auto k = fit_quantum_state(core, p);
    const auto& R = core.realization();
    double c = std::abs(R[core.index("x")].dot(R[core.index("z")]));
    CHECK(k.deviation >= (1 - c) / 2 - 1e-9);
    CHECK(state_distance(core, catalog::ks_core_two_valued()) == 0);

    OrthoGraph bare(3);
    bare.add_node("a");
    CHECK_THROWS_AS(fit_quantum_state(bare, {0.5}), InvalidInput);
}

TEST_CASE("validation catches unrealizable edges") {
    auto g = catalog::cats_cradle();
    auto h = g;
    h.add_edge("x1", "x8");
    CHECK_THROWS_AS(h.validate(), ValidationError);
    auto m = drop_edges(g, {g.edges().front()});
    m.set_realization(g.realization());
    CHECK_THROWS_AS(m.validate(), ValidationError);
}
