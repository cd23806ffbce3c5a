#include "doctest.h"

#include <algorithm>
#include <set>

#include "qprob/polytope.hpp"
#include "qprob/random.hpp"

using namespace qp;
using namespace qp::polytope;

namespace {

using RMat = std::vector<std::vector<Rational>>;

// null space of an exact matrix by Gauss-Jordan; returns one basis vector
// per free column
std::vector<std::vector<Rational>> null_space(RMat a, int cols) {
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < (int)a.size(); ++c) {
        int p = r;
        while (p < (int)a.size() && a[p][c] == 0) ++p;
        if (p == (int)a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (int i = 0; i < (int)a.size(); ++i)
            if (i != r && a[i][c] != 0) {
                Rational f = a[i][c];
                for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < cols; ++f) {
        if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (int i = 0; i < (int)pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        out.push_back(v);
    }
    return out;
}

// facets by brute force: every D-subset of vertices spanning a hyperplane
// with all vertices on one side
std::set<std::pair<std::vector<Rational>, Rational>> brute_facets(const CorrelationPolytope& P) {
    const int D = P.scheme.dim();
    const int m = static_cast<int>(P.vertices.size());
    std::set<std::pair<std::vector<Rational>, Rational>> out;
    std::vector<int> idx(D);
    for (int i = 0; i < D; ++i) idx[i] = i;
    for (;;) {
        RMat a;
        for (int i : idx) {
            std::vector<Rational> row{Rational(-1)};
            for (int x : P.vertices[i]) row.push_back(Rational(x));
            a.push_back(row);
        }
        auto ns = null_space(a, D + 1);
        if (ns.size() == 1) {
            // h·v = b with h = ns[1..], b = ns[0]
            std::vector<Rational> h(ns[0].begin() + 1, ns[0].end());
            Rational b = ns[0][0];
            int above = 0, below = 0;
            for (const auto& v : P.vertices) {
                Rational s = 0;
                for (int j = 0; j < D; ++j) s += h[j] * v[j];
                if (s > b) ++above;
                if (s < b) ++below;
            }
            if (above == 0 || below == 0) {
                if (above) {
                    for (auto& x : h) x = -x;
                    b = -b;
                }
                // h·v <= b, canonicalized as coprime integers
                LinearInequality f{h, std::nullopt, b};
                f = canonical(f);
                out.insert({f.coeffs, f.hi ? *f.hi : -*f.lo});
            }
        }
        int k = D - 1;
        while (k >= 0 && idx[k] == m - D + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < D; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::set<std::pair<std::vector<Rational>, Rational>> as_upper(const std::vector<LinearInequality>& fs) {
    std::set<std::pair<std::vector<Rational>, Rational>> out;
    for (const auto& f : fs) {
        if (f.hi) out.insert({f.coeffs, *f.hi});
        if (f.lo) {
            std::vector<Rational> neg;
            for (const auto& c : f.coeffs) neg.push_back(-c);
            out.insert({neg, -*f.lo});
        }
    }
    // both-signs rows from canonical(), as the oracle writes them
    std::set<std::pair<std::vector<Rational>, Rational>> canon;
    for (auto [h, b] : out) {
        LinearInequality f{h, std::nullopt, b};
        f = canonical(f);
        canon.insert({f.coeffs, f.hi ? *f.hi : -*f.lo});
    }
    return canon;
}

EventScheme pair_scheme(int n) {
    EventScheme s;
    s.n = n;
    for (int i = 0; i < n; ++i) s.monomials.push_back({i});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.monomials.push_back({i, j});
    return s;
}

std::vector<Rational> rat(const std::vector<long>& v) {
    std::vector<Rational> out;
    for (long x : v) out.push_back(Rational(x));
    return out;
}

}  // namespace

TEST_CASE("scheme validation") {
    EventScheme s;
    s.n = 2;
    s.monomials = {{0}, {2}};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.monomials = {{0}, {0}};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.monomials = {{0, 1}, {0}};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    EventScheme big;
    big.n = 21;
    big.monomials = {{0}};
    CHECK_THROWS_AS(vertices(big), CapExceeded);
}

TEST_CASE("CH vertices") {
    auto P = vertices(ch_scheme());
    CHECK(P.vertices.size() == 16);
    std::set<std::vector<int>> uniq(P.vertices.begin(), P.vertices.end());
    CHECK(uniq.size() == 16);
    for (const auto& v : P.vertices) {
        CHECK(v[4] == v[0] * v[2]);
        CHECK(v[7] == v[1] * v[3]);
    }
}

TEST_CASE("canonical form") {
    LinearInequality f{{Rational(-2), Rational(4), Rational(0)}, Rational(-6), std::nullopt};
    auto c = canonical(f);
    CHECK(c.coeffs == rat({1, -2, 0}));
    CHECK(c.hi == Rational(3));
    CHECK_FALSE(c.lo.has_value());
    LinearInequality g{{Rational(1, 2), Rational(1, 3)}, Rational(0), Rational(1)};
    auto d = canonical(g);
    CHECK(d.coeffs == rat({3, 2}));
    CHECK(d.lo == 0);
    CHECK(d.hi == 6);
}

TEST_CASE("facets agree with the brute-force oracle") {
    EventScheme conj;
    conj.n = 2;
    conj.monomials = {{0}, {1}, {0, 1}};
    for (const auto& s : {conj, pair_scheme(3), ch_scheme()}) {
        auto P = vertices(s);
        auto F = facets(P);
        CHECK(as_upper(F) == brute_facets(P));
        for (const auto& f : F) {
            CHECK(is_facet(f, P));
            for (const auto& v : P.vertices) {
                std::vector<Rational> q;
                for (int x : v) q.push_back(Rational(x));
                CHECK(f.satisfied_by(q));
            }
        }
    }
}

TEST_CASE("CH facets include both CH bounds and their relabelings") {
    auto P = vertices(ch_scheme());
    auto F = facets(P);
    CHECK(F.size() == 24);
    auto ch = ch_inequalities();
    REQUIRE(ch.size() == 2);
    CHECK(ch[0].coeffs == rat({1, 0, 0, 1, -1, -1, 1, -1}));
    for (const auto& f : ch) {
        for (const auto& img : ch_relabelings(f)) {
            bool found = false;
            for (const auto& g : F) found |= g == img;
            CHECK_MESSAGE(found, img.to_string());
        }
    }
    // the facet list is canonical and sorted
    CHECK(std::is_sorted(F.begin(), F.end()));
    for (const auto& f : F) CHECK(canonical(f) == f);
}

TEST_CASE("degenerate polytopes report their affine hull") {
    EventScheme t;
    t.n = 1;
    t.monomials = {{0}};
    auto P = vertices(t);
    CHECK(facets(P).size() == 2);

    CorrelationPolytope flat{pair_scheme(2), {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    try {
        facets(flat);
        FAIL("expected DegeneratePolytope");
    } catch (const DegeneratePolytope& e) {
        REQUIRE(e.affine_hull().size() == 1);
        const auto& h = e.affine_hull()[0];
        CHECK(h.lo == h.hi);
        for (const auto& v : flat.vertices) CHECK(h.satisfied_by(rat({v[0], v[1], v[2]})));
    }
}

TEST_CASE("membership agrees with the facet description") {
    auto P = vertices(ch_scheme());
    auto F = facets(P);
    Rng rng(12);
    int inside = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<Rational> p;
        for (int j = 0; j < 8; ++j) {
            p.push_back(Rational(static_cast<long>(rng.next() % 9), 8));
            p.back().canonicalize();
        }
        bool by_facets = std::all_of(F.begin(), F.end(), [&](const auto& f) { return f.satisfied_by(p); });
        auto m = membership(p, P);
        REQUIRE(m.inside == by_facets);
        if (m.inside) {
            ++inside;
            Rational total = 0;
            std::vector<Rational> back(8, 0);
            for (size_t i = 0; i < P.vertices.size(); ++i) {
                REQUIRE(m.weights[i] >= 0);
                total += m.weights[i];
                for (int j = 0; j < 8; ++j) back[j] += m.weights[i] * P.vertices[i][j];
            }
            REQUIRE(total == 1);
            REQUIRE(back == p);
        } else {
            REQUIRE(m.separator.has_value());
            REQUIRE(separates(*m.separator, P, p));
        }
    }
    CHECK(inside > 0);
    CHECK(inside < 1000);
}

TEST_CASE("CH value") {
    CHECK(ch_value(rat({0, 0, 0, 0, 0, 0, 0, 0})) == 0);
    CHECK(ch_value(rat({1, 0, 0, 1, 0, 1, 0, 0})) == -1);
    std::vector<Rational> pr{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                             Rational(1, 2), Rational(1, 2), Rational(0),    Rational(1, 2)};
    CHECK(ch_value(pr) == Rational(1, 2));
    auto m = membership(pr, vertices(ch_scheme()));
    CHECK_FALSE(m.inside);
    for (const auto& v : vertices(ch_scheme()).vertices) {
        std::vector<Rational> q;
        for (int x : v) q.push_back(Rational(x));
        CHECK(ch_value(q) >= -1);
        CHECK(ch_value(q) <= 0);
    }
}

TEST_CASE("quantum points and the violation search") {
    const double pi = 3.14159265358979323846;
    Vec<cplx> phi = Vec<cplx>::Zero(4);
    phi(0) = phi(3) = 1 / std::sqrt(2.0);
    QuantumSetup s{bloch_ray(0, 0), bloch_ray(pi / 2, 0), bloch_ray(-pi / 4, 0), bloch_ray(pi / 4, 0),
                   DensityOperator<cplx>::pure(Ray<cplx>(phi))};
    auto p = quantum_point(s);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(ch_value(p) == doctest::Approx((std::sqrt(2.0) - 1) / 2).epsilon(1e-12));

    auto v = maximize_violation({});
    CHECK(v.value >= 0.207);
    CHECK(v.value <= (std::sqrt(2.0) - 1) / 2 + 1e-9);
    CHECK(std::abs(evaluate_setup(v.setup).value - v.value) <= 1e-12);
    auto again = maximize_violation({});
    CHECK(again.value == v.value);
    CHECK(again.point == v.point);

    ViolationOptions prod;
    prod.product_only = true;
    CHECK(maximize_violation(prod).value <= 1e-6);

    std::vector<Rational> q;
    for (double x : v.point) q.push_back(rational_from_double(x));
    auto P = vertices(ch_scheme());
    auto m = membership(q, P);
    REQUIRE_FALSE(m.inside);
    CHECK(separates(*m.separator, P, q));
}
