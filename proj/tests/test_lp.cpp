#include "doctest.h"

#include "qprob/lp.hpp"
#include "qprob/random.hpp"

using namespace qp;
using lp::Sense;

namespace {

lp::Row row(std::vector<std::pair<int, Rational>> t, Sense s, Rational b) {
    lp::Row r;
    r.terms = std::move(t);
    r.sense = s;
    r.rhs = b;
    r.rhs.canonicalize();
    return r;
}

// brute force over the vertices of a 2-variable box-constrained LP: the
// optimum of a bounded 2D LP sits on the intersection of two tight
// constraints (rows or bounds)
std::optional<Rational> brute_force_2d(const lp::Problem& p) {
    struct Line { Rational a, b, c; };  // a x + b y = c
    std::vector<Line> lines;
    for (auto& r : p.rows) {
        Line l{0, 0, r.rhs};
        for (auto& [j, a] : r.terms) (j == 0 ? l.a : l.b) += a;
        lines.push_back(l);
    }
    for (int j = 0; j < 2; ++j) {
        lines.push_back({j == 0 ? 1 : 0, j == 1 ? 1 : 0, p.lower[j]});
        if (p.upper[j]) lines.push_back({j == 0 ? 1 : 0, j == 1 ? 1 : 0, *p.upper[j]});
    }
    std::optional<Rational> best;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t k = i + 1; k < lines.size(); ++k) {
            Rational det = lines[i].a * lines[k].b - lines[i].b * lines[k].a;
            if (det == 0) continue;
            Rational x = (lines[i].c * lines[k].b - lines[i].b * lines[k].c) / det;
            Rational y = (lines[i].a * lines[k].c - lines[i].c * lines[k].a) / det;
            if (!lp::is_feasible(p, {x, y})) continue;
            Rational v = p.objective[0] * x + p.objective[1] * y;
            if (!best || (p.maximize ? v > *best : v < *best)) best = v;
        }
    return best;
}

}  // namespace

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-1/4") == Rational(-1, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(2)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("small optimum with certificate") {
    lp::Problem p;
    int x = p.add_var(0, std::nullopt, 3);
    int y = p.add_var(0, std::nullopt, 2);
    p.add_row(row({{x, 1}, {y, 1}}, Sense::le, 4));
    p.add_row(row({{x, 1}, {y, 3}}, Sense::le, 6));
    p.add_row(row({{x, 1}}, Sense::le, 3));
    auto r = lp::solve(p);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(r.value == 11);
    CHECK(lp::verify_optimal(p, r));

    p.maximize = false;
    p.add_row(row({{x, 1}, {y, 1}}, Sense::ge, Rational(1, 2)));
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.value == 1);
    CHECK(lp::verify_optimal(p, s));
}

TEST_CASE("infeasible system yields a Farkas certificate") {
    lp::Problem p;
    int x = p.add_var(0, Rational(1));
    int y = p.add_var(0, Rational(1));
    p.add_row(row({{x, 1}, {y, 1}}, Sense::eq, 1));
    p.add_row(row({{x, 1}, {y, -1}}, Sense::ge, Rational(3, 2)));
    auto r = lp::solve(p);
    REQUIRE(r.status == lp::Status::infeasible);
    CHECK(lp::verify_farkas(p, r.y));
    // tampering breaks it
    auto bad = r.y;
    bad[0] += 5;
    CHECK_FALSE(lp::verify_farkas(p, bad));
}

TEST_CASE("unbounded direction is detected") {
    lp::Problem p;
    int x = p.add_var(0, std::nullopt, 1);
    int y = p.add_var(0, std::nullopt, 0);
    p.add_row(row({{x, 1}, {y, -1}}, Sense::le, 1));
    CHECK(lp::solve(p).status == lp::Status::unbounded);
}

TEST_CASE("negative lower bounds and equality rows") {
    lp::Problem p;
    int a = p.add_var(-1, Rational(1), 1);
    int b = p.add_var(-1, Rational(1), 0);
    int c = p.add_var(-1, Rational(1), 0);
    p.add_row(row({{a, 1}, {b, 1}, {c, 1}}, Sense::eq, 0));
    p.add_row(row({{b, 1}, {c, -1}}, Sense::eq, 0));
    auto r = lp::solve(p);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(r.value == 1);
    CHECK(lp::verify_optimal(p, r));
}

TEST_CASE("random 2-variable programs agree with vertex enumeration") {
    Rng rng(7);
    int solved = 0;
    for (int t = 0; t < 300; ++t) {
        lp::Problem p;
        for (int j = 0; j < 2; ++j) {
            int lo = int(rng.uniform(-3, 1));
            p.add_var(lo, Rational(lo + 1 + int(rng.uniform(0, 4))), int(rng.uniform(-4, 5)));
        }
        p.maximize = rng.uniform() < 0.5;
        int rows = 1 + int(rng.uniform(0, 4));
        for (int i = 0; i < rows; ++i) {
            Sense s = rng.uniform() < 0.4 ? Sense::le : (rng.uniform() < 0.6 ? Sense::ge : Sense::eq);
            p.add_row(row({{0, int(rng.uniform(-3, 4))}, {1, int(rng.uniform(-3, 4))}}, s,
                          Rational(int(rng.uniform(-6, 7)), 2)));
        }
        auto r = lp::solve(p);
        auto oracle = brute_force_2d(p);
        if (r.status == lp::Status::optimal) {
            REQUIRE(oracle.has_value());
            CHECK(*oracle == r.value);
            CHECK(lp::verify_optimal(p, r));
            ++solved;
        } else {
            REQUIRE(r.status == lp::Status::infeasible);
            CHECK_FALSE(oracle.has_value());
            CHECK(lp::verify_farkas(p, r.y));
        }
    }
    CHECK(solved > 50);
}
