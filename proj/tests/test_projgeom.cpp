#include "doctest.h"

#include "qprob/projgeom.hpp"

using namespace qp;
using namespace qp::projgeom;

namespace {

template <class S>
Vec<S> v3(S a, S b, S c) {
    Vec<S> v(3);
    v << a, b, c;
    return v;
}

template <class S>
std::string degenerate_kind(const HarmonicInput<S>& in) {
    try {
        harmonic_conjugate(in);
    } catch (const Degenerate& e) {
        return e.kind();
    }
    return "";
}

// z = a x + b y  =>  conjugate a x - b y
template <class S>
Ray<S> oracle(const Ray<S>& x, const Ray<S>& y, const Ray<S>& z) {
    Mat<S> B(3, 2);
    B.col(0) = x.vector();
    B.col(1) = y.vector();
    Vec<S> c = B.colPivHouseholderQr().solve(z.vector());
    return Ray<S>(Vec<S>(c(0) * x.vector() - c(1) * y.vector()));
}

template <class S>
struct Triple {
    Ray<S> x, y, z;
};

template <class S>
Triple<S> random_triple(Rng& rng) {
    Ray<S> x = random_ray<S>(3, rng), y = random_ray<S>(3, rng);
    S a = rng.scalar_normal<S>(), b = rng.scalar_normal<S>();
    return {x, y, Ray<S>(Vec<S>(a * x.vector() + b * y.vector()))};
}

template <class S>
void harmonic_properties(std::uint64_t seed) {
    for (int t = 0; t < 100; ++t) {
        Rng rng(derive_seed(seed, t));
        auto [x, y, z] = random_triple<S>(rng);
        Ray<S> w1 = harmonic_conjugate(x, y, z, derive_seed(seed, 1000 + t));
        Ray<S> w2 = harmonic_conjugate(x, y, z, derive_seed(seed, 2000 + t));
        // a v chosen elsewhere on x∪u
        auto in = default_input(x, y, z, derive_seed(seed, 3000 + t));
        in.v = Ray<S>(Vec<S>(S(0.3) * x.vector() - S(2.0) * in.u.vector()));
        Ray<S> w3 = harmonic_conjugate(in);
        REQUIRE(w1.distance(w2) <= 1e-8);
        REQUIRE(w1.distance(w3) <= 1e-8);
        REQUIRE(w1.distance(oracle(x, y, z)) <= 1e-8);
        REQUIRE(std::abs(cross_ratio(x, y, z, w1) - S(-1)) <= 1e-8);
        REQUIRE(harmonic_conjugate(x, y, w1, seed).distance(z) <= 1e-8);
    }
}

template <class S>
void soler_pairs(std::uint64_t seed) {
    for (int t = 0; t < 100; ++t) {
        Rng rng(derive_seed(seed, t));
        Vec<S> x = random_ray<S>(3, rng).vector(), y = gaussian_vector<S>(3, rng);
        y -= x * x.dot(y);
        auto c = check_soler_pair(Ray<S>(x), Ray<S>(y), t);
        REQUIRE(c.holds);
        REQUIRE(c.overlap <= 1e-8);
    }
}

}  // namespace

TEST_CASE("harmonic conjugate of (1,1,0) against e1, e2") {
    Ray<double> x(v3(1.0, 0.0, 0.0)), y(v3(0.0, 1.0, 0.0)), z(v3(1.0, 1.0, 0.0));
    for (std::uint64_t seed : {0, 1, 2, 99}) {
        Ray<double> w = harmonic_conjugate(x, y, z, seed);
        CHECK(w.distance(Ray<double>(v3(1.0, -1.0, 0.0))) <= 1e-8);
    }
    Ray<double> w = harmonic_conjugate(HarmonicInput<double>{x, y, z, Ray<double>(v3(0.0, 0.0, 1.0)),
                                                             Ray<double>(v3(1.0, 0.0, 1.0))});
    CHECK(w.distance(Ray<double>(v3(1.0, -1.0, 0.0))) <= 1e-12);
    CHECK(cross_ratio(x, y, z, w) == doctest::Approx(-1));
}

TEST_CASE("degenerate inputs are named") {
    Ray<double> x(v3(1.0, 0.0, 0.0)), y(v3(0.0, 1.0, 0.0)), z(v3(1.0, 1.0, 0.0));
    Ray<double> u(v3(0.0, 0.0, 1.0)), v(v3(1.0, 0.0, 1.0));
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, x, u, v}) == "degenerate-z");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, y, u, v}) == "degenerate-z");
    CHECK(degenerate_kind(HarmonicInput<double>{x, x, z, u, v}) == "degenerate-line");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, Ray<double>(v3(1.0, 1.0, 1.0)), u, v}) == "z-off-line");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, z, Ray<double>(v3(1.0, 2.0, 0.0)), v}) == "u-on-line");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, z, u, u}) == "v-coincides");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, z, u, x}) == "v-coincides");
    CHECK(degenerate_kind(HarmonicInput<double>{x, y, z, u, Ray<double>(v3(0.0, 1.0, 1.0))}) == "v-off-line");
    CHECK_THROWS_AS(harmonic_conjugate(Ray<double>(Vec<double>::Ones(4)), Ray<double>(Vec<double>::Ones(4)),
                                       Ray<double>(Vec<double>::Ones(4))),
                    DimensionMismatch);
}

TEST_CASE("cross ratio errors") {
    Ray<double> x(v3(1.0, 0.0, 0.0)), y(v3(0.0, 1.0, 0.0)), z(v3(1.0, 1.0, 0.0));
    CHECK_THROWS_AS(cross_ratio(x, y, z, x), Degenerate);
    CHECK_THROWS_AS(cross_ratio(x, y, z, Ray<double>(v3(0.0, 0.0, 1.0))), Degenerate);
    CHECK(cross_ratio(x, y, z, Ray<double>(v3(2.0, 1.0, 0.0))) == doctest::Approx(2));
}

TEST_CASE("harmonic conjugation over R: uniqueness, cross ratio, involution") { harmonic_properties<double>(41); }

TEST_CASE("harmonic conjugation over C: uniqueness, cross ratio, involution") { harmonic_properties<cplx>(42); }

TEST_CASE("bisector of orthogonal pairs is orthogonal to its conjugate") {
    soler_pairs<double>(7);
    soler_pairs<cplx>(8);
    Ray<double> x(v3(1.0, 0.0, 0.0));
    CHECK_THROWS_AS(check_soler_pair(x, Ray<double>(v3(1.0, 1.0, 0.0))), Degenerate);
}
