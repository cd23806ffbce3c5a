#include "doctest.h"

#include "qprob/core.hpp"
#include "qprob/random.hpp"

using namespace qp;

namespace {

Vec<double> v2(double a, double b) {
    Vec<double> v(2);
    v << a, b;
    return v;
}

Vec<double> v3(double a, double b, double c) {
    Vec<double> v(3);
    v << a, b, c;
    return v;
}

template <class S>
Subspace<S> random_subspace(int d, int k, Rng& rng) {
    std::vector<Vec<S>> vs;
    for (int i = 0; i < k; ++i) vs.push_back(gaussian_vector<S>(d, rng));
    return Subspace<S>::span_of(vs, d);
}

}  // namespace

TEST_CASE("rays are normalized and compared as lines") {
    Ray<double> a(v3(3, 4, 0));
    CHECK(std::abs(a.vector().norm() - 1) <= 1e-12);
    CHECK(a.same_line(Ray<double>(v3(-6, -8, 0))));
    CHECK_FALSE(a.same_line(Ray<double>(v3(4, 3, 0))));
    Vec<cplx> z(2);
    z << cplx(1, 1), cplx(0, 2);
    Vec<cplx> w = z * std::polar(1.0, 0.7);
    CHECK(Ray<cplx>(z).same_line(Ray<cplx>(w)));
    CHECK_THROWS_AS(Ray<double>(v3(0, 0, 0)), InvalidInput);
}

TEST_CASE("born probability examples") {
    auto W = DensityOperator<double>::pure(Ray<double>(v2(1, 0)));
    CHECK(born_probability(W, Subspace<double>::of(Ray<double>(v2(1, 0)))).value == doctest::Approx(1));
    CHECK(born_probability(W, Subspace<double>::of(Ray<double>(v2(0, 1)))).value == doctest::Approx(0));
    CHECK(born_probability(W, Subspace<double>::of(Ray<double>(v2(1, 1)))).value == doctest::Approx(0.5));
    CHECK_THROWS_AS(born_probability(W, Subspace<double>::full(3)), DimensionMismatch);
}

TEST_CASE("density operator validation") {
    Mat<double> m(2, 2);
    m << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS_AS(DensityOperator<double>{m}, InvalidInput);
    m << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityOperator<double>{m}, InvalidInput);
    m << 0.6, 0, 0, 0.6;
    CHECK_THROWS_AS(DensityOperator<double>{m}, InvalidInput);
}

TEST_CASE("luders update") {
    Ray<double> x(v2(1, 0)), y(v2(0, 1)), z(v2(1, 1));
    auto W = DensityOperator<double>::pure(x);
    auto same = luders_update(W, Subspace<double>::full(2));
    CHECK((same.matrix() - W.matrix()).norm() <= 1e-12);
    CHECK_THROWS_AS(luders_update(W, Subspace<double>::of(y)), NullConditioning);

    // the cat: conditioning on z = (x+y)/√2 leaves P(x) = P(y) = 1/2
    auto Wz = luders_update(DensityOperator<double>::maximally_mixed(2), Subspace<double>::of(z));
    CHECK(std::abs(born_probability(Wz, Subspace<double>::of(x)).value - 0.5) <= 1e-12);
    CHECK(std::abs(born_probability(Wz, Subspace<double>::of(y)).value - 0.5) <= 1e-12);
}

TEST_CASE("meet, join and complement examples") {
    auto e1 = Subspace<double>::of(Ray<double>(v3(1, 0, 0)));
    auto e2 = Subspace<double>::of(Ray<double>(v3(0, 1, 0)));
    auto plane = join(e1, e2);
    CHECK(plane.dim() == 2);
    CHECK(plane.contains(v3(1, 2, 0)));
    CHECK_FALSE(plane.contains(v3(0, 0, 1)));
    auto a = Subspace<double>::of(Ray<double>(v2(1, 0))), b = Subspace<double>::of(Ray<double>(v2(1, 1)));
    CHECK(meet(a, b).dim() == 0);
    CHECK(ortho_complement(ortho_complement(plane)).equals(plane));
    CHECK(ortho_complement(Subspace<double>::zero(3)).dim() == 3);
    CHECK_THROWS_AS(meet(a, plane), DimensionMismatch);
}

TEST_CASE("tensor events") {
    Ray<double> a(v2(1, 0)), b(v2(0, 1));
    Vec<double> expect = Vec<double>::Zero(4);
    expect(1) = 1;
    CHECK((tensor_ray(a, b).vector() - expect).norm() <= 1e-12);

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        auto x = random_ray<cplx>(2, rng), y = random_ray<cplx>(2, rng);
        auto left = tensor_event(Subspace<cplx>::of(x), Side::left, 2);
        auto right = tensor_event(Subspace<cplx>::of(y), Side::right, 2);
        CHECK(left.dim() == 2);
        CHECK(meet(left, right).equals(Subspace<cplx>::of(tensor_ray(x, y))));
    }
}

TEST_CASE("context decomposition examples") {
    Rng rng(5);
    auto W = random_density<cplx>(3, rng);
    Mat<cplx> U = random_unitary<cplx>(3, rng);
    std::vector<Subspace<cplx>> ctx;
    for (int i = 0; i < 3; ++i) ctx.push_back(Subspace<cplx>::of(Ray<cplx>(Vec<cplx>(U.col(i)))));
    CHECK(context_decomposition_probability(W, ctx[0], ctx).value ==
          doctest::Approx(born_probability(W, ctx[0]).value));
    CHECK(context_decomposition_probability(W, Subspace<cplx>::full(3), ctx).value == doctest::Approx(1));
    std::vector<Subspace<cplx>> partial(ctx.begin(), ctx.begin() + 2);
    CHECK_THROWS_AS(context_decomposition_probability(W, ctx[0], partial), InvalidInput);
    auto odd = Subspace<cplx>::of(Ray<cplx>(Vec<cplx>(U.col(0) + U.col(1))));
    CHECK_THROWS_AS(context_decomposition_probability(W, odd, ctx), InvalidInput);
}

TEST_CASE("born rule over random states and bases") {
    // 1000 seeded (W, basis) pairs in dimensions 3..8
    for (int t = 0; t < 1000; ++t) {
        Rng rng(derive_seed(2024, t));
        int d = 3 + t % 6;
        auto W = random_density<cplx>(d, rng);
        Mat<cplx> U = random_unitary<cplx>(d, rng);
        double sum = 0;
        std::vector<Subspace<cplx>> basis;
        for (int i = 0; i < d; ++i) {
            basis.push_back(Subspace<cplx>::of(Ray<cplx>(Vec<cplx>(U.col(i)))));
            auto p = born_probability(W, basis.back());
            REQUIRE(p.raw >= -1e-9);
            sum += p.value;
        }
        REQUIRE(std::abs(sum - 1) <= 1e-9);

        // y spanned by two members of context A; context C shares them and
        // rotates the rest
        Mat<cplx> V = U;
        if (d > 3) {
            Mat<cplx> R = random_unitary<cplx>(d - 2, rng);
            V.rightCols(d - 2) = U.rightCols(d - 2) * R;
        }
        std::vector<Subspace<cplx>> other;
        for (int i = 0; i < d; ++i) other.push_back(Subspace<cplx>::of(Ray<cplx>(Vec<cplx>(V.col(i)))));
        auto y = Subspace<cplx>::from_orthonormal(U.leftCols(2));
        double a = context_decomposition_probability(W, y, basis).raw;
        double c = context_decomposition_probability(W, y, other).raw;
        REQUIRE(std::abs(a - c) <= 1e-9);
        REQUIRE(std::abs(a - born_probability(W, y).raw) <= 1e-9);
    }
}

TEST_CASE("subspace lattice properties") {
    Rng rng(77);
    for (int t = 0; t < 200; ++t) {
        int d = 3 + t % 4;
        auto X = random_subspace<cplx>(d, 1 + t % (d - 1), rng);
        auto Y = join(X, random_subspace<cplx>(d, 1, rng));
        // orthomodular law for X ⊆ Y
        REQUIRE(X.leq(Y));
        REQUIRE(join(X, meet(Y, ortho_complement(X))).equals(Y));
        // Gram matrix of the complement basis
        auto C = ortho_complement(X);
        REQUIRE((C.basis().adjoint() * C.basis() - Mat<cplx>::Identity(C.dim(), C.dim())).norm() <= 1e-10);
        REQUIRE(ortho_complement(C).equals(X));
        // additivity over orthogonal pieces
        auto W = random_density<cplx>(d, rng);
        auto Z = meet(Y, ortho_complement(X));
        REQUIRE(std::abs(born_probability(W, Y).raw - born_probability(W, X).raw - born_probability(W, Z).raw) <= 1e-9);
        // Lüders: P(y|x) P(x) = tr(Px W Px Py) for y compatible with x
        auto Wx = luders_update(W, Y);
        double lhs = born_probability(Wx, X).raw * born_probability(W, Y).raw;
        Mat<cplx> PY = Y.projector(), PX = X.projector();
        double rhs = (PY * W.matrix() * PY * PX).trace().real();
        REQUIRE(std::abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("non-orthogonal distinct rays are incompatible") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        auto x = Subspace<double>::of(random_ray<double>(3, rng));
        auto z = Subspace<double>::of(random_ray<double>(3, rng));
        auto back = join(meet(x, z), meet(x, ortho_complement(z)));
        CHECK_FALSE(back.equals(x));
        CHECK_FALSE(compatible(x, z));
    }
}
