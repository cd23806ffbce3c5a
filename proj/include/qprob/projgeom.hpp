#pragma once

// Harmonic conjugates by joins and meets in the subspace lattice of a
// 3-dimensional space, and the cross ratio as an independent check.

#include <cstdint>

#include "qprob/core.hpp"
#include "qprob/random.hpp"

namespace qp::projgeom {

template <class S>
struct HarmonicInput {
    Ray<S> x, y, z, u, v;
};

inline constexpr double ray_tol = 1e-8;

template <class S>
Subspace<S> point(const Ray<S>& r) {
    return Subspace<S>::of(r);
}

template <class S>
Ray<S> as_ray(const Subspace<S>& s, const char* step) {
    if (s.dim() != 1)
        throw Degenerate("degenerate-construction", std::string(step) + " is not a point (dimension " +
                                                        std::to_string(s.dim()) + ")");
    return Ray<S>(s.basis().col(0));
}

// distance of r from the plane spanned by a and b
template <class S>
double off_line(const Ray<S>& r, const Ray<S>& a, const Ray<S>& b) {
    Subspace<S> line = join(point(a), point(b));
    Vec<S> v = r.vector();
    return (v - line.basis() * (line.basis().adjoint() * v)).norm();
}

template <class S>
void validate(const HarmonicInput<S>& in) {
    if (in.x.dimension() != 3) throw DimensionMismatch("projective points live in dimension 3");
    for (const Ray<S>* r : {&in.y, &in.z, &in.u, &in.v}) require_dim(r->dimension(), 3, "harmonic input");
    if (in.x.same_line(in.y, ray_tol)) throw Degenerate("degenerate-line", "x and y coincide");
    if (in.z.same_line(in.x, ray_tol) || in.z.same_line(in.y, ray_tol))
        throw Degenerate("degenerate-z", "z coincides with x or y");
    if (off_line(in.z, in.x, in.y) > ray_tol) throw Degenerate("z-off-line", "z is not on the line x, y");
    if (off_line(in.u, in.x, in.y) <= ray_tol) throw Degenerate("u-on-line", "u lies on the line x, y");
    if (in.v.same_line(in.x, ray_tol) || in.v.same_line(in.u, ray_tol))
        throw Degenerate("v-coincides", "v coincides with x or u");
    if (off_line(in.v, in.x, in.u) > ray_tol) throw Degenerate("v-off-line", "v is not on the line x, u");
}

// complete quadrangle u, v, s, t with diagonal points x = uv∩st and
// y = vs∩ut: s = (z∪u)∩(y∪v), t = (x∪s)∩(y∪u), w = (v∪t)∩(x∪y)
template <class S>
Ray<S> harmonic_conjugate(const HarmonicInput<S>& in) {
    validate(in);
    auto P = [](const Ray<S>& r) { return point(r); };
    Ray<S> s = as_ray(meet(join(P(in.z), P(in.u)), join(P(in.y), P(in.v))), "s");
    Ray<S> t = as_ray(meet(join(P(in.x), P(s)), join(P(in.y), P(in.u))), "t");
    return as_ray(meet(join(P(in.v), P(t)), join(P(in.x), P(in.y))), "w");
}

// u: seeded random ray, redrawn until clearly off the line; v = span{x + u}
template <class S>
HarmonicInput<S> default_input(const Ray<S>& x, const Ray<S>& y, const Ray<S>& z, std::uint64_t seed = 0) {
    require_dim(x.dimension(), 3, "harmonic input");
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Ray<S> u = random_ray<S>(3, rng);
        if (off_line(u, x, y) < 1e-3) continue;
        Ray<S> v(Vec<S>(x.vector() + u.vector()));
        return {x, y, z, u, v};
    }
    throw InternalError("could not draw a point off the line");
}

template <class S>
Ray<S> harmonic_conjugate(const Ray<S>& x, const Ray<S>& y, const Ray<S>& z, std::uint64_t seed = 0) {
    return harmonic_conjugate(default_input(x, y, z, seed));
}

// (x, y; z, w) = [x z][y w] / ([x w][y z]) in coordinates on the line x∪y
template <class S>
S cross_ratio(const Ray<S>& x, const Ray<S>& y, const Ray<S>& z, const Ray<S>& w) {
    for (const Ray<S>* r : {&y, &z, &w}) require_dim(r->dimension(), x.dimension(), "cross_ratio");
    if (x.same_line(y, ray_tol)) throw Degenerate("coincident-points", "x and y coincide");
    Mat<S> B(x.dimension(), 2);
    B.col(0) = x.vector();
    B.col(1) = y.vector();
    auto coords = [&](const Ray<S>& p, const char* name) {
        Vec<S> c = B.colPivHouseholderQr().solve(p.vector());
        if ((B * c - p.vector()).norm() > ray_tol)
            throw Degenerate("not-collinear", std::string(name) + " is not on the line x, y");
        return c;
    };
    Vec<S> cz = coords(z, "z"), cw = coords(w, "w");
    // with x = (1,0), y = (0,1): [x p] = p1, [y p] = -p0
    S num = cz(1) * cw(0);
    S den = cw(1) * cz(0);
    if (std::abs(den) <= ray_tol * std::max(1.0, std::abs(num)) || std::abs(num) <= ray_tol * std::abs(den))
        throw Degenerate("coincident-points", "z or w coincides with x or y");
    return num / den;
}

template <class S>
struct SolerCheck {
    Ray<S> z;
    Ray<S> conjugate;
    double overlap;  // |<z, H(z; x, y)>|
    bool holds;
};

template <class S>
SolerCheck<S> check_soler_pair(const Ray<S>& x, const Ray<S>& y, std::uint64_t seed = 0) {
    require_dim(x.dimension(), 3, "soler pair");
    require_dim(y.dimension(), 3, "soler pair");
    if (std::abs(x.vector().dot(y.vector())) > 1e-10) throw Degenerate("non-orthogonal", "x and y are not orthogonal");
    Ray<S> z(Vec<S>(x.vector() + y.vector()));
    Ray<S> w = harmonic_conjugate(x, y, z, seed);
    double ov = std::abs(z.vector().dot(w.vector()));
    return {z, w, ov, ov <= ray_tol};
}

}  // namespace qp::projgeom
