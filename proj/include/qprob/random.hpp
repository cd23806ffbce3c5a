#pragma once

// Seeded streams.  The standard distributions are implementation-defined, so
// uniforms and normals are derived here from the raw 64-bit engine output to
// keep streams identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qprob/core.hpp"

namespace qp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// per-task seed from a master seed and a task index
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    template <class S>
    S scalar_normal() {
        if constexpr (is_complex_v<S>) {
            double a = normal();
            double b = normal();
            return S(a, b);
        } else {
            return normal();
        }
    }

    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

template <class S>
Vec<S> gaussian_vector(int d, Rng& rng) {
    Vec<S> v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.scalar_normal<S>();
    return v;
}

template <class S>
Ray<S> random_ray(int d, Rng& rng) {
    return Ray<S>(gaussian_vector<S>(d, rng));
}

template <class S>
Mat<S> random_unitary(int d, Rng& rng) {
    Mat<S> G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.scalar_normal<S>();
    Eigen::HouseholderQR<Mat<S>> qr(G);
    Mat<S> Q = qr.householderQ();
    Mat<S> R = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        double a = std::abs(R(j, j));
        if (a > 0) Q.col(j) *= R(j, j) / a;
    }
    return Q;
}

// full-rank mixed state with random spectrum
template <class S>
DensityOperator<S> random_density(int d, Rng& rng) {
    Mat<S> G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.scalar_normal<S>();
    Mat<S> m = G * G.adjoint();
    m /= re(m.trace());
    return DensityOperator<S>(m);
}

}  // namespace qp
