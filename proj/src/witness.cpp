#include "qprob/witness.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qprob/parallel.hpp"
#include "qprob/random.hpp"

namespace qp::witness {

namespace {

constexpr double kPi = std::numbers::pi;

void require_qubits(int dim, int n, const char* where) {
    if (n < 1 || n > 24) throw InvalidInput(std::string(where) + ": qubit count out of range");
    require_dim(dim, 1 << n, where);
}

Bloch random_bloch(Rng& rng) {
    Bloch b;
    for (int i = 0; i < 3; ++i) b(i) = rng.normal();
    return b.normalized();
}

Vec<cplx> bloch_to_ray(const Bloch& r) {
    double theta = std::acos(std::clamp(r(2), -1.0, 1.0));
    double phi = std::atan2(r(1), r(0));
    Vec<cplx> v(2);
    v << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
    return v;
}

// Contract mode `mode` (size M.cols()) of a row-major tensor with M, giving size M.rows().
template <class T, class Mtx>
std::vector<T> contract_mode(const std::vector<T>& t, std::vector<int>& dims, int mode, const Mtx& M) {
    long outer = 1, inner = 1;
    for (int i = 0; i < mode; ++i) outer *= dims[i];
    for (size_t i = mode + 1; i < dims.size(); ++i) inner *= dims[i];
    const int p = dims[mode], q = static_cast<int>(M.rows());
    std::vector<T> out(outer * q * inner, T(0));
    for (long o = 0; o < outer; ++o)
        for (int a = 0; a < q; ++a) {
            T* dst = &out[(o * q + a) * inner];
            for (int b = 0; b < p; ++b) {
                auto w = M(a, b);
                if (w == decltype(w)(0)) continue;
                const T* src = &t[(o * p + b) * inner];
                for (long i = 0; i < inner; ++i) dst[i] += T(w * src[i]);
            }
        }
    dims[mode] = q;
    return out;
}

// tr(σ_j Y) for Pauli strings j in {x,y,z}^m, Y a 2^m x 2^m operator
std::vector<double> pauli_components(const Mat<cplx>& Y, int m) {
    const long D = 1L << m;
    std::vector<long> spread(D, 0);
    for (long i = 0; i < D; ++i)
        for (int k = 0; k < m; ++k)
            if (i >> k & 1) spread[i] |= 1L << (2 * k);
    std::vector<cplx> F(D * D);
    for (long a = 0; a < D; ++a)
        for (long b = 0; b < D; ++b) F[2 * spread[a] + spread[b]] = Y(a, b);
    // weight of pair (a, b) in tr(σ Y) is σ[b][a]
    Eigen::Matrix<cplx, 3, 4> W;
    for (int j = 0; j < 3; ++j) {
        Mat<cplx> s = pauli(j + 1);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) W(j, 2 * a + b) = s(b, a);
    }
    std::vector<int> dims(m, 4);
    for (int k = 0; k < m; ++k) F = contract_mode(F, dims, k, W);
    std::vector<double> out(F.size());
    for (size_t i = 0; i < F.size(); ++i) out[i] = F[i].real();
    return out;
}

Mat<cplx> pauli_string(long j, int m) {
    Mat<cplx> P = Mat<cplx>::Identity(1, 1);
    std::vector<int> digits(m);
    for (int k = m - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(j % 3);
        j /= 3;
    }
    for (int k = 0; k < m; ++k) P = kron<cplx>(P, pauli(digits[k] + 1));
    return P;
}

long pow3(int n) {
    long r = 1;
    while (n-- > 0) r *= 3;
    return r;
}

// G[j][b]: the MK form Σ_s c_s Σ_j T_j Π_i S_i[j_i][s_i] with mode k left open.
// P is T with modes < k already contracted against the settings.
Eigen::Matrix<double, 3, 2> partial_form(const std::vector<double>& P, const std::vector<double>& c, int n,
                                         const std::vector<Eigen::Matrix<double, 2, 3>>& St, int k) {
    std::vector<int> dims(n, 3);
    for (int i = 0; i < k; ++i) dims[i] = 2;
    std::vector<double> U = P;
    for (int i = n - 1; i > k; --i) U = contract_mode(U, dims, i, St[i]);
    long inner = 1L << (n - 1 - k), outer = 1L << k;
    Eigen::Matrix<double, 3, 2> G = Eigen::Matrix<double, 3, 2>::Zero();
    for (long o = 0; o < outer; ++o)
        for (int j = 0; j < 3; ++j)
            for (long i = 0; i < inner; ++i) {
                double u = U[(o * 3 + j) * inner + i];
                long s0 = (o * 2 + 0) * inner + i, s1 = (o * 2 + 1) * inner + i;
                G(j, 0) += c[s0] * u;
                G(j, 1) += c[s1] * u;
            }
    return G;
}

// Σ_s c_s Π_{i≠k} h_i[s_i], as a function of s_k
Eigen::Vector2d partial_multilinear(const std::vector<double>& c, int n, const std::vector<Eigen::Vector2d>& h, int k) {
    std::vector<int> dims(n, 2);
    std::vector<double> U = c;
    for (int i = 0; i < n; ++i)
        if (i != k) {
            Eigen::Matrix<double, 1, 2> row = h[i].transpose();
            U = contract_mode(U, dims, i, row);
        }
    return {U[0], U[1]};
}

}  // namespace

NQubitRay::NQubitRay(int n_, Ray<cplx> r) : n(n_), ray(std::move(r)) { require_qubits(ray.dimension(), n, "NQubitRay"); }

Vec<cplx> ProductState::assemble() const {
    Vec<cplx> v = Vec<cplx>::Ones(1);
    for (const auto& f : factors) {
        require_dim(static_cast<int>(f.size()), 2, "product factor");
        if (std::abs(f.norm() - 1) > tol::normalization) throw InvalidInput("product factor is not a unit vector");
        v = kron<cplx>(v, f);
    }
    return v;
}

ProductState ProductState::from_bloch(const std::vector<Bloch>& r) {
    ProductState s;
    for (const auto& b : r) s.factors.push_back(bloch_to_ray(b.normalized()));
    return s;
}

Mat<cplx> pauli(int j) {
    Mat<cplx> m(2, 2);
    const cplx i(0, 1);
    switch (j) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw InvalidInput("pauli index must be 0..3");
    }
    return m;
}

Mat<cplx> bloch_observable(const Bloch& a) { return a(0) * pauli(1) + a(1) * pauli(2) + a(2) * pauli(3); }

MkSettings mk_settings(const std::vector<Bloch>& a, const std::vector<Bloch>& ap) {
    if (a.size() != ap.size()) throw DimensionMismatch("MK settings need two observables per qubit");
    MkSettings s;
    for (size_t k = 0; k < a.size(); ++k) {
        s.A.push_back(bloch_observable(a[k].normalized()));
        s.Ap.push_back(bloch_observable(ap[k].normalized()));
    }
    return s;
}

std::vector<double> mk_coefficients(int n) {
    if (n < 1) throw InvalidInput("MK operator needs n >= 1");
    std::vector<double> c = {1, 0}, cp = {0, 1};
    for (int k = 2; k <= n; ++k) {
        std::vector<double> nc(2 * c.size()), ncp(2 * c.size());
        for (size_t s = 0; s < c.size(); ++s) {
            nc[2 * s] = 0.5 * (c[s] + cp[s]);
            nc[2 * s + 1] = 0.5 * (c[s] - cp[s]);
            ncp[2 * s] = 0.5 * (cp[s] - c[s]);
            ncp[2 * s + 1] = 0.5 * (cp[s] + c[s]);
        }
        c = std::move(nc);
        cp = std::move(ncp);
    }
    return c;
}

Mat<cplx> mk_operator(int n, const MkSettings& s) {
    if (n < 1) throw InvalidInput("MK operator needs n >= 1");
    if (static_cast<int>(s.A.size()) != n || static_cast<int>(s.Ap.size()) != n)
        throw DimensionMismatch("MK settings need two observables per qubit");
    for (int k = 0; k < n; ++k)
        for (const Mat<cplx>* m : {&s.A[k], &s.Ap[k]}) {
            if (m->rows() != 2 || m->cols() != 2) throw DimensionMismatch("MK setting must be a qubit observable");
            if ((*m - m->adjoint()).norm() > 1e-9) throw InvalidInput("MK setting is not hermitian");
            if ((*m * *m - Mat<cplx>::Identity(2, 2)).norm() > 1e-9)
                throw InvalidInput("MK setting eigenvalues must be +1 or -1");
        }
    Mat<cplx> B = s.A[0], Bp = s.Ap[0];
    for (int k = 1; k < n; ++k) {
        Mat<cplx> sum = s.A[k] + s.Ap[k], diff = s.A[k] - s.Ap[k];
        Mat<cplx> nB = 0.5 * (kron<cplx>(B, sum) + kron<cplx>(Bp, diff));
        Mat<cplx> nBp = 0.5 * (kron<cplx>(Bp, sum) - kron<cplx>(B, diff));
        B = std::move(nB);
        Bp = std::move(nBp);
    }
    return B;
}

NQubitRay ghz(int n) {
    if (n < 2) throw InvalidInput("GHZ state needs n >= 2");
    if (n > 24) throw CapExceeded("GHZ state capped at 24 qubits");
    Vec<cplx> v = Vec<cplx>::Zero(1L << n);
    v(0) = v((1L << n) - 1) = 1;
    return NQubitRay(n, Ray<cplx>(v));
}

std::vector<double> correlation_tensor(const Vec<cplx>& x, int n) {
    require_qubits(static_cast<int>(x.size()), n, "correlation_tensor");
    // split off h leading qubits so the pair tensor stays at 4^(n-h) entries
    const int h = n <= 8 ? 0 : n / 2, m = n - h;
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> X(x.data(), 1L << h,
                                                                                             1L << m);
    std::vector<double> T(pow3(n));
    const long lead = pow3(h), tail = pow3(m);
    for (long j1 = 0; j1 < lead; ++j1) {
        Mat<cplx> Z = h == 0 ? Mat<cplx>(X.adjoint() * X) : Mat<cplx>(X.adjoint() * pauli_string(j1, h) * X);
        std::vector<double> t = pauli_components(Z.transpose(), m);
        std::copy(t.begin(), t.end(), T.begin() + j1 * tail);
    }
    return T;
}

SupResult separable_sup(const Mat<cplx>& A, int n, const SupOptions& opt) {
    require_qubits(static_cast<int>(A.rows()), n, "separable_sup");
    require_dim(static_cast<int>(A.cols()), static_cast<int>(A.rows()), "separable_sup");
    if (opt.restarts < 1) throw InvalidInput("separable_sup needs at least one restart");
    const Mat<cplx> H = 0.5 * (A + A.adjoint());
    const int R = 2 * opt.restarts;
    std::vector<double> vals(R);
    std::vector<ProductState> args(R);
    parallel_for(R, [&](int r) {
        const double sign = r % 2 == 0 ? 1.0 : -1.0;
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r / 2)));
        ProductState s;
        for (int k = 0; k < n; ++k) s.factors.push_back(bloch_to_ray(random_bloch(rng)));
        double best = -std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
            double v = 0;
            for (int k = 0; k < n; ++k) {
                Mat<cplx> E(1L << n, 2);
                for (int b = 0; b < 2; ++b) {
                    ProductState t = s;
                    t.factors[k] = Vec<cplx>::Unit(2, b);
                    E.col(b) = t.assemble();
                }
                Mat<cplx> M = sign * (E.adjoint() * H * E);
                Eigen::SelfAdjointEigenSolver<Mat<cplx>> es((0.5 * (M + M.adjoint())).eval());
                s.factors[k] = es.eigenvectors().col(1);
                v = es.eigenvalues()(1);
            }
            bool done = v - best < opt.tol;
            best = std::max(best, v);
            if (done) break;
        }
        vals[r] = std::abs(best);
        args[r] = s;
    });
    int b = 0;
    for (int r = 1; r < R; ++r)
        if (vals[r] > vals[b]) b = r;
    return {vals[b], args[b]};
}

double separable_sup_grid(const Mat<cplx>& A, double step) {
    require_dim(static_cast<int>(A.rows()), 4, "separable_sup_grid");
    const Mat<cplx> H = 0.5 * (A + A.adjoint());
    double best = 0;
    for (double theta = 0; theta <= kPi + 1e-12; theta += step)
        for (double phi = 0; phi < 2 * kPi; phi += step) {
            Vec<cplx> f(2);
            f << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
            Mat<cplx> E = kron<cplx>(Mat<cplx>(f), Mat<cplx>::Identity(2, 2));
            Mat<cplx> M = E.adjoint() * H * E;
            Eigen::SelfAdjointEigenSolver<Mat<cplx>> es((0.5 * (M + M.adjoint())).eval(), Eigen::EigenvaluesOnly);
            best = std::max({best, std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1))});
            if (theta == 0) break;  // φ is irrelevant at the pole
        }
    return best;
}

Witness normalize_witness(const Mat<cplx>& A, int n, const SupOptions& opt) {
    HermitianOperator<cplx> h(A);
    double sup = separable_sup(h.matrix(), n, opt).value;
    if (sup <= 1e-10) throw Degenerate("separable-sup-vanishes", "separable supremum vanishes");
    Witness w;
    w.op = h.matrix() / sup;
    w.raw_sup = sup;
    w.separable_sup = separable_sup(w.op, n, opt).value;
    w.norm = HermitianOperator<cplx>(w.op).operator_norm();
    if (w.norm <= 1 + 1e-9) throw NotAWitness(w.norm);
    return w;
}

double mk_separable_sup(int n, const std::vector<Bloch>& a, const std::vector<Bloch>& ap, int restarts,
                        std::uint64_t seed) {
    if (static_cast<int>(a.size()) != n || static_cast<int>(ap.size()) != n)
        throw DimensionMismatch("MK settings need two observables per qubit");
    const std::vector<double> c = mk_coefficients(n);
    double best = 0;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<Bloch> rv(n);
        std::vector<Eigen::Vector2d> h(n);
        for (int k = 0; k < n; ++k) {
            rv[k] = random_bloch(rng);
            h[k] = {a[k].dot(rv[k]), ap[k].dot(rv[k])};
        }
        double prev = 0;
        for (int sweep = 0; sweep < 200; ++sweep) {
            double v = 0;
            for (int k = 0; k < n; ++k) {
                Eigen::Vector2d g = partial_multilinear(c, n, h, k);
                Bloch dir = g(0) * a[k] + g(1) * ap[k];
                double len = dir.norm();
                if (len < 1e-300) continue;
                rv[k] = dir / len;
                h[k] = {a[k].dot(rv[k]), ap[k].dot(rv[k])};
                v = len;
            }
            bool done = v - prev < 1e-10 * std::max(1.0, prev);
            prev = std::max(prev, v);
            if (done) break;
        }
        best = std::max(best, prev);
    }
    return best;
}

ProjectorSup projector_sup(const Vec<cplx>& x, int n, int restarts, std::uint64_t seed) {
    require_qubits(static_cast<int>(x.size()), n, "projector_sup");
    const long D = 1L << n;
    double upper = 1;
    std::vector<Vec<cplx>> top(n);
    for (int k = 0; k < n; ++k) {
        Mat<cplx> M(2, D / 2);
        const long lo = 1L << (n - 1 - k);
        for (long i = 0; i < D; ++i) {
            long bit = (i / lo) & 1, rest = (i / (2 * lo)) * lo + i % lo;
            M(bit, rest) = x(i);
        }
        Eigen::JacobiSVD<Mat<cplx>> svd(M, Eigen::ComputeFullU);
        double s = svd.singularValues()(0);
        upper = std::min(upper, s * s);
        top[k] = svd.matrixU().col(0).conjugate();
    }
    // overlap: |<s, x>| with s = ⊗ f_k, f_k updated to the normalized partial contraction
    auto run = [&](std::vector<Vec<cplx>> f) {
        double prev = 0;
        for (int sweep = 0; sweep < 200; ++sweep) {
            double v = 0;
            for (int k = 0; k < n; ++k) {
                std::vector<int> dims(n, 2);
                std::vector<cplx> U(x.data(), x.data() + D);
                for (int m = 0; m < n; ++m)
                    if (m != k) {
                        Eigen::Matrix<cplx, 1, 2> row = f[m].adjoint();
                        U = contract_mode(U, dims, m, row);
                    }
                Eigen::Vector2cd g(U[0], U[1]);
                double len = g.norm();
                if (len < 1e-300) continue;
                f[k] = g / len;
                v = len * len;
            }
            bool done = v - prev < 1e-13;
            prev = std::max(prev, v);
            if (done) break;
        }
        return prev;
    };
    std::vector<Vec<cplx>> init(n);
    for (int k = 0; k < n; ++k) init[k] = top[k].conjugate();
    double lower = run(init);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        for (int k = 0; k < n; ++k) init[k] = bloch_to_ray(random_bloch(rng));
        lower = std::max(lower, run(init));
    }
    return {std::min(lower, upper), upper};
}

std::string FamilyOptions::describe() const {
    std::ostringstream os;
    os << "{";
    if (mk) os << "mermin-klyshko(restarts=" << mk_restarts << ",sweeps=" << mk_sweeps << ",sup_restarts=" << sup_restarts << ")";
    if (mk && projector) os << ",";
    if (projector) os << "projector(schmidt-cut)";
    os << "}";
    return os.str();
}

Estimate entanglement_estimate(const NQubitRay& x, const FamilyOptions& fam) {
    if (!fam.mk && !fam.projector) throw InvalidInput("witness family is empty");
    const int n = x.n;
    const Vec<cplx>& v = x.ray.vector();
    Estimate e;
    if (fam.projector && n >= 1) {
        ProjectorSup ps = projector_sup(v, n, 2, derive_seed(fam.seed, 1));
        // |x><x| / upper has separable sup <= 1, so 1/upper is a family value
        e.projector_value = 1.0 / ps.upper;
        e.projector_certified = ps.upper - ps.lower <= 1e-9;
        e.value = std::max(e.value, e.projector_value);
    }
    if (fam.mk && n >= 2) {
        const std::vector<double> T = correlation_tensor(v, n);
        const std::vector<double> c = mk_coefficients(n);
        for (int r = 0; r < fam.mk_restarts; ++r) {
            Rng rng(derive_seed(fam.seed, 100 + static_cast<std::uint64_t>(r)));
            std::vector<Bloch> a(n), ap(n);
            std::vector<Eigen::Matrix<double, 2, 3>> St(n);
            for (int k = 0; k < n; ++k) {
                a[k] = random_bloch(rng);
                ap[k] = random_bloch(rng);
                St[k].row(0) = a[k].transpose();
                St[k].row(1) = ap[k].transpose();
            }
            double val = 0;
            for (int sweep = 0; sweep < fam.mk_sweeps; ++sweep) {
                double prev = std::abs(val);
                std::vector<double> P = T;
                std::vector<int> pdims(n, 3);
                for (int k = 0; k < n; ++k) {
                    Eigen::Matrix<double, 3, 2> G = partial_form(P, c, n, St, k);
                    double cur = (G.array() * St[k].transpose().array()).sum();
                    double sg = cur < 0 ? -1.0 : 1.0;
                    double n0 = G.col(0).norm(), n1 = G.col(1).norm();
                    if (n0 > 1e-300) a[k] = sg * G.col(0) / n0;
                    if (n1 > 1e-300) ap[k] = sg * G.col(1) / n1;
                    St[k].row(0) = a[k].transpose();
                    St[k].row(1) = ap[k].transpose();
                    val = sg * (n0 + n1);
                    P = contract_mode(P, pdims, k, St[k]);
                }
                if (std::abs(val) - prev < 1e-10 * std::max(1.0, prev)) break;
            }
            double sup = mk_separable_sup(n, a, ap, fam.sup_restarts, derive_seed(fam.seed, 200 + static_cast<std::uint64_t>(r)));
            if (sup <= 1e-12) continue;
            double ratio = std::abs(val) / sup;
            if (ratio > e.mk_value) {
                e.mk_value = ratio;
                e.mk_raw = std::abs(val);
                e.mk_sup = sup;
                e.a = a;
                e.ap = ap;
            }
        }
        e.value = std::max(e.value, e.mk_value);
    }
    return e;
}

NQubitRay haar_ray(int n, std::uint64_t seed) {
    if (n < 1 || n > 24) throw InvalidInput("haar_ray: qubit count out of range");
    Rng rng(seed);
    return NQubitRay(n, Ray<cplx>(gaussian_vector<cplx>(1 << n, rng)));
}

std::vector<NQubitRay> haar_sample(int n, int count, std::uint64_t seed) {
    if (n < 1 || n > 24) throw InvalidInput("haar_sample: qubit count out of range");
    if (count < 0) throw InvalidInput("haar_sample: negative count");
    if (static_cast<double>(count) * std::ldexp(1.0, n) > 1e8) throw CapExceeded("haar_sample: count * 2^n exceeds 1e8");
    std::vector<NQubitRay> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(haar_ray(n, derive_seed(seed, static_cast<std::uint64_t>(i))));
    return out;
}

ConjectureReport conjecture_experiment(int n_min, int n_max, double C, int samples, std::uint64_t seed,
                                       const FamilyOptions& fam) {
    if (n_min < 2 || n_max > 12 || n_min > n_max) throw InvalidInput("n-range must lie within 2..12");
    if (samples < 1000) throw InvalidInput("conjecture experiment needs at least 1000 samples");
    if (!(C >= 0)) throw InvalidInput("constant C must be non-negative");
    if (static_cast<double>(samples) * std::ldexp(1.0, n_max) > 1e8)
        throw CapExceeded("samples * 2^n exceeds 1e8");
    ConjectureReport rep;
    rep.seed = seed;
    rep.family = fam.describe();
    for (int n = n_min; n <= n_max; ++n) {
        const std::uint64_t sn = derive_seed(seed, static_cast<std::uint64_t>(n));
        const double thr = C * std::sqrt(n * std::log(double(n)));
        std::vector<double> est(samples);
        parallel_for(samples, [&](int i) {
            NQubitRay x = haar_ray(n, derive_seed(sn, 2 * static_cast<std::uint64_t>(i)));
            FamilyOptions f = fam;
            f.seed = derive_seed(sn, 2 * static_cast<std::uint64_t>(i) + 1);
            est[i] = entanglement_estimate(x, f).value;
        });
        long exceed = 0;
        double sum = 0;
        for (double e : est) {
            exceed += e > thr;
            sum += e;
        }
        rep.records.push_back({n, samples, C, thr, double(exceed) / samples, sum / samples, sn});
    }
    rep.non_increasing = true;
    for (size_t i = 1; i < rep.records.size(); ++i)
        if (rep.records[i].exceed_fraction > rep.records[i - 1].exceed_fraction) rep.non_increasing = false;
    double mx = 0, my = 0;
    for (const auto& r : rep.records) {
        mx += r.n;
        my += r.exceed_fraction;
    }
    mx /= rep.records.size();
    my /= rep.records.size();
    double sxy = 0, sxx = 0;
    for (const auto& r : rep.records) {
        sxy += (r.n - mx) * (r.exceed_fraction - my);
        sxx += (r.n - mx) * (r.n - mx);
    }
    rep.trend_slope = sxx > 0 ? sxy / sxx : 0.0;
    return rep;
}

std::string to_csv(const ConjectureReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << "n,samples,C,threshold,exceed_fraction,mean_estimate,seed\n";
    for (const auto& x : r.records)
        os << x.n << ',' << x.samples << ',' << x.C << ',' << x.threshold << ',' << x.exceed_fraction << ','
           << x.mean_estimate << ',' << x.seed << '\n';
    return os.str();
}

}  // namespace qp::witness
