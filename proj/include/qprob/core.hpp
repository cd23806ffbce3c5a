#pragma once

// Rays, subspaces and density operators over R or C.  Everything here is a
// value type; the scalar type S is either double or std::complex<double>.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "qprob/errors.hpp"

namespace qp {

using cplx = std::complex<double>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

namespace tol {
inline constexpr double normalization = 1e-12;
inline constexpr double subspace = 1e-9;
inline constexpr double rank = 1e-10;
inline constexpr double hermitian = 1e-12;
inline constexpr double density = 1e-10;
}  // namespace tol

template <class S>
inline constexpr bool is_complex_v = !std::is_same_v<S, double>;

inline double re(double x) { return x; }
inline double re(cplx x) { return x.real(); }

inline void require_dim(int a, int b, const char* where) {
    if (a != b)
        throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

// Orthonormal basis of the null space of M (rows are constraints).
template <class S>
Mat<S> null_space(const Mat<S>& M, int d) {
    if (M.rows() == 0 || M.cwiseAbs().maxCoeff() == 0.0) return Mat<S>::Identity(d, d);
    Eigen::JacobiSVD<Mat<S>> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol::rank * smax) ++r;
    return svd.matrixV().rightCols(d - r);
}

// Orthonormal basis of the column span of C.
template <class S>
Mat<S> orthonormal_span(const Mat<S>& C) {
    const int d = static_cast<int>(C.rows());
    if (C.cols() == 0 || C.cwiseAbs().maxCoeff() == 0.0) return Mat<S>(d, 0);
    Eigen::JacobiSVD<Mat<S>> svd(C, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol::rank * s(0)) ++r;
    return svd.matrixU().leftCols(r);
}

template <class S>
class Ray {
public:
    explicit Ray(Vec<S> v) : v_(std::move(v)) {
        double n = v_.norm();
        if (!(n > 1e-300) || !std::isfinite(n)) throw InvalidInput("ray from zero or non-finite vector");
        v_ /= n;
    }
    const Vec<S>& vector() const { return v_; }
    int dimension() const { return static_cast<int>(v_.size()); }

    // sine of the angle between the lines
    double distance(const Ray& o) const {
        require_dim(dimension(), o.dimension(), "ray distance");
        // norm of the orthogonal part; 1 - c² loses everything below ~1e-8
        return (o.v_ - v_ * v_.dot(o.v_)).norm();
    }
    bool same_line(const Ray& o, double eps = tol::subspace) const { return distance(o) <= eps; }

private:
    Vec<S> v_;
};

template <class S>
class Subspace {
public:
    static Subspace zero(int d) { return Subspace(Mat<S>(d, 0), d); }
    static Subspace full(int d) { return Subspace(Mat<S>::Identity(d, d), d); }
    static Subspace span(const Mat<S>& cols) {
        return Subspace(orthonormal_span<S>(cols), static_cast<int>(cols.rows()));
    }
    static Subspace of(const Ray<S>& r) { return Subspace(Mat<S>(r.vector()), r.dimension()); }
    static Subspace span_of(const std::vector<Vec<S>>& vs, int d) {
        Mat<S> C(d, static_cast<int>(vs.size()));
        for (size_t i = 0; i < vs.size(); ++i) {
            require_dim(static_cast<int>(vs[i].size()), d, "span");
            C.col(static_cast<int>(i)) = vs[i];
        }
        return span(C);
    }
    // basis must already be orthonormal
    static Subspace from_orthonormal(Mat<S> basis) {
        int d = static_cast<int>(basis.rows());
        return Subspace(std::move(basis), d);
    }

    const Mat<S>& basis() const { return B_; }
    int ambient() const { return d_; }
    int dim() const { return static_cast<int>(B_.cols()); }
    Mat<S> projector() const { return B_ * B_.adjoint(); }

    bool contains(const Vec<S>& v) const {
        require_dim(static_cast<int>(v.size()), d_, "contains");
        Vec<S> r = v - B_ * (B_.adjoint() * v);
        return r.norm() <= tol::subspace * std::max(1.0, v.norm());
    }
    bool leq(const Subspace& o) const {
        require_dim(d_, o.d_, "leq");
        if (dim() == 0) return true;
        Mat<S> r = B_ - o.B_ * (o.B_.adjoint() * B_);
        return r.norm() <= tol::subspace * std::sqrt(double(dim()));
    }
    // equal dimension and largest principal angle below tolerance
    bool equals(const Subspace& o) const {
        require_dim(d_, o.d_, "equals");
        return dim() == o.dim() && leq(o);
    }

private:
    Subspace(Mat<S> b, int d) : B_(std::move(b)), d_(d) {}
    Mat<S> B_;
    int d_;
};

template <class S>
Subspace<S> ortho_complement(const Subspace<S>& X) {
    if (X.dim() == 0) return Subspace<S>::full(X.ambient());
    Mat<S> adj = X.basis().adjoint();
    return Subspace<S>::from_orthonormal(null_space<S>(adj, X.ambient()));
}

template <class S>
Subspace<S> meet(const Subspace<S>& X, const Subspace<S>& Y) {
    require_dim(X.ambient(), Y.ambient(), "meet");
    const int d = X.ambient();
    Mat<S> M(2 * d, d);
    M.topRows(d) = Mat<S>::Identity(d, d) - X.projector();
    M.bottomRows(d) = Mat<S>::Identity(d, d) - Y.projector();
    return Subspace<S>::from_orthonormal(null_space<S>(M, d));
}

// X ∪ Y = (X⊥ ∩ Y⊥)⊥
template <class S>
Subspace<S> join(const Subspace<S>& X, const Subspace<S>& Y) {
    require_dim(X.ambient(), Y.ambient(), "join");
    return ortho_complement(meet(ortho_complement(X), ortho_complement(Y)));
}

template <class S>
bool orthogonal(const Subspace<S>& X, const Subspace<S>& Y) {
    require_dim(X.ambient(), Y.ambient(), "orthogonal");
    if (X.dim() == 0 || Y.dim() == 0) return true;
    return (X.basis().adjoint() * Y.basis()).norm() <= tol::subspace;
}

template <class S>
bool compatible(const Subspace<S>& X, const Subspace<S>& Y) {
    require_dim(X.ambient(), Y.ambient(), "compatible");
    Mat<S> P = X.projector(), Q = Y.projector();
    return (P * Q - Q * P).norm() <= tol::subspace;
}

template <class S>
class HermitianOperator {
public:
    explicit HermitianOperator(Mat<S> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw DimensionMismatch("hermitian operator must be square");
        double scale = std::max(1.0, m_.norm());
        if ((m_ - m_.adjoint()).norm() > tol::hermitian * scale)
            throw InvalidInput("operator is not hermitian");
        m_ = (0.5 * (m_ + m_.adjoint())).eval();
    }
    const Mat<S>& matrix() const { return m_; }
    int dimension() const { return static_cast<int>(m_.rows()); }
    Eigen::VectorXd eigenvalues() const { return Eigen::SelfAdjointEigenSolver<Mat<S>>(m_).eigenvalues(); }
    double operator_norm() const { return eigenvalues().cwiseAbs().maxCoeff(); }

private:
    Mat<S> m_;
};

template <class S>
class DensityOperator {
public:
    explicit DensityOperator(Mat<S> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw DimensionMismatch("density operator must be square");
        if ((m_ - m_.adjoint()).norm() > tol::hermitian * std::max(1.0, m_.norm()))
            throw InvalidInput("density operator is not hermitian");
        m_ = (0.5 * (m_ + m_.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Mat<S>> es(m_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol::density) throw InvalidInput("density operator has a negative eigenvalue");
        if (std::abs(re(m_.trace()) - 1.0) > tol::density) throw InvalidInput("density operator trace is not 1");
    }
    static DensityOperator pure(const Ray<S>& r) { return DensityOperator(r.vector() * r.vector().adjoint()); }
    static DensityOperator maximally_mixed(int d) { return DensityOperator(Mat<S>::Identity(d, d) / double(d)); }

    const Mat<S>& matrix() const { return m_; }
    int dimension() const { return static_cast<int>(m_.rows()); }

private:
    Mat<S> m_;
};

struct Probability {
    double value;  // clamped to [0,1]
    double raw;
};

template <class S>
Probability born_probability(const DensityOperator<S>& W, const Subspace<S>& X) {
    require_dim(W.dimension(), X.ambient(), "born_probability");
    double raw = 0.0;
    if (X.dim() > 0) raw = re((X.basis().adjoint() * W.matrix() * X.basis()).trace());
    return {std::clamp(raw, 0.0, 1.0), raw};
}

template <class S>
DensityOperator<S> luders_update(const DensityOperator<S>& W, const Subspace<S>& X) {
    Probability p = born_probability(W, X);
    if (p.raw <= 1e-12) throw NullConditioning("conditioning on an event of probability " + std::to_string(p.raw));
    Mat<S> P = X.projector();
    Mat<S> m = P * W.matrix() * P / p.raw;
    return DensityOperator<S>(m);
}

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
    Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <class S>
Vec<S> kron(const Vec<S>& a, const Vec<S>& b) {
    Vec<S> out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

template <class S>
Ray<S> tensor_ray(const Ray<S>& x, const Ray<S>& y) {
    return Ray<S>(kron<S>(x.vector(), y.vector()));
}

enum class Side { left, right };

// a ⊗ 1 (side = left) or 1 ⊗ a (side = right); other_dim is the dimension of
// the identity factor.
template <class S>
Subspace<S> tensor_event(const Subspace<S>& a, Side side, int other_dim) {
    if (other_dim < 1) throw DimensionMismatch("tensor_event: other factor dimension must be positive");
    Mat<S> I = Mat<S>::Identity(other_dim, other_dim);
    Mat<S> B = side == Side::left ? kron<S>(a.basis(), I) : kron<S>(I, a.basis());
    return Subspace<S>::from_orthonormal(B);
}

// Σ_i P(y ∩ x_i) over a context {x_i} resolving the identity.
template <class S>
Probability context_decomposition_probability(const DensityOperator<S>& W, const Subspace<S>& y,
                                              const std::vector<Subspace<S>>& context) {
    const int d = W.dimension();
    require_dim(y.ambient(), d, "context_decomposition_probability");
    int total = 0;
    for (size_t i = 0; i < context.size(); ++i) {
        require_dim(context[i].ambient(), d, "context member");
        total += context[i].dim();
        for (size_t j = i + 1; j < context.size(); ++j)
            if (!orthogonal(context[i], context[j]))
                throw InvalidInput("context members " + std::to_string(i) + " and " + std::to_string(j) +
                                   " are not orthogonal");
    }
    if (total != d) throw InvalidInput("context does not resolve the identity");
    double raw = 0.0;
    for (size_t i = 0; i < context.size(); ++i) {
        if (!compatible(y, context[i]))
            throw InvalidInput("event is incompatible with context member " + std::to_string(i));
        raw += born_probability(W, meet(y, context[i])).raw;
    }
    return {std::clamp(raw, 0.0, 1.0), raw};
}

}  // namespace qp
