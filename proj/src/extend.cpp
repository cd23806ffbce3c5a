#include <algorithm>

#include "qprob/gamble.hpp"
#include "qprob/random.hpp"

namespace qp::gamble {

ExtendResult extend_state(const OrthoGraph& g0, const std::vector<Rational>& p0, const OrthoGraph& g) {
    if (!g.contains(g0)) throw InvalidInput("extend_state: the small graph is not contained in the large one");
    if (g0.dimension() != g.dimension()) throw DimensionMismatch("extend_state: graphs of different dimension");
    std::string why;
    if (!verify_state(g0, p0, &why)) throw InvalidInput("extend_state: initial assignment is not a state: " + why);

    std::vector<LinearConstraint> pins;
    for (int i = 0; i < g0.size(); ++i)
        pins.push_back({{{g.index(g0.label(i)), Rational(1)}}, lp::Sense::eq, p0[i]});
    Contexts ctx = enumerate_contexts(g);
    ExtendResult out;
    out.problem = state_problem(g, ctx, {}, pins, true);
    lp::Result r = lp::solve(out.problem);
    if (r.status == lp::Status::optimal) {
        out.feasible = true;
        out.assignment = r.x;
    } else {
        out.farkas = r.y;
    }
    return out;
}

namespace {

Vec<cplx> conj_cross(const Vec<cplx>& u, const Vec<cplx>& v) {
    Vec<cplx> w(3);
    w(0) = std::conj(u(1) * v(2) - u(2) * v(1));
    w(1) = std::conj(u(2) * v(0) - u(0) * v(2));
    w(2) = std::conj(u(0) * v(1) - u(1) * v(0));
    return w;
}

}  // namespace

OrthoGraph closure(const OrthoGraph& g, int rounds, int node_cap, const std::string& prefix) {
    if (!g.realized()) throw InvalidInput("closure needs a realized graph");
    if (g.dimension() != 3) throw InvalidInput("closure is defined for dimension 3");
    std::vector<std::string> labels = g.labels();
    std::vector<Vec<cplx>> rays = g.realization();
    int counter = 0;
    OrthoGraph cur = OrthoGraph::from_realization(3, labels, rays);
    for (int round = 0; round < rounds; ++round) {
        Contexts ctx = enumerate_contexts(cur);
        std::vector<std::vector<char>> covered(cur.size(), std::vector<char>(cur.size(), 0));
        for (const auto& c : ctx.full)
            for (int a : c)
                for (int b : c) covered[a][b] = 1;
        bool grew = false;
        for (auto [a, b] : cur.edges()) {
            if (covered[a][b]) continue;
            Vec<cplx> w = conj_cross(rays[a], rays[b]);
            w.normalize();
            bool known = false;
            for (const auto& r : rays)
                if (1.0 - std::abs(r.dot(w)) <= 1e-9) {
                    known = true;
                    break;
                }
            if (known) continue;
            if ((int)rays.size() >= node_cap)
                throw CapExceeded("closure exceeds " + std::to_string(node_cap) + " nodes");
            std::string l;
            do l = prefix + std::to_string(counter++);
            while (cur.has(l) || std::find(labels.begin(), labels.end(), l) != labels.end());
            labels.push_back(l);
            rays.push_back(w);
            grew = true;
        }
        if (!grew) break;
        cur = OrthoGraph::from_realization(3, labels, rays);
    }
    cur.designated = g.designated;
    return cur;
}

std::vector<double> born_assignment(const OrthoGraph& g, const DensityOperator<cplx>& W) {
    if (!g.realized()) throw InvalidInput("born_assignment needs a realized graph");
    require_dim(W.dimension(), g.dimension(), "born_assignment");
    std::vector<double> p(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const auto& x = g.realization()[i];
        p[i] = std::clamp(re(x.dot(W.matrix() * x)), 0.0, 1.0);
    }
    return p;
}

namespace {

// Euclidean projection of a hermitian matrix onto the density operators:
// clamp the spectrum onto the probability simplex.
Mat<cplx> project_density(const Mat<cplx>& H) {
    Eigen::SelfAdjointEigenSolver<Mat<cplx>> es(0.5 * (H + H.adjoint()));
    Eigen::VectorXd lam = es.eigenvalues();
    const int d = static_cast<int>(lam.size());
    std::vector<double> s(lam.data(), lam.data() + d);
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (int k = 0; k < d; ++k) {
        cum += s[k];
        double t = (cum - 1.0) / (k + 1);
        if (s[k] - t > 0) theta = t;
    }
    for (int k = 0; k < d; ++k) lam(k) = std::max(lam(k) - theta, 0.0);
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FitResult fit_quantum_state(const OrthoGraph& g, const std::vector<double>& p, std::uint64_t seed,
                            int max_iterations) {
    if (!g.realized()) throw InvalidInput("fit_quantum_state needs a realized graph");
    if ((int)p.size() != g.size()) throw InvalidInput("assignment size differs from node count");
    const int d = g.dimension();
    const int n = g.size();
    std::vector<Mat<cplx>> X(n);
    for (int i = 0; i < n; ++i) X[i] = g.realization()[i] * g.realization()[i].adjoint();

    auto residuals = [&](const Mat<cplx>& W) {
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) r(i) = re((X[i] * W).trace()) - p[i];
        return r;
    };
    Rng rng(seed);
    Mat<cplx> W = 0.5 * Mat<cplx>::Identity(d, d) / double(d) + 0.5 * random_density<cplx>(d, rng).matrix();
    Mat<cplx> best = W;
    double best_dev = residuals(W).cwiseAbs().maxCoeff();
    int it = 0;

    // least squares first, then a smoothed max (log-sum-exp over ±r) with a
    // rising temperature; accelerated projected gradient throughout
    const double L0 = double(n);
    std::vector<double> temps{0.0, 20.0, 100.0, 500.0, 2500.0, 12500.0};
    const int per_stage = std::max(1, max_iterations / int(temps.size()));
    for (double t : temps) {
        Mat<cplx> Y = W, prev = W;
        double tk = 1.0;
        double L = t == 0.0 ? L0 : L0 * t;
        for (int s = 0; s < per_stage; ++s, ++it) {
            Eigen::VectorXd r = residuals(Y);
            Eigen::VectorXd w(n);
            if (t == 0.0) {
                w = r;
            } else {
                double m = r.cwiseAbs().maxCoeff();
                double z = 0.0;
                for (int i = 0; i < n; ++i) {
                    double a = std::exp(t * (r(i) - m)), b = std::exp(t * (-r(i) - m));
                    w(i) = a - b;
                    z += a + b;
                }
                w /= z;
            }
            Mat<cplx> G = Mat<cplx>::Zero(d, d);
            for (int i = 0; i < n; ++i) G += w(i) * X[i];
            Mat<cplx> Wn = project_density(Y - G / L);
            double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
            Y = Wn + ((tk - 1.0) / tn) * (Wn - prev);
            prev = Wn;
            tk = tn;
            double dev = residuals(Wn).cwiseAbs().maxCoeff();
            if (dev < best_dev) {
                best_dev = dev;
                best = Wn;
            }
            if (best_dev <= 1e-12) break;
        }
        W = best;
        if (best_dev <= 1e-12) break;
    }
    Mat<cplx> h = 0.5 * (best + best.adjoint());
    h /= h.trace().real();
    DensityOperator<cplx> Wd(h);
    return {Wd, residuals(Wd.matrix()).cwiseAbs().maxCoeff(), it};
}

Rational state_distance(const OrthoGraph& g, const std::vector<Rational>& p) {
    if ((int)p.size() != g.size()) throw InvalidInput("assignment size differs from node count");
    Contexts ctx = enumerate_contexts(g);
    lp::Problem prob = state_problem(g, ctx, {}, {}, false);
    int t = prob.add_var(0, Rational(1), 1);
    for (int i = 0; i < g.size(); ++i) {
        // P'(i) - t <= p(i)  and  P'(i) + t >= p(i)
        prob.add_row({{{i, Rational(1)}, {t, Rational(-1)}}, lp::Sense::le, p[i], ""});
        prob.add_row({{{i, Rational(1)}, {t, Rational(1)}}, lp::Sense::ge, p[i], ""});
    }
    lp::Result r = lp::solve(prob);
    if (r.status != lp::Status::optimal) throw InternalError("state distance LP failed");
    return r.value;
}

}  // namespace qp::gamble
