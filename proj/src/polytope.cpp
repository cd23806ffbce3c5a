#include "qprob/polytope.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qprob/lp.hpp"
#include "qprob/parallel.hpp"
#include "qprob/random.hpp"

namespace qp::polytope {

namespace {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(QMat& M, int cols) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(M.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(M.size()); ++i)
            if (sgn(M[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(M[r], M[p]);
        Rational inv = 1 / M[r][c];
        for (auto& x : M[r]) x *= inv;
        for (int i = 0; i < static_cast<int>(M.size()); ++i) {
            if (i == r || sgn(M[i][c]) == 0) continue;
            Rational f = M[i][c];
            for (int k = 0; k < cols; ++k) M[i][k] -= f * M[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank_of(QMat M, int cols) { return static_cast<int>(rref(M, cols).size()); }

// basis of {h : M h = 0}
QMat null_space(QMat M, int cols) {
    auto piv = rref(M, cols);
    std::vector<char> is_piv(cols, 0);
    for (int c : piv) is_piv[c] = 1;
    QMat out;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec h(cols, Rational(0));
        h[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) h[piv[i]] = -M[i][f];
        out.push_back(std::move(h));
    }
    return out;
}

// positive multiple with coprime integer entries
void make_primitive(QVec& v) {
    mpz_class l = 1, g = 0;
    for (auto& x : v) {
        x.canonicalize();
        if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    for (auto& x : v) {
        x *= l;
        if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g != 0 && g != 1)
        for (auto& x : v) x /= Rational(g);
}

QVec homogenized(const std::vector<int>& v) {
    QVec r(v.size() + 1);
    r[0] = 1;
    for (size_t i = 0; i < v.size(); ++i) r[i + 1] = v[i];
    return r;
}

QVec as_rational(const std::vector<int>& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

}  // namespace

void EventScheme::validate() const {
    if (n < 1) throw InvalidInput("event scheme needs at least one basic event");
    if (monomials.empty()) throw InvalidInput("event scheme has no monomials");
    if (!names.empty() && names.size() != monomials.size())
        throw DimensionMismatch("event scheme names do not match the monomials");
    std::set<std::vector<int>> seen;
    size_t last = 1;
    for (const auto& m : monomials) {
        if (m.empty()) throw InvalidInput("empty monomial");
        std::vector<int> s = m;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidInput("monomial repeats an event");
        for (int i : s)
            if (i < 0 || i >= n) throw InvalidInput("monomial index " + std::to_string(i) + " out of range");
        if (!seen.insert(s).second) throw InvalidInput("duplicate monomial");
        if (s.size() < last) throw InvalidInput("singletons must be listed before pairs");
        last = s.size();
    }
}

EventScheme ch_scheme() {
    EventScheme s;
    s.n = 4;
    s.monomials = {{0}, {1}, {2}, {3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
    s.names = {"x1", "x2", "y1", "y2", "x1y1", "x1y2", "x2y1", "x2y2"};
    return s;
}

Rational LinearInequality::evaluate(const std::vector<Rational>& p) const {
    require_dim(static_cast<int>(p.size()), static_cast<int>(coeffs.size()), "inequality");
    return dot(coeffs, p);
}

bool LinearInequality::satisfied_by(const std::vector<Rational>& p) const {
    Rational v = evaluate(p);
    return (!lo || v >= *lo) && (!hi || v <= *hi);
}

bool LinearInequality::operator==(const LinearInequality& o) const {
    return coeffs == o.coeffs && lo == o.lo && hi == o.hi;
}

bool LinearInequality::operator<(const LinearInequality& o) const {
    if (coeffs != o.coeffs) return coeffs < o.coeffs;
    if (lo != o.lo) return lo < o.lo;
    return hi < o.hi;
}

std::string LinearInequality::to_string() const {
    std::ostringstream os;
    if (lo) os << qp::to_string(*lo) << " <= ";
    os << "[";
    for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? " " : "") << qp::to_string(coeffs[i]);
    os << "]";
    if (hi) os << " <= " << qp::to_string(*hi);
    return os.str();
}

LinearInequality canonical(LinearInequality f) {
    if (std::all_of(f.coeffs.begin(), f.coeffs.end(), [](const Rational& x) { return sgn(x) == 0; }))
        throw InvalidInput("inequality is identically zero");
    if (!f.lo && !f.hi) throw InvalidInput("inequality has no bound");
    mpz_class l = 1, g = 0;
    for (auto& x : f.coeffs) {
        x.canonicalize();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    for (const auto& x : f.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(x.get_num() * (l / x.get_den())).get_mpz_t());
    Rational scale = Rational(l) / Rational(g);
    for (auto& x : f.coeffs) x *= scale;
    if (f.lo) *f.lo *= scale;
    if (f.hi) *f.hi *= scale;
    auto first = std::find_if(f.coeffs.begin(), f.coeffs.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (sgn(*first) < 0) {
        for (auto& x : f.coeffs) x = -x;
        std::optional<Rational> lo, hi;
        if (f.hi) lo = -*f.hi;
        if (f.lo) hi = -*f.lo;
        f.lo = lo;
        f.hi = hi;
    }
    return f;
}

CorrelationPolytope vertices(const EventScheme& s) {
    s.validate();
    if (s.n > 20) throw CapExceeded("vertex enumeration is capped at n = 20 basic events");
    CorrelationPolytope P{s, {}};
    std::set<std::vector<int>> seen;
    for (std::uint64_t a = 0; a < (std::uint64_t(1) << s.n); ++a) {
        std::vector<int> v;
        v.reserve(s.monomials.size());
        for (const auto& m : s.monomials) {
            int x = 1;
            for (int i : m) x &= int((a >> i) & 1);
            v.push_back(x);
        }
        if (seen.insert(v).second) P.vertices.push_back(std::move(v));
    }
    return P;
}

bool separates(const LinearInequality& f, const CorrelationPolytope& poly, const std::vector<Rational>& p) {
    for (const auto& v : poly.vertices)
        if (!f.satisfied_by(as_rational(v))) return false;
    return !f.satisfied_by(p);
}

Membership membership(const std::vector<Rational>& p, const CorrelationPolytope& poly) {
    const int d = poly.scheme.dim();
    require_dim(static_cast<int>(p.size()), d, "membership point");
    lp::Problem prob;
    const int m = static_cast<int>(poly.vertices.size());
    for (int v = 0; v < m; ++v) prob.add_var(0, std::nullopt);
    lp::Row sum;
    sum.sense = lp::Sense::eq;
    sum.rhs = 1;
    sum.name = "convex";
    for (int v = 0; v < m; ++v) sum.terms.push_back({v, Rational(1)});
    prob.add_row(sum);
    for (int i = 0; i < d; ++i) {
        lp::Row r;
        r.sense = lp::Sense::eq;
        r.rhs = p[i];
        r.name = "coord" + std::to_string(i);
        for (int v = 0; v < m; ++v)
            if (poly.vertices[v][i]) r.terms.push_back({v, Rational(1)});
        prob.add_row(r);
    }
    prob.objective.assign(m, Rational(0));
    lp::Result res = lp::solve(prob);
    Membership out;
    if (res.status == lp::Status::optimal) {
        out.inside = true;
        out.weights = res.x;
        return out;
    }
    if (res.status != lp::Status::infeasible || !lp::verify_farkas(prob, res.y))
        throw InternalError("membership LP returned no usable certificate");
    // every vertex: y0 + y·v >= 0 while y0 + y·p < 0
    LinearInequality f;
    f.coeffs.assign(res.y.begin() + 1, res.y.end());
    f.lo = -res.y[0];
    f = canonical(f);
    if (!separates(f, poly, p)) throw InternalError("separating hyperplane failed verification");
    out.separator = f;
    return out;
}

bool is_facet(const LinearInequality& f, const CorrelationPolytope& poly) {
    const int d = poly.scheme.dim();
    if (static_cast<int>(f.coeffs.size()) != d) return false;
    if (f.lo && f.hi) return false;
    if (!f.lo && !f.hi) return false;
    const Rational& b = f.lo ? *f.lo : *f.hi;
    QMat tight;
    for (const auto& v : poly.vertices) {
        QVec q = as_rational(v);
        if (!f.satisfied_by(q)) return false;
        if (f.evaluate(q) == b) tight.push_back(homogenized(v));
    }
    return rank_of(tight, d + 1) == d;
}

std::vector<LinearInequality> facets(const CorrelationPolytope& poly) {
    const int d = poly.scheme.dim();
    const int m = static_cast<int>(poly.vertices.size());
    if (m > 64) throw CapExceeded("facet enumeration is capped at 64 vertices");
    if (d > 12) throw CapExceeded("facet enumeration is capped at dimension 12");
    const int D = d + 1;
    QMat R;
    for (const auto& v : poly.vertices) R.push_back(homogenized(v));

    if (rank_of(R, D) < D) {
        std::vector<LinearInequality> hull;
        for (auto& h : null_space(R, D)) {
            LinearInequality e;
            e.coeffs.assign(h.begin() + 1, h.end());
            e.lo = e.hi = -h[0];
            hull.push_back(canonical(e));
        }
        std::sort(hull.begin(), hull.end());
        throw DegeneratePolytope(std::move(hull));
    }

    // greedy row basis, then the initial cone rays are the columns of its inverse
    std::vector<int> basis;
    {
        QMat acc;
        for (int i = 0; i < m && static_cast<int>(basis.size()) < D; ++i) {
            acc.push_back(R[i]);
            if (rank_of(acc, D) > static_cast<int>(basis.size()))
                basis.push_back(i);
            else
                acc.pop_back();
        }
    }
    QMat aug(D, QVec(2 * D, Rational(0)));
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) aug[i][j] = R[basis[i]][j];
        aug[i][D + i] = 1;
    }
    rref(aug, 2 * D);

    struct ConeRay {
        QVec h;
        std::uint64_t zero;
    };
    std::vector<ConeRay> rays;
    for (int j = 0; j < D; ++j) {
        ConeRay r;
        r.h.resize(D);
        for (int i = 0; i < D; ++i) r.h[i] = aug[i][D + j];
        make_primitive(r.h);
        r.zero = 0;
        for (int i = 0; i < D; ++i)
            if (i != j) r.zero |= std::uint64_t(1) << basis[i];
        rays.push_back(std::move(r));
    }

    std::vector<char> done(m, 0);
    for (int i : basis) done[i] = 1;
    for (int k = 0; k < m; ++k) {
        if (done[k]) continue;
        done[k] = 1;
        std::vector<Rational> s(rays.size());
        std::vector<int> pos, neg;
        std::vector<ConeRay> next;
        for (size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(R[k], rays[r].h);
            int sg = sgn(s[r]);
            if (sg > 0) pos.push_back(static_cast<int>(r));
            if (sg < 0) neg.push_back(static_cast<int>(r));
            if (sg >= 0) {
                ConeRay c = rays[r];
                if (sg == 0) c.zero |= std::uint64_t(1) << k;
                next.push_back(std::move(c));
            }
        }
        for (int p : pos)
            for (int q : neg) {
                std::uint64_t common = rays[p].zero & rays[q].zero;
                if (std::popcount(common) < D - 2) continue;
                bool adjacent = true;
                for (size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (static_cast<int>(r) != p && static_cast<int>(r) != q && (rays[r].zero & common) == common)
                        adjacent = false;
                if (!adjacent) continue;
                ConeRay c;
                c.h.resize(D);
                for (int i = 0; i < D; ++i) c.h[i] = s[p] * rays[q].h[i] - s[q] * rays[p].h[i];
                make_primitive(c.h);
                c.zero = common | (std::uint64_t(1) << k);
                next.push_back(std::move(c));
            }
        rays = std::move(next);
    }

    std::vector<LinearInequality> out;
    for (const auto& r : rays) {
        LinearInequality f;
        f.coeffs.assign(r.h.begin() + 1, r.h.end());
        if (std::all_of(f.coeffs.begin(), f.coeffs.end(), [](const Rational& x) { return sgn(x) == 0; })) continue;
        f.lo = -r.h[0];
        f = canonical(f);
        if (!is_facet(f, poly)) throw InternalError("double description produced a non-facet: " + f.to_string());
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<LinearInequality> ch_inequalities() {
    QVec c = {-1, 0, 0, -1, 1, 1, -1, 1};
    LinearInequality upper{c, std::nullopt, Rational(0)};
    LinearInequality lower{c, Rational(-1), std::nullopt};
    return {canonical(upper), canonical(lower)};
}

std::vector<LinearInequality> ch_relabelings(const LinearInequality& f) {
    require_dim(static_cast<int>(f.coeffs.size()), 8, "CH relabeling");
    const EventScheme s = ch_scheme();
    auto index_of = [&](std::vector<int> m) {
        std::sort(m.begin(), m.end());
        for (size_t i = 0; i < s.monomials.size(); ++i)
            if (s.monomials[i] == m) return static_cast<int>(i);
        throw InternalError("relabeling left the CH scheme");
    };
    const std::vector<std::array<int, 4>> gens = {{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 3, 0, 1}};
    std::set<std::array<int, 4>> group{{0, 1, 2, 3}};
    for (bool grew = true; grew;) {
        grew = false;
        for (auto g : std::vector<std::array<int, 4>>(group.begin(), group.end()))
            for (const auto& h : gens) {
                std::array<int, 4> gh;
                for (int i = 0; i < 4; ++i) gh[i] = h[g[i]];
                grew |= group.insert(gh).second;
            }
    }
    std::set<LinearInequality> images;
    for (const auto& sigma : group) {
        LinearInequality g = f;
        for (size_t i = 0; i < s.monomials.size(); ++i) {
            std::vector<int> img;
            for (int e : s.monomials[i]) img.push_back(sigma[e]);
            g.coeffs[index_of(img)] = f.coeffs[i];
        }
        images.insert(canonical(g));
    }
    return {images.begin(), images.end()};
}

double ch_value(const std::vector<double>& p) {
    if (p.size() != 8) throw DimensionMismatch("ch_value expects 8 coordinates");
    return p[4] + p[5] + p[7] - p[6] - p[0] - p[3];
}

Rational ch_value(const std::vector<Rational>& p) {
    if (p.size() != 8) throw DimensionMismatch("ch_value expects 8 coordinates");
    return p[4] + p[5] + p[7] - p[6] - p[0] - p[3];
}

Ray<cplx> bloch_ray(double theta, double phi) {
    Vec<cplx> v(2);
    v << std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2);
    return Ray<cplx>(v);
}

std::vector<double> quantum_point(const QuantumSetup& s) {
    for (const Ray<cplx>* r : {&s.a1, &s.a2, &s.b1, &s.b2}) require_dim(r->dimension(), 2, "quantum setup ray");
    require_dim(s.W.dimension(), 4, "quantum setup state");
    auto A = [](const Ray<cplx>& a) { return tensor_event(Subspace<cplx>::of(a), Side::left, 2); };
    auto B = [](const Ray<cplx>& b) { return tensor_event(Subspace<cplx>::of(b), Side::right, 2); };
    Subspace<cplx> A1 = A(s.a1), A2 = A(s.a2), B1 = B(s.b1), B2 = B(s.b2);
    auto P = [&](const Subspace<cplx>& X) { return born_probability(s.W, X).value; };
    return {P(A1), P(A2), P(B1), P(B2), P(meet(A1, B1)), P(meet(A1, B2)), P(meet(A2, B1)), P(meet(A2, B2))};
}

namespace {

using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;
using V2 = Eigen::Vector2cd;
using V4 = Eigen::Vector4cd;

M4 kron2(const M2& a, const M2& b) {
    M4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return r;
}

M2 trace_b(const M4& m) {
    M2 r = M2::Zero();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r(i, k) = m(2 * i, 2 * k) + m(2 * i + 1, 2 * k + 1);
    return r;
}

M2 trace_a(const M4& m) {
    M2 r = M2::Zero();
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) r(j, l) = m(j, l) + m(2 + j, 2 + l);
    return r;
}

template <class M>
auto top_vector(const M& h) {
    Eigen::SelfAdjointEigenSolver<M> es((0.5 * (h + h.adjoint())).eval());
    return es.eigenvectors().col(h.rows() - 1).eval();
}

M2 proj(const V2& v) { return v * v.adjoint(); }

struct Search {
    V2 a1, a2, b1, b2;
    V4 psi;

    M4 op() const {
        M2 I = M2::Identity();
        M2 A1 = proj(a1), A2 = proj(a2), B1 = proj(b1), B2 = proj(b2);
        return kron2(A1, B1 + B2 - I) + kron2(A2, B2 - B1) - kron2(I, B2);
    }
    double value() const { return (psi.adjoint() * op() * psi)(0, 0).real(); }

    void update_rays() {
        M2 I = M2::Identity();
        M4 rho = psi * psi.adjoint();
        a1 = top_vector<M2>(trace_b(kron2(I, proj(b1) + proj(b2) - I) * rho));
        a2 = top_vector<M2>(trace_b(kron2(I, proj(b2) - proj(b1)) * rho));
        b1 = top_vector<M2>(trace_a(kron2(proj(a1) - proj(a2), I) * rho));
        b2 = top_vector<M2>(trace_a(kron2(proj(a1) + proj(a2) - I, I) * rho));
    }
};

V2 random_bloch(Rng& rng) {
    double theta = std::acos(1 - 2 * rng.uniform());
    double phi = 2 * std::numbers::pi * rng.uniform();
    return bloch_ray(theta, phi).vector();
}

V4 kron_v(const V2& a, const V2& b) {
    V4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(2 * i + j) = a(i) * b(j);
    return r;
}

QuantumSetup to_setup(const Search& s) {
    return {Ray<cplx>(Vec<cplx>(s.a1)), Ray<cplx>(Vec<cplx>(s.a2)), Ray<cplx>(Vec<cplx>(s.b1)),
            Ray<cplx>(Vec<cplx>(s.b2)), DensityOperator<cplx>::pure(Ray<cplx>(Vec<cplx>(s.psi)))};
}

Search run_restart(const ViolationOptions& opt, int r) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
    Search s;
    s.a1 = random_bloch(rng);
    s.a2 = random_bloch(rng);
    s.b1 = random_bloch(rng);
    s.b2 = random_bloch(rng);
    V2 alpha = random_bloch(rng), beta = random_bloch(rng);
    if (opt.product_only) {
        s.psi = kron_v(alpha, beta);
    } else {
        for (int i = 0; i < 4; ++i) s.psi(i) = rng.scalar_normal<cplx>();
        s.psi.normalize();
    }
    double prev = s.value();
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        if (opt.product_only) {
            M4 O = s.op();
            M2 Ma = M2::Zero(), Mb = M2::Zero();
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    for (int j = 0; j < 2; ++j)
                        for (int l = 0; l < 2; ++l) Ma(i, k) += std::conj(beta(j)) * O(2 * i + j, 2 * k + l) * beta(l);
            alpha = top_vector<M2>(Ma);
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l)
                    for (int i = 0; i < 2; ++i)
                        for (int k = 0; k < 2; ++k) Mb(j, l) += std::conj(alpha(i)) * O(2 * i + j, 2 * k + l) * alpha(k);
            beta = top_vector<M2>(Mb);
            s.psi = kron_v(alpha, beta);
        } else {
            s.psi = top_vector<M4>(s.op());
        }
        s.update_rays();
        double v = s.value();
        if (v - prev < 1e-14) break;
        prev = v;
    }
    return s;
}

}  // namespace

Violation evaluate_setup(const QuantumSetup& s) {
    std::vector<double> p = quantum_point(s);
    return {s, ch_value(p), p, -1};
}

Violation maximize_violation(const ViolationOptions& opt) {
    if (opt.restarts < 1) throw InvalidInput("maximize_violation needs at least one restart");
    std::vector<double> vals(opt.restarts);
    std::vector<std::optional<Search>> found(opt.restarts);
    parallel_for(opt.restarts, [&](int r) {
        Search s = run_restart(opt, r);
        vals[r] = ch_value(quantum_point(to_setup(s)));
        found[r] = s;
    });
    int best = 0;
    for (int r = 1; r < opt.restarts; ++r)
        if (vals[r] > vals[best]) best = r;
    Violation v = evaluate_setup(to_setup(*found[best]));
    v.best_restart = best;
    return v;
}

}  // namespace qp::polytope
