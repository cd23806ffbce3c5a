#pragma once

// Correlation polytopes: truth-table vertices, facets by double description,
// exact membership, and quantum points for the two-party two-setting scheme.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprob/core.hpp"
#include "qprob/rational.hpp"

namespace qp::polytope {

struct EventScheme {
    int n = 0;
    std::vector<std::vector<int>> monomials;
    std::vector<std::string> names;  // optional coordinate names
    void validate() const;
    int dim() const { return static_cast<int>(monomials.size()); }
};

// x1, x2, y1, y2, x1y1, x1y2, x2y1, x2y2
EventScheme ch_scheme();

struct CorrelationPolytope {
    EventScheme scheme;
    std::vector<std::vector<int>> vertices;
};

// lo <= coeffs·p <= hi (either bound may be absent)
struct LinearInequality {
    std::vector<Rational> coeffs;
    std::optional<Rational> lo, hi;

    bool satisfied_by(const std::vector<Rational>& p) const;
    Rational evaluate(const std::vector<Rational>& p) const;
    bool operator==(const LinearInequality& o) const;
    bool operator<(const LinearInequality& o) const;
    std::string to_string() const;
};

// Scales to coprime integers and makes the first non-zero coefficient
// positive, flipping a lower bound into an upper bound when needed.
LinearInequality canonical(LinearInequality f);

class DegeneratePolytope : public InvalidInput {
public:
    DegeneratePolytope(std::vector<LinearInequality> hull)
        : InvalidInput("polytope is not full-dimensional"), hull_(std::move(hull)) {}
    const std::vector<LinearInequality>& affine_hull() const { return hull_; }

private:
    std::vector<LinearInequality> hull_;
};

CorrelationPolytope vertices(const EventScheme& s);

struct Membership {
    bool inside = false;
    std::vector<Rational> weights;              // convex weights per vertex when inside
    std::optional<LinearInequality> separator;  // when outside: holds on every vertex, fails at p
};

Membership membership(const std::vector<Rational>& p, const CorrelationPolytope& poly);

// exact check that `f` holds on every vertex of poly and fails at p
bool separates(const LinearInequality& f, const CorrelationPolytope& poly, const std::vector<Rational>& p);

std::vector<LinearInequality> facets(const CorrelationPolytope& poly);

// every vertex satisfies f and the tight vertices span a hyperplane
bool is_facet(const LinearInequality& f, const CorrelationPolytope& poly);

// the canonical CH inequalities -1 <= value <= 0 written as two one-sided facets
std::vector<LinearInequality> ch_inequalities();
// images of an inequality on the CH scheme under x1<->x2, y1<->y2 and x<->y
std::vector<LinearInequality> ch_relabelings(const LinearInequality& f);

double ch_value(const std::vector<double>& p);
Rational ch_value(const std::vector<Rational>& p);

struct QuantumSetup {
    Ray<cplx> a1, a2, b1, b2;
    DensityOperator<cplx> W;
};

std::vector<double> quantum_point(const QuantumSetup& s);

// ray (cos θ/2, e^{iφ} sin θ/2)
Ray<cplx> bloch_ray(double theta, double phi);

struct ViolationOptions {
    int restarts = 64;
    std::uint64_t seed = 0;
    bool product_only = false;
    int max_sweeps = 500;
};

struct Violation {
    QuantumSetup setup;
    double value;
    std::vector<double> point;
    int best_restart;
};

Violation maximize_violation(const ViolationOptions& opt = {});
Violation evaluate_setup(const QuantumSetup& s);

}  // namespace qp::polytope
