#pragma once

// Entanglement witnesses on n qubits: separable suprema, Mermin-Klyshko
// operators, GHZ benchmarks and Haar-sampled estimates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qprob/core.hpp"

namespace qp::witness {

using Bloch = Eigen::Vector3d;

struct NQubitRay {
    int n;
    Ray<cplx> ray;
    NQubitRay(int n, Ray<cplx> r);
};

struct ProductState {
    std::vector<Vec<cplx>> factors;  // unit vectors in C^2
    Vec<cplx> assemble() const;
    static ProductState from_bloch(const std::vector<Bloch>& r);
};

class NotAWitness : public InvalidInput {
public:
    explicit NotAWitness(double norm)
        : InvalidInput("operator norm " + std::to_string(norm) + " does not exceed 1 after normalization"), norm_(norm) {}
    double norm() const { return norm_; }

private:
    double norm_;
};

struct SupOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int max_sweeps = 1000;
};

struct SupResult {
    double value;  // lower bound on sup |<s, A s>| over product states
    ProductState argmax;
};

SupResult separable_sup(const Mat<cplx>& A, int n, const SupOptions& opt = {});

// n = 2 cross-check: 0.01 rad grid on the first qubit's Bloch angles, exact
// best second factor for each grid point
double separable_sup_grid(const Mat<cplx>& A, double step = 0.01);

struct Witness {
    Mat<cplx> op;        // normalized
    double raw_sup;      // separable sup of the input operator
    double separable_sup;
    double norm;
};

Witness normalize_witness(const Mat<cplx>& A, int n, const SupOptions& opt = {});

// A = a·σ, A' = a'·σ on every qubit
struct MkSettings {
    std::vector<Mat<cplx>> A, Ap;
};

Mat<cplx> pauli(int j);  // 0 = identity, 1..3 = x, y, z
Mat<cplx> bloch_observable(const Bloch& a);
MkSettings mk_settings(const std::vector<Bloch>& a, const std::vector<Bloch>& ap);

Mat<cplx> mk_operator(int n, const MkSettings& s);

// coefficient of ⊗_k (s_k ? A'_k : A_k) in B_n, index s with qubit 1 most significant
std::vector<double> mk_coefficients(int n);

NQubitRay ghz(int n);

// correlation tensor T_j = <x, σ_j1 ⊗ ... ⊗ σ_jn x>, j_k in {x,y,z}, 3^n entries
std::vector<double> correlation_tensor(const Vec<cplx>& x, int n);

struct FamilyOptions {
    bool mk = true;
    bool projector = true;
    int mk_restarts = 4;
    int mk_sweeps = 50;
    int sup_restarts = 32;
    std::uint64_t seed = 0;
    std::string describe() const;
    // cheaper settings used for Monte Carlo runs
    static FamilyOptions survey() { return {true, true, 2, 20, 4, 0}; }
};

struct Estimate {
    double value = 0;          // max over the family
    double mk_value = 0;       // |<x, B x>| / sup, best restart
    double mk_raw = 0;         // |<x, B x>| before normalization
    double mk_sup = 0;         // separable sup of that B
    double projector_value = 0;
    bool projector_certified = false;
    std::vector<Bloch> a, ap;  // best MK settings
};

Estimate entanglement_estimate(const NQubitRay& x, const FamilyOptions& fam = {});

// separable sup of the MK operator with Bloch settings, via the multilinear form
double mk_separable_sup(int n, const std::vector<Bloch>& a, const std::vector<Bloch>& ap, int restarts,
                        std::uint64_t seed);

// max over product states of |<s, x>|^2: alternating lower bound and the
// smallest top Schmidt coefficient^2 over single-qubit cuts as upper bound
struct ProjectorSup {
    double lower, upper;
};
ProjectorSup projector_sup(const Vec<cplx>& x, int n, int restarts = 8, std::uint64_t seed = 0);

std::vector<NQubitRay> haar_sample(int n, int count, std::uint64_t seed);
NQubitRay haar_ray(int n, std::uint64_t seed);

struct ConjectureRecord {
    int n;
    int samples;
    double C;
    double threshold;
    double exceed_fraction;
    double mean_estimate;
    std::uint64_t seed;
};

struct ConjectureReport {
    std::vector<ConjectureRecord> records;
    std::uint64_t seed;
    std::string family;
    bool non_increasing;
    double trend_slope;  // least-squares slope of exceed_fraction against n
};

ConjectureReport conjecture_experiment(int n_min, int n_max, double C, int samples, std::uint64_t seed,
                                       const FamilyOptions& fam = FamilyOptions::survey());

std::string to_csv(const ConjectureReport& r);

}  // namespace qp::witness
