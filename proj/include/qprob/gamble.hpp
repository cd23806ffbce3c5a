#pragma once

// Orthogonality graphs and the linear programs living on them: states
// (one probability per node, contexts summing to 1) and frame functions
// (contexts summing to a common constant).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qprob/core.hpp"
#include "qprob/lp.hpp"

namespace qp::gamble {

class ValidationError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class OrthoGraph {
public:
    explicit OrthoGraph(int dimension = 3);

    int add_node(const std::string& label);
    // returns the existing index when the label is already present
    int ensure_node(const std::string& label);
    void add_edge(int a, int b);
    void add_edge(const std::string& a, const std::string& b) { add_edge(index(a), index(b)); }

    int dimension() const { return d_; }
    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(i); }
    int index(const std::string& label) const;  // throws
    std::optional<int> find(const std::string& label) const;
    bool has(const std::string& label) const { return find(label).has_value(); }
    bool adjacent(int a, int b) const;
    const std::vector<int>& neighbors(int a) const { return adj_.at(a); }
    std::vector<std::pair<int, int>> edges() const;  // i < j, sorted
    int edge_count() const;

    bool realized() const { return realization_.has_value(); }
    const std::vector<Vec<cplx>>& realization() const { return *realization_; }
    void set_realization(std::vector<Vec<cplx>> rays);  // one ray per node, normalized here
    void clear_realization() { realization_.reset(); }
    // every coordinate has zero imaginary part
    bool realization_is_real() const;

    std::map<std::string, std::string> designated;
    std::map<std::string, std::string> metadata;

    // edges are exactly the orthogonal pairs of the given rays
    static OrthoGraph from_realization(int dimension, const std::vector<std::string>& labels,
                                       const std::vector<Vec<cplx>>& rays);

    // No self loops; realized graphs: distinct rays, edges orthogonal, and
    // every orthogonal pair is an edge.  Throws ValidationError.
    void validate() const;

    // g0 ⊆ this by labels, with every edge of g0 present here
    bool contains(const OrthoGraph& g0) const;

    // union by label; edges and realizations merged (realizations must agree)
    static OrthoGraph merge(const OrthoGraph& a, const OrthoGraph& b);

private:
    int d_;
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;  // sorted
    std::optional<std::vector<Vec<cplx>>> realization_;
};

inline constexpr double orthogonality_tol = 1e-10;

using Clique = std::vector<int>;  // sorted node indices

struct Contexts {
    std::vector<Clique> full;     // maximal cliques of size d
    std::vector<Clique> partial;  // maximal cliques smaller than d
};

// Maximal cliques split by size; lexicographic order on sorted index lists.
// A clique larger than d cannot be realized and is a ValidationError.
Contexts enumerate_contexts(const OrthoGraph& g);

struct LinearConstraint {
    std::vector<std::pair<int, Rational>> terms;
    lp::Sense sense = lp::Sense::eq;
    Rational rhs;
};

using LinearForm = std::vector<std::pair<int, Rational>>;

struct StateLpResult {
    lp::Status status = lp::Status::infeasible;
    Rational value;
    std::vector<Rational> assignment;  // per node
    lp::Problem problem;
    lp::Result raw;
};

// Variables P(node) in [0,1]; full contexts sum to 1, partial contexts to at
// most 1; plus the caller's rows.
lp::Problem state_problem(const OrthoGraph& g, const Contexts& ctx, const LinearForm& objective,
                          const std::vector<LinearConstraint>& extra, bool maximize);

StateLpResult state_lp(const OrthoGraph& g, const LinearForm& objective,
                       const std::vector<LinearConstraint>& extra = {}, bool maximize = true);

// exact check of the state conditions on the graph
bool verify_state(const OrthoGraph& g, const std::vector<Rational>& p, std::string* why = nullptr);

struct Interval {
    Rational lo, hi;
};

// range of P(y) over states with P(x) = 1; throws Infeasible if none exists
Interval indeterminacy_range(const OrthoGraph& g, int x, int y);

// 0/1 states: each full context has exactly one 1, each partial at most one.
// `fixed` pins node values.  Returns the first state in search order.
std::optional<std::vector<int>> two_valued_search(const OrthoGraph& g, const std::map<int, int>& fixed = {});
// number of 0/1 states (stops counting at `limit`)
long count_two_valued(const OrthoGraph& g, const std::map<int, int>& fixed = {}, long limit = 1000000);

struct FrameProblem {
    const OrthoGraph* graph = nullptr;
    std::vector<int> zero_nodes;
    int target = -1;
    Rational bound = 1;
    // optional per-node box overrides |f(node)| <= box[node]
    std::map<int, Rational> box;
};

struct FrameBound {
    Rational value;  // max |f(target)|
    Rational lo, hi;  // range of f(target)
    bool constant_forced_zero = false;
    std::vector<Rational> argmax;  // frame function attaining value
    Rational constant;             // its context sum
    lp::Problem problem_max, problem_min;
    lp::Result result_max, result_min;
};

FrameBound frame_lp(const FrameProblem& p);

using Builder = std::function<OrthoGraph(const std::string& node)>;

struct WonderLevel {
    int k = 0;
    int nodes = 0;
    int contexts = 0;
    Rational bound;
};

struct WonderResult {
    Rational bound;
    std::vector<WonderLevel> levels;
    OrthoGraph graph;
};

// Ω_0 = builder(z); Ω_{j+1} = ∪ builder(x) over the non-zero nodes x of Ω_j.
// Every graph the builder returns must itself certify 1/2 for its argument.
WonderResult wonder_iterate(const Builder& builder, const std::string& z, int k,
                            const std::vector<std::string>& zero_labels);

struct ExtendResult {
    bool feasible = false;
    std::vector<Rational> assignment;  // on g when feasible
    std::vector<Rational> farkas;      // row multipliers when infeasible
    lp::Problem problem;
};

// P0 is indexed by g0's nodes
ExtendResult extend_state(const OrthoGraph& g0, const std::vector<Rational>& p0, const OrthoGraph& g);

// Adds conj(u × v) for every orthogonal pair not inside a full context, for
// the given number of rounds (dimension 3, realized graphs).  New nodes are
// labelled prefix0, prefix1, ...
OrthoGraph closure(const OrthoGraph& g, int rounds, int node_cap = 10000, const std::string& prefix = "c");

struct FitResult {
    DensityOperator<cplx> W;
    double deviation;
    int iterations;
};

FitResult fit_quantum_state(const OrthoGraph& g, const std::vector<double>& p, std::uint64_t seed = 0,
                            int max_iterations = 20000);

// min over states P' of max_x |P(x) - P'(x)|, exactly
Rational state_distance(const OrthoGraph& g, const std::vector<Rational>& p);

// Born probabilities <x, W x> for each realized node
std::vector<double> born_assignment(const OrthoGraph& g, const DensityOperator<cplx>& W);

}  // namespace qp::gamble
