#pragma once

// Exact linear programming over the rationals.
//
// maximize or minimize  c·x
//   subject to          a_i·x (<=, >=, =) b_i
//                       l_j <= x_j <= u_j     (u_j may be absent = +inf)
//
// Every answer carries a certificate that can be checked without trusting the
// solver: optimal answers carry row multipliers proving the bound, infeasible
// answers carry Farkas multipliers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprob/rational.hpp"

namespace qp::lp {

enum class Sense { le, ge, eq };

struct Row {
    std::vector<std::pair<int, Rational>> terms;
    Sense sense = Sense::eq;
    Rational rhs;
    std::string name;
};

struct Problem {
    int num_vars = 0;
    std::vector<Rational> lower;                 // size num_vars
    std::vector<std::optional<Rational>> upper;  // size num_vars
    std::vector<Row> rows;
    std::vector<Rational> objective;             // size num_vars, may be all zero
    bool maximize = true;

    int add_var(Rational lo, std::optional<Rational> hi, Rational cost = 0);
    void add_row(Row r) { rows.push_back(std::move(r)); }
};

enum class Status { optimal, infeasible, unbounded };

std::string to_string(Status s);

struct Result {
    Status status = Status::infeasible;
    Rational value;
    std::vector<Rational> x;
    // optimal: dual multipliers certifying `value`;
    // infeasible: Farkas multipliers.  One entry per row, sign conventions in
    // verify_farkas / verify_optimal.
    std::vector<Rational> y;
    long pivots = 0;
};

struct Options {
    // consecutive degenerate pivots tolerated before switching from largest
    // reduced cost to Bland's rule
    int degenerate_limit = 50;
};

Result solve(const Problem& p, const Options& opt = {});

// x satisfies every row and bound exactly
bool is_feasible(const Problem& p, const std::vector<Rational>& x);

// y_i >= 0 on <= rows, y_i <= 0 on >= rows, so y·Ax <= y·b on the feasible set;
// valid when min over the box of (Aᵀy)·x exceeds y·b.
bool verify_farkas(const Problem& p, const std::vector<Rational>& y);

// Same sign conventions.  For a maximization, value <= y·b + Σ_j max_{box}(c_j - (Aᵀy)_j) x_j;
// for a minimization the roles of the objective and its negation swap.  Returns
// true when that bound equals the claimed value and x attains it.
bool verify_optimal(const Problem& p, const Result& r);

}  // namespace qp::lp
