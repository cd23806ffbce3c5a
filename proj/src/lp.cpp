#include "qprob/lp.hpp"

#include <algorithm>

#include "qprob/errors.hpp"

namespace qp::lp {

int Problem::add_var(Rational lo, std::optional<Rational> hi, Rational cost) {
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    objective.push_back(std::move(cost));
    return num_vars++;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
    }
    return "?";
}

namespace {

// Bounded-variable primal simplex on a dense tableau T = B⁻¹A.  Nonbasic
// variables sit at 0 or at their upper bound; beta holds basic values.
class Tableau {
public:
    int m = 0, n = 0;
    std::vector<std::vector<Rational>> T;
    std::vector<Rational> beta;
    std::vector<std::optional<Rational>> ub;
    std::vector<int> basis;      // variable in each row
    std::vector<int> row_of;     // row of a basic variable, -1 otherwise
    std::vector<char> at_upper;
    std::vector<char> excluded;  // may never enter
    std::vector<Rational> d;     // reduced costs for the current phase
    long pivots = 0;
    int degenerate_limit = 50;

    void price(const std::vector<Rational>& cost) {
        d = cost;
        for (int i = 0; i < m; ++i) {
            const Rational& cb = cost[basis[i]];
            if (sgn(cb) == 0) continue;
            for (int j = 0; j < n; ++j)
                if (sgn(T[i][j]) != 0) d[j] -= cb * T[i][j];
        }
    }

    Rational value_of(int j) const {
        if (row_of[j] >= 0) return beta[row_of[j]];
        return at_upper[j] ? *ub[j] : Rational(0);
    }

    // Minimizes cost·z from the current basis.  stop_at_zero ends phase 1 as
    // soon as the artificial sum vanishes.
    Status run(const std::vector<Rational>& cost, bool stop_at_zero) {
        price(cost);
        int degenerate_run = 0;
        bool bland = false;
        Rational tmp, lim, best;
        for (;;) {
            if (stop_at_zero) {
                bool zero = true;
                for (int i = 0; i < m && zero; ++i)
                    if (sgn(cost[basis[i]]) != 0 && sgn(beta[i]) != 0) zero = false;
                if (zero) return Status::optimal;
            }
            int q = -1;
            for (int j = 0; j < n; ++j) {
                if (row_of[j] >= 0 || excluded[j]) continue;
                if (ub[j] && sgn(*ub[j]) == 0) continue;
                int s = sgn(d[j]);
                bool ok = at_upper[j] ? s > 0 : s < 0;
                if (!ok) continue;
                if (bland) {
                    q = j;
                    break;
                }
                if (q < 0 || abs(d[j]) > abs(d[q])) q = j;
            }
            if (q < 0) return Status::optimal;
            const int dir = at_upper[q] ? -1 : 1;

            // ratio test; r = -1 means the entering variable flips bounds
            int r = -1;
            bool leave_upper = false;
            bool have = false;
            if (ub[q]) {
                best = *ub[q];
                have = true;
            }
            for (int i = 0; i < m; ++i) {
                int s = sgn(T[i][q]);
                if (s == 0) continue;
                int rate = -dir * s;  // sign of the basic variable's change
                if (rate < 0) {
                    lim = beta[i] / abs(T[i][q]);
                } else {
                    const auto& u = ub[basis[i]];
                    if (!u) continue;
                    lim = (*u - beta[i]) / abs(T[i][q]);
                }
                bool take = !have || lim < best ||
                            (lim == best && r >= 0 && basis[i] < basis[r]);
                if (take) {
                    best = lim;
                    r = i;
                    leave_upper = rate > 0;
                    have = true;
                }
            }
            if (!have) return Status::unbounded;

            bool degenerate = sgn(best) == 0;
            if (degenerate) {
                if (++degenerate_run >= degenerate_limit) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }

            if (sgn(best) != 0) {
                for (int i = 0; i < m; ++i) {
                    if (sgn(T[i][q]) == 0) continue;
                    tmp = T[i][q] * best;
                    if (dir > 0) beta[i] -= tmp;
                    else beta[i] += tmp;
                }
            }
            if (r < 0) {
                at_upper[q] = !at_upper[q];
                continue;
            }
            Rational entering = (at_upper[q] ? *ub[q] : Rational(0));
            if (dir > 0) entering += best;
            else entering -= best;
            int leaving = basis[r];
            pivot(r, q);
            row_of[leaving] = -1;
            at_upper[leaving] = leave_upper;
            basis[r] = q;
            row_of[q] = r;
            at_upper[q] = 0;
            beta[r] = entering;
            ++pivots;
        }
    }

private:
    void pivot(int r, int q) {
        std::vector<int> nz;
        nz.reserve(n);
        Rational p = T[r][q];
        for (int j = 0; j < n; ++j)
            if (sgn(T[r][j]) != 0) {
                T[r][j] /= p;
                nz.push_back(j);
            }
        Rational f, tmp;
        for (int i = 0; i < m; ++i) {
            if (i == r || sgn(T[i][q]) == 0) continue;
            f = T[i][q];
            auto& row = T[i];
            for (int j : nz) {
                mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), T[r][j].get_mpq_t());
                mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
            }
        }
        if (sgn(d[q]) != 0) {
            f = d[q];
            for (int j : nz) d[j] -= f * T[r][j];
        }
    }
};

// min over x in [lo, hi] of c*x; returns false when unbounded below
bool box_min(const Rational& c, const Rational& lo, const std::optional<Rational>& hi, Rational& out) {
    int s = sgn(c);
    if (s >= 0) {
        out = c * lo;
        return true;
    }
    if (!hi) return false;
    out = c * *hi;
    return true;
}

bool signs_ok(const Problem& p, const std::vector<Rational>& y) {
    if (y.size() != p.rows.size()) return false;
    for (size_t i = 0; i < y.size(); ++i) {
        if (p.rows[i].sense == Sense::le && sgn(y[i]) < 0) return false;
        if (p.rows[i].sense == Sense::ge && sgn(y[i]) > 0) return false;
    }
    return true;
}

std::vector<Rational> transpose_times(const Problem& p, const std::vector<Rational>& y) {
    std::vector<Rational> c(p.num_vars);
    for (size_t i = 0; i < p.rows.size(); ++i) {
        if (sgn(y[i]) == 0) continue;
        for (const auto& [j, a] : p.rows[i].terms) c[j] += y[i] * a;
    }
    return c;
}

// GMP arithmetic assumes canonical operands; callers may build p/q unreduced
Problem canonical(const Problem& in) {
    Problem p = in;
    for (auto& v : p.lower) v.canonicalize();
    for (auto& v : p.upper)
        if (v) v->canonicalize();
    for (auto& v : p.objective) v.canonicalize();
    for (auto& r : p.rows) {
        r.rhs.canonicalize();
        for (auto& t : r.terms) t.second.canonicalize();
    }
    return p;
}

}  // namespace

Result solve(const Problem& input, const Options& opt) {
    const Problem p = canonical(input);
    const int nx = p.num_vars;
    const int m = static_cast<int>(p.rows.size());
    if ((int)p.lower.size() != nx || (int)p.upper.size() != nx || (int)p.objective.size() != nx)
        throw InvalidInput("lp: bound/objective vectors do not match variable count");
    for (int j = 0; j < nx; ++j)
        if (p.upper[j] && *p.upper[j] < p.lower[j]) throw InvalidInput("lp: empty bounds on variable " + std::to_string(j));

    // columns: x (shifted to lower bound 0), slacks, artificials
    std::vector<int> slack_col(m, -1), unit_col(m, -1);
    std::vector<int> sigma(m, 1);
    std::vector<Rational> rhs(m);
    int ncols = nx;
    for (int i = 0; i < m; ++i) {
        const Row& row = p.rows[i];
        rhs[i] = row.rhs;
        for (const auto& [j, a] : row.terms) {
            if (j < 0 || j >= nx) throw InvalidInput("lp: row references unknown variable");
            rhs[i] -= a * p.lower[j];
        }
        if (row.sense != Sense::eq) slack_col[i] = ncols++;
        if (sgn(rhs[i]) < 0) sigma[i] = -1;
    }
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i) {
        int slack_sign = p.rows[i].sense == Sense::le ? 1 : -1;
        if (slack_col[i] >= 0 && slack_sign * sigma[i] == 1) unit_col[i] = slack_col[i];
        else art_rows.push_back(i);
    }
    const int first_art = ncols;
    for (int i : art_rows) unit_col[i] = ncols++;

    Tableau tb;
    tb.m = m;
    tb.n = ncols;
    tb.degenerate_limit = opt.degenerate_limit;
    tb.T.assign(m, std::vector<Rational>(ncols));
    tb.beta.resize(m);
    tb.ub.assign(ncols, std::nullopt);
    tb.basis.resize(m);
    tb.row_of.assign(ncols, -1);
    tb.at_upper.assign(ncols, 0);
    tb.excluded.assign(ncols, 0);
    for (int j = 0; j < nx; ++j)
        if (p.upper[j]) tb.ub[j] = *p.upper[j] - p.lower[j];
    for (int i = 0; i < m; ++i) {
        const Row& row = p.rows[i];
        for (const auto& [j, a] : row.terms) tb.T[i][j] += sigma[i] * a;
        if (slack_col[i] >= 0) tb.T[i][slack_col[i]] = sigma[i] * (row.sense == Sense::le ? 1 : -1);
        tb.T[i][unit_col[i]] = 1;
        tb.beta[i] = sigma[i] * rhs[i];
        tb.basis[i] = unit_col[i];
        tb.row_of[unit_col[i]] = i;
    }

    Result res;
    res.y.assign(m, 0);

    // maps multipliers on transformed rows back to the caller's rows
    auto row_multipliers = [&](const std::vector<Rational>& cost) {
        std::vector<Rational> y(m);
        for (int i = 0; i < m; ++i) {
            Rational pi = cost[unit_col[i]] - tb.d[unit_col[i]];
            y[i] = -pi * sigma[i];
        }
        return y;
    };

    if (!art_rows.empty()) {
        std::vector<Rational> c1(ncols);
        for (int j = first_art; j < ncols; ++j) c1[j] = 1;
        Status s = tb.run(c1, true);
        if (s != Status::optimal) throw InternalError("lp: phase 1 did not terminate at an optimum");
        Rational w;
        for (int i = 0; i < m; ++i)
            if (tb.basis[i] >= first_art) w += tb.beta[i];
        if (sgn(w) > 0) {
            res.status = Status::infeasible;
            res.y = row_multipliers(c1);
            res.pivots = tb.pivots;
            if (!verify_farkas(p, res.y)) throw InternalError("lp: Farkas certificate failed verification");
            return res;
        }
        for (int j = first_art; j < ncols; ++j) {
            tb.ub[j] = Rational(0);
            tb.excluded[j] = 1;
        }
    }

    std::vector<Rational> c2(ncols);
    for (int j = 0; j < nx; ++j) c2[j] = p.maximize ? Rational(-p.objective[j]) : p.objective[j];
    Status s = tb.run(c2, false);
    res.pivots = tb.pivots;
    res.x.resize(nx);
    for (int j = 0; j < nx; ++j) res.x[j] = p.lower[j] + tb.value_of(j);
    if (s == Status::unbounded) {
        res.status = Status::unbounded;
        return res;
    }
    res.status = Status::optimal;
    for (int j = 0; j < nx; ++j) res.value += p.objective[j] * res.x[j];
    std::vector<Rational> y = row_multipliers(c2);
    // the multipliers certify max(-c) for minimization; report them for c
    if (!p.maximize)
        for (auto& v : y) v = -v;
    res.y = std::move(y);
    if (!verify_optimal(p, res)) throw InternalError("lp: optimality certificate failed verification");
    return res;
}

bool is_feasible(const Problem& input, const std::vector<Rational>& x) {
    const Problem p = canonical(input);
    if ((int)x.size() != p.num_vars) return false;
    for (int j = 0; j < p.num_vars; ++j) {
        if (x[j] < p.lower[j]) return false;
        if (p.upper[j] && x[j] > *p.upper[j]) return false;
    }
    for (const Row& row : p.rows) {
        Rational lhs;
        for (const auto& [j, a] : row.terms) lhs += a * x[j];
        if (row.sense == Sense::le && lhs > row.rhs) return false;
        if (row.sense == Sense::ge && lhs < row.rhs) return false;
        if (row.sense == Sense::eq && lhs != row.rhs) return false;
    }
    return true;
}

bool verify_farkas(const Problem& input, const std::vector<Rational>& y) {
    const Problem p = canonical(input);
    if (!signs_ok(p, y)) return false;
    std::vector<Rational> c = transpose_times(p, y);
    Rational lhs, t;
    for (int j = 0; j < p.num_vars; ++j) {
        if (!box_min(c[j], p.lower[j], p.upper[j], t)) return false;
        lhs += t;
    }
    Rational yb;
    for (size_t i = 0; i < y.size(); ++i) yb += y[i] * p.rows[i].rhs;
    return lhs > yb;
}

bool verify_optimal(const Problem& input, const Result& r) {
    const Problem p = canonical(input);
    if (r.status != Status::optimal || !is_feasible(p, r.x)) return false;
    Rational attained;
    for (int j = 0; j < p.num_vars; ++j) attained += p.objective[j] * r.x[j];
    if (attained != r.value) return false;

    // for a minimization, y is stated for the problem max(-c)
    std::vector<Rational> y = r.y;
    if (!p.maximize)
        for (auto& v : y) v = -v;
    if (!signs_ok(p, y)) return false;
    std::vector<Rational> ay = transpose_times(p, y);
    Rational bound, t;
    for (int j = 0; j < p.num_vars; ++j) {
        Rational c = p.maximize ? p.objective[j] : Rational(-p.objective[j]);
        Rational reduced = c - ay[j];
        // max over the box of reduced*x = -min(-reduced*x)
        Rational neg = -reduced;
        if (!box_min(neg, p.lower[j], p.upper[j], t)) return false;
        bound -= t;
    }
    for (size_t i = 0; i < y.size(); ++i) bound += y[i] * p.rows[i].rhs;
    Rational target = p.maximize ? r.value : Rational(-r.value);
    return bound == target;
}

}  // namespace qp::lp
