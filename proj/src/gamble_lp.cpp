#include <algorithm>
#include <set>

#include "qprob/gamble.hpp"

namespace qp::gamble {

namespace {

lp::Row context_row(const Clique& c, lp::Sense s, const Rational& rhs) {
    lp::Row r;
    for (int v : c) r.terms.emplace_back(v, Rational(1));
    r.sense = s;
    r.rhs = rhs;
    return r;
}

void check_node(const OrthoGraph& g, int v) {
    if (v < 0 || v >= g.size()) throw InvalidInput("node index out of range");
}

}  // namespace

lp::Problem state_problem(const OrthoGraph& g, const Contexts& ctx, const LinearForm& objective,
                          const std::vector<LinearConstraint>& extra, bool maximize) {
    lp::Problem p;
    for (int i = 0; i < g.size(); ++i) p.add_var(0, Rational(1));
    for (const auto& [v, c] : objective) {
        check_node(g, v);
        p.objective[v] += c;
    }
    p.maximize = maximize;
    for (const auto& c : ctx.full) p.add_row(context_row(c, lp::Sense::eq, 1));
    for (const auto& c : ctx.partial)
        if (c.size() > 1) p.add_row(context_row(c, lp::Sense::le, 1));
    for (const auto& e : extra) {
        lp::Row r;
        for (const auto& [v, c] : e.terms) {
            check_node(g, v);
            r.terms.emplace_back(v, c);
        }
        r.sense = e.sense;
        r.rhs = e.rhs;
        p.add_row(std::move(r));
    }
    return p;
}

StateLpResult state_lp(const OrthoGraph& g, const LinearForm& objective,
                       const std::vector<LinearConstraint>& extra, bool maximize) {
    if (g.size() == 0) throw InvalidInput("state_lp on an empty graph");
    Contexts ctx = enumerate_contexts(g);
    StateLpResult out;
    out.problem = state_problem(g, ctx, objective, extra, maximize);
    out.raw = lp::solve(out.problem);
    out.status = out.raw.status;
    if (out.status == lp::Status::unbounded) throw InternalError("state LP reported unbounded on a box");
    if (out.status == lp::Status::optimal) {
        out.value = out.raw.value;
        out.assignment = out.raw.x;
    }
    return out;
}

bool verify_state(const OrthoGraph& g, const std::vector<Rational>& p, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if ((int)p.size() != g.size()) return fail("assignment size differs from node count");
    for (int i = 0; i < g.size(); ++i)
        if (p[i] < 0 || p[i] > 1) return fail("value of '" + g.label(i) + "' outside [0,1]");
    Contexts ctx = enumerate_contexts(g);
    for (const auto& c : ctx.full) {
        Rational s;
        for (int v : c) s += p[v];
        if (s != 1) return fail("context at '" + g.label(c[0]) + "' sums to " + to_string(s));
    }
    for (const auto& c : ctx.partial) {
        Rational s;
        for (int v : c) s += p[v];
        if (s > 1) return fail("partial context at '" + g.label(c[0]) + "' sums to " + to_string(s));
    }
    return true;
}

Interval indeterminacy_range(const OrthoGraph& g, int x, int y) {
    check_node(g, x);
    check_node(g, y);
    std::vector<LinearConstraint> fix{{{{x, Rational(1)}}, lp::Sense::eq, Rational(1)}};
    auto hi = state_lp(g, {{y, Rational(1)}}, fix, true);
    if (hi.status != lp::Status::optimal)
        throw Infeasible("no state on the graph gives P(" + g.label(x) + ") = 1");
    auto lo = state_lp(g, {{y, Rational(1)}}, fix, false);
    return {lo.value, hi.value};
}

namespace {

class TwoValued {
public:
    TwoValued(const OrthoGraph& g) : g_(g), val_(g.size(), -1), of_(g.size()) {
        Contexts ctx = enumerate_contexts(g);
        for (auto& c : ctx.full) cons_.push_back({c, true});
        for (auto& c : ctx.partial)
            if (c.size() > 1) cons_.push_back({c, false});
        for (size_t k = 0; k < cons_.size(); ++k)
            for (int v : cons_[k].nodes) of_[v].push_back(static_cast<int>(k));
        order_.resize(g.size());
        for (int i = 0; i < g.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return of_[a].size() > of_[b].size(); });
    }

    bool fix(const std::map<int, int>& fixed) {
        for (auto [v, b] : fixed) {
            if (b != 0 && b != 1) throw InvalidInput("two-valued pins must be 0 or 1");
            if (!assign(v, b)) return false;
        }
        return true;
    }

    // visits states in search order; visitor returns false to stop
    template <class F>
    bool search(F&& visit) {
        int v = -1;
        for (int u : order_)
            if (val_[u] < 0) {
                v = u;
                break;
            }
        if (v < 0) return visit(val_);
        for (int b : {1, 0}) {
            size_t mark = trail_.size();
            if (assign(v, b) && !search(visit)) return false;
            undo(mark);
        }
        return true;
    }

private:
    struct Cons {
        Clique nodes;
        bool full;
    };

    bool assign(int v, int b) {
        std::vector<std::pair<int, int>> queue{{v, b}};
        while (!queue.empty()) {
            auto [u, x] = queue.back();
            queue.pop_back();
            if (val_[u] >= 0) {
                if (val_[u] != x) return false;
                continue;
            }
            val_[u] = x;
            trail_.push_back(u);
            for (int k : of_[u]) {
                const Cons& c = cons_[k];
                int ones = 0, open = 0, last_open = -1;
                for (int w : c.nodes) {
                    if (val_[w] == 1) ++ones;
                    else if (val_[w] < 0) {
                        ++open;
                        last_open = w;
                    }
                }
                if (ones > 1) return false;
                if (ones == 1) {
                    for (int w : c.nodes)
                        if (val_[w] < 0) queue.emplace_back(w, 0);
                } else if (c.full) {
                    if (open == 0) return false;
                    if (open == 1) queue.emplace_back(last_open, 1);
                }
            }
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail_.size() > mark) {
            val_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }

    const OrthoGraph& g_;
    std::vector<int> val_;
    std::vector<std::vector<int>> of_;
    std::vector<Cons> cons_;
    std::vector<int> order_;
    std::vector<int> trail_;
};

}  // namespace

std::optional<std::vector<int>> two_valued_search(const OrthoGraph& g, const std::map<int, int>& fixed) {
    TwoValued s(g);
    if (!s.fix(fixed)) return std::nullopt;
    std::optional<std::vector<int>> found;
    s.search([&](const std::vector<int>& v) {
        found = v;
        return false;
    });
    return found;
}

long count_two_valued(const OrthoGraph& g, const std::map<int, int>& fixed, long limit) {
    TwoValued s(g);
    if (!s.fix(fixed)) return 0;
    long n = 0;
    s.search([&](const std::vector<int>&) { return ++n < limit; });
    return n;
}

FrameBound frame_lp(const FrameProblem& fp) {
    if (!fp.graph) throw InvalidInput("frame problem without a graph");
    const OrthoGraph& g = *fp.graph;
    check_node(g, fp.target);
    if (fp.bound <= 0) throw InvalidInput("frame bound must be positive");
    Contexts ctx = enumerate_contexts(g);
    std::set<int> zero(fp.zero_nodes.begin(), fp.zero_nodes.end());
    for (int z : zero) check_node(g, z);

    FrameBound out;
    for (const auto& c : ctx.full)
        if (std::all_of(c.begin(), c.end(), [&](int v) { return zero.count(v) > 0; }))
            out.constant_forced_zero = true;

    auto build = [&](bool maximize) {
        lp::Problem p;
        for (int i = 0; i < g.size(); ++i) {
            Rational b = fp.bound;
            if (auto it = fp.box.find(i); it != fp.box.end()) b = it->second;
            if (zero.count(i)) b = 0;
            p.add_var(-b, b);
        }
        int cvar = -1;
        if (!out.constant_forced_zero && !ctx.full.empty()) {
            Rational d = fp.bound * g.dimension();
            cvar = p.add_var(-d, d);
        }
        p.objective[fp.target] = 1;
        p.maximize = maximize;
        for (const auto& c : ctx.full) {
            lp::Row r = context_row(c, lp::Sense::eq, 0);
            if (cvar >= 0) r.terms.emplace_back(cvar, Rational(-1));
            p.add_row(std::move(r));
        }
        return p;
    };
    out.problem_max = build(true);
    out.problem_min = build(false);
    out.result_max = lp::solve(out.problem_max);
    if (out.result_max.status != lp::Status::optimal) throw Infeasible("zero-node constraints admit no frame function");
    out.result_min = lp::solve(out.problem_min);
    out.hi = out.result_max.value;
    out.lo = out.result_min.value;
    const lp::Result& best = (out.hi >= -out.lo) ? out.result_max : out.result_min;
    out.value = std::max(out.hi, Rational(-out.lo));
    out.argmax.assign(best.x.begin(), best.x.begin() + g.size());
    out.constant = (int)best.x.size() > g.size() ? best.x[g.size()] : Rational(0);
    return out;
}

WonderResult wonder_iterate(const Builder& builder, const std::string& z, int k,
                            const std::vector<std::string>& zero_labels) {
    if (k < 0 || k > 4) throw CapExceeded("wonder_iterate supports 0 <= k <= 4");
    std::set<std::string> zeros(zero_labels.begin(), zero_labels.end());
    std::map<std::string, OrthoGraph> cache;

    auto certified = [&](const std::string& x) -> const OrthoGraph& {
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
        OrthoGraph h = builder(x);
        if (!h.has(x)) throw ValidationError("builder graph for '" + x + "' does not contain it");
        FrameProblem fp;
        fp.graph = &h;
        fp.target = h.index(x);
        for (const auto& zl : zeros)
            if (auto i = h.find(zl)) fp.zero_nodes.push_back(*i);
        FrameBound b = frame_lp(fp);
        if (b.value > Rational(1, 2))
            throw ValidationError("builder graph for '" + x + "' certifies only " + to_string(b.value));
        return cache.emplace(x, std::move(h)).first->second;
    };

    auto solve_level = [&](const OrthoGraph& g, int level) {
        FrameProblem fp;
        fp.graph = &g;
        fp.target = g.index(z);
        for (const auto& zl : zeros)
            if (auto i = g.find(zl)) fp.zero_nodes.push_back(*i);
        WonderLevel w;
        w.k = level;
        w.nodes = g.size();
        w.contexts = static_cast<int>(enumerate_contexts(g).full.size());
        w.bound = frame_lp(fp).value;
        return w;
    };

    WonderResult res{Rational(1), {}, certified(z)};
    res.levels.push_back(solve_level(res.graph, 0));
    for (int level = 1; level <= k; ++level) {
        OrthoGraph next(res.graph.dimension());
        bool first = true;
        for (const auto& x : res.graph.labels()) {
            if (zeros.count(x)) continue;
            const OrthoGraph& h = certified(x);
            next = first ? h : OrthoGraph::merge(next, h);
            first = false;
        }
        res.graph = std::move(next);
        res.levels.push_back(solve_level(res.graph, level));
    }
    res.bound = res.levels.back().bound;
    return res;
}

}  // namespace qp::gamble
