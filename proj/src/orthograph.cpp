#include <algorithm>
#include <sstream>

#include "qprob/gamble.hpp"

namespace qp::gamble {

OrthoGraph::OrthoGraph(int dimension) : d_(dimension) {
    if (dimension < 1) throw InvalidInput("graph dimension must be positive");
}

int OrthoGraph::add_node(const std::string& label) {
    if (label.empty()) throw ValidationError("empty node label");
    if (index_.count(label)) throw ValidationError("duplicate node '" + label + "'");
    int i = size();
    labels_.push_back(label);
    index_[label] = i;
    adj_.emplace_back();
    if (realization_) realization_.reset();
    return i;
}

int OrthoGraph::ensure_node(const std::string& label) {
    if (auto i = find(label)) return *i;
    return add_node(label);
}

void OrthoGraph::add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= size() || b >= size()) throw InvalidInput("edge references unknown node");
    if (a == b) throw ValidationError("self loop at '" + labels_[a] + "'");
    auto ins = [](std::vector<int>& v, int x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.end() || *it != x) v.insert(it, x);
    };
    ins(adj_[a], b);
    ins(adj_[b], a);
}

int OrthoGraph::index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InvalidInput("unknown node '" + label + "'");
    return it->second;
}

std::optional<int> OrthoGraph::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool OrthoGraph::adjacent(int a, int b) const {
    const auto& v = adj_.at(a);
    return std::binary_search(v.begin(), v.end(), b);
}

std::vector<std::pair<int, int>> OrthoGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j : adj_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

int OrthoGraph::edge_count() const {
    size_t s = 0;
    for (const auto& v : adj_) s += v.size();
    return static_cast<int>(s / 2);
}

void OrthoGraph::set_realization(std::vector<Vec<cplx>> rays) {
    if ((int)rays.size() != size()) throw ValidationError("realization must give one ray per node");
    for (size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != d_) throw DimensionMismatch("ray for '" + labels_[i] + "' has wrong dimension");
        double n = rays[i].norm();
        if (!(n > 1e-300)) throw ValidationError("zero ray for '" + labels_[i] + "'");
        rays[i] /= n;
    }
    realization_ = std::move(rays);
}

bool OrthoGraph::realization_is_real() const {
    if (!realization_) return false;
    for (const auto& v : *realization_)
        for (int k = 0; k < v.size(); ++k)
            if (v(k).imag() != 0.0) return false;
    return true;
}

OrthoGraph OrthoGraph::from_realization(int dimension, const std::vector<std::string>& labels,
                                        const std::vector<Vec<cplx>>& rays) {
    OrthoGraph g(dimension);
    for (const auto& l : labels) g.add_node(l);
    g.set_realization(rays);
    const auto& r = g.realization();
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j)
            if (std::abs(r[i].dot(r[j])) <= orthogonality_tol) g.add_edge(i, j);
    return g;
}

void OrthoGraph::validate() const {
    for (int i = 0; i < size(); ++i)
        if (adjacent(i, i)) throw ValidationError("self loop at '" + labels_[i] + "'");
    if (!realization_) return;
    const auto& r = *realization_;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j) {
            double ip = std::abs(r[i].dot(r[j]));
            bool orth = ip <= orthogonality_tol;
            if (1.0 - ip <= 1e-9)
                throw ValidationError("nodes '" + labels_[i] + "' and '" + labels_[j] + "' realize the same ray");
            if (orth != adjacent(i, j)) {
                std::ostringstream os;
                os << "edge set disagrees with realization at ('" << labels_[i] << "', '" << labels_[j]
                   << "'): |<u,v>| = " << ip << (orth ? " but no edge" : " but edge present");
                throw ValidationError(os.str());
            }
        }
}

bool OrthoGraph::contains(const OrthoGraph& g0) const {
    for (const auto& l : g0.labels())
        if (!has(l)) return false;
    for (auto [a, b] : g0.edges())
        if (!adjacent(index(g0.label(a)), index(g0.label(b)))) return false;
    return true;
}

OrthoGraph OrthoGraph::merge(const OrthoGraph& a, const OrthoGraph& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch("merging graphs of different dimension");
    OrthoGraph g(a.dimension());
    for (const auto& l : a.labels()) g.add_node(l);
    for (const auto& l : b.labels()) g.ensure_node(l);
    for (auto [i, j] : a.edges()) g.add_edge(a.label(i), a.label(j));
    for (auto [i, j] : b.edges()) g.add_edge(b.label(i), b.label(j));
    if (a.realized() && b.realized()) {
        std::vector<Vec<cplx>> rays(g.size());
        for (int i = 0; i < a.size(); ++i) rays[g.index(a.label(i))] = a.realization()[i];
        for (int i = 0; i < b.size(); ++i) {
            int k = g.index(b.label(i));
            if (k < a.size()) {
                if (std::abs(std::abs(rays[k].dot(b.realization()[i])) - 1.0) > 1e-9)
                    throw ValidationError("merge: node '" + b.label(i) + "' realized differently");
            } else {
                rays[k] = b.realization()[i];
            }
        }
        g.set_realization(std::move(rays));
    }
    g.designated = a.designated;
    for (const auto& kv : b.designated) g.designated.insert(kv);
    return g;
}

namespace {

// Bron–Kerbosch with pivoting on sorted index vectors
void bron_kerbosch(const OrthoGraph& g, std::vector<int>& R, std::vector<int> P, std::vector<int> X,
                   std::vector<Clique>& out) {
    if (P.empty() && X.empty()) {
        Clique c = R;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    int pivot = -1;
    size_t best = 0;
    for (const auto* set : {&P, &X})
        for (int u : *set) {
            size_t cnt = 0;
            for (int v : P)
                if (g.adjacent(u, v)) ++cnt;
            if (pivot < 0 || cnt > best) {
                pivot = u;
                best = cnt;
            }
        }
    std::vector<int> candidates;
    for (int v : P)
        if (!g.adjacent(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> P2, X2;
        const auto& nb = g.neighbors(v);
        std::set_intersection(P.begin(), P.end(), nb.begin(), nb.end(), std::back_inserter(P2));
        std::set_intersection(X.begin(), X.end(), nb.begin(), nb.end(), std::back_inserter(X2));
        R.push_back(v);
        bron_kerbosch(g, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.insert(std::lower_bound(X.begin(), X.end(), v), v);
    }
}

}  // namespace

Contexts enumerate_contexts(const OrthoGraph& g) {
    std::vector<Clique> all;
    std::vector<int> R, P(g.size()), X;
    for (int i = 0; i < g.size(); ++i) P[i] = i;
    bron_kerbosch(g, R, P, X, all);
    std::sort(all.begin(), all.end());
    Contexts c;
    for (auto& q : all) {
        if ((int)q.size() > g.dimension()) {
            std::string s;
            for (int v : q) s += (s.empty() ? "" : ", ") + g.label(v);
            throw ValidationError("clique {" + s + "} exceeds the dimension");
        }
        ((int)q.size() == g.dimension() ? c.full : c.partial).push_back(std::move(q));
    }
    return c;
}

}  // namespace qp::gamble
