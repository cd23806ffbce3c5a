#include "qprob/lattice.hpp"

#include <array>
#include <map>

#include "qprob/errors.hpp"

namespace qp::lattice {

namespace {

const std::vector<std::pair<Axiom, std::string>>& names() {
    static const std::vector<std::pair<Axiom, std::string>> n{
        {Axiom::S1, "S1"}, {Axiom::S2, "S2"}, {Axiom::S3, "S3"},         {Axiom::S4, "S4"},
        {Axiom::S5, "S5"}, {Axiom::S6, "S6"}, {Axiom::O1, "O1"},         {Axiom::O2, "O2"},
        {Axiom::O3, "O3"}, {Axiom::O4, "O4"}, {Axiom::O4star, "O4*"},    {Axiom::H1, "H1"},
        {Axiom::H2, "H2"}, {Axiom::H3, "H3"}, {Axiom::H4, "H4"},         {Axiom::EQ3, "EQ3-witness"}};
    return n;
}

int arity(Axiom a) {
    switch (a) {
        case Axiom::S1: case Axiom::S4: case Axiom::O1: case Axiom::O2: case Axiom::H4: return 1;
        case Axiom::S2: case Axiom::O4star: case Axiom::H2: return 3;
        default: return 2;
    }
}

}  // namespace

std::string axiom_id(Axiom a) {
    for (const auto& [k, v] : names())
        if (k == a) return v;
    return "?";
}

std::optional<Axiom> parse_axiom(const std::string& id) {
    for (const auto& [k, v] : names())
        if (v == id) return k;
    if (id == "O4star") return Axiom::O4star;
    if (id == "EQ3") return Axiom::EQ3;
    return std::nullopt;
}

const std::vector<Axiom>& all_axioms() {
    static const std::vector<Axiom> a = [] {
        std::vector<Axiom> v;
        for (const auto& [k, _] : names()) v.push_back(k);
        return v;
    }();
    return a;
}

FiniteOrtholattice::FiniteOrtholattice(std::vector<std::string> labels, std::vector<std::vector<char>> leq,
                                       std::vector<int> comp, int zero, int one)
    : labels_(std::move(labels)), leq_(std::move(leq)), comp_(std::move(comp)), zero_(zero), one_(one) {
    const int n = size();
    if (n == 0) throw InvalidInput("lattice has no elements");
    if ((int)leq_.size() != n || (int)comp_.size() != n) throw InvalidInput("lattice tables do not match element count");
    for (const auto& row : leq_)
        if ((int)row.size() != n) throw InvalidInput("leq table is not square");
    if (zero_ < 0 || zero_ >= n || one_ < 0 || one_ >= n) throw InvalidInput("zero/one out of range");
    std::map<std::string, int> seen;
    for (int i = 0; i < n; ++i)
        if (!seen.emplace(labels_[i], i).second) throw InvalidInput("duplicate element '" + labels_[i] + "'");
    for (int i = 0; i < n; ++i) {
        if (comp_[i] < 0 || comp_[i] >= n) throw InvalidInput("complement of '" + labels_[i] + "' undefined");
        if (!leq_[i][i]) throw InvalidInput("leq is not reflexive at '" + labels_[i] + "'");
        for (int j = 0; j < n; ++j)
            if (i != j && leq_[i][j] && leq_[j][i])
                throw InvalidInput("leq is not antisymmetric on '" + labels_[i] + "', '" + labels_[j] + "'");
    }
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int m = 0; m < n; ++m) {
                if (!(leq_[m][a] && leq_[m][b])) continue;
                bool greatest = true;
                for (int z = 0; z < n && greatest; ++z)
                    if (leq_[z][a] && leq_[z][b] && !leq_[z][m]) greatest = false;
                if (greatest) {
                    meet_[a * n + b] = m;
                    break;
                }
            }
            for (int j = 0; j < n; ++j) {
                if (!(leq_[a][j] && leq_[b][j])) continue;
                bool least = true;
                for (int z = 0; z < n && least; ++z)
                    if (leq_[a][z] && leq_[b][z] && !leq_[j][z]) least = false;
                if (least) {
                    join_[a * n + b] = j;
                    break;
                }
            }
        }
    atom_.assign(n, 0);
    for (int p = 0; p < n; ++p) {
        if (p == zero_) continue;
        bool atom = true;
        for (int x = 0; x < n && atom; ++x)
            if (leq_[x][p] && x != zero_ && x != p) atom = false;
        atom_[p] = atom;
    }
}

int FiniteOrtholattice::index(const std::string& l) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == l) return i;
    throw InvalidInput("unknown lattice element '" + l + "'");
}

bool FiniteOrtholattice::is_atom(int p) const { return atom_[p]; }

std::vector<std::pair<int, int>> FiniteOrtholattice::leq_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (leq_[i][j]) out.emplace_back(i, j);
    return out;
}

namespace {

// (x∩z)∪(x∩z⊥) == x, with undefined operations counting as failure
bool decomposes(const FiniteOrtholattice& L, int x, int z) {
    int a = L.meet(x, z), b = L.meet(x, L.comp(z));
    if (a < 0 || b < 0) return false;
    return L.join(a, b) == x;
}

}  // namespace

bool violates(const FiniteOrtholattice& L, Axiom ax, const std::vector<int>& t) {
    if ((int)t.size() != arity(ax)) throw InvalidInput("wrong tuple size for " + axiom_id(ax));
    for (int v : t)
        if (v < 0 || v >= L.size()) throw InvalidInput("tuple element out of range");
    const int n = L.size();
    switch (ax) {
        case Axiom::S1: return !L.leq(t[0], t[0]);
        case Axiom::S2: return L.leq(t[0], t[1]) && L.leq(t[1], t[2]) && !L.leq(t[0], t[2]);
        case Axiom::S3: return t[0] != t[1] && L.leq(t[0], t[1]) && L.leq(t[1], t[0]);
        case Axiom::S4: return !(L.leq(L.zero(), t[0]) && L.leq(t[0], L.one()));
        case Axiom::S5: return L.meet(t[0], t[1]) < 0;
        case Axiom::S6: return L.join(t[0], t[1]) < 0;
        case Axiom::O1: return L.comp(L.comp(t[0])) != t[0];
        case Axiom::O2: {
            int x = t[0], c = L.comp(x);
            return L.meet(x, c) != L.zero() || L.join(x, c) != L.one();
        }
        case Axiom::O3: return L.leq(t[0], t[1]) && !L.leq(L.comp(t[1]), L.comp(t[0]));
        case Axiom::O4: {
            int x = t[0], y = t[1];
            if (!L.leq(x, y)) return false;
            int m = L.meet(y, L.comp(x));
            return m < 0 || L.join(x, m) != y;
        }
        case Axiom::O4star: {
            int x = t[0], y = t[1], z = t[2];
            if (!L.leq(x, z)) return false;
            int yz = L.meet(y, z), xy = L.join(x, y);
            if (yz < 0 || xy < 0) return true;
            int lhs = L.join(x, yz), rhs = L.meet(xy, z);
            return lhs < 0 || rhs < 0 || lhs != rhs;
        }
        case Axiom::H1: {
            int x = t[0], y = t[1];
            if (x == y || !L.leq(x, y)) return false;
            for (int p = 0; p < n; ++p)
                if (L.is_atom(p) && L.leq(p, y) && !L.leq(p, x)) return false;
            return true;
        }
        case Axiom::H2: {
            int p = t[0], x = t[1], y = t[2];
            if (!L.is_atom(p) || L.meet(x, p) != L.zero()) return false;
            int xp = L.join(x, p);
            if (xp < 0) return false;
            return L.leq(x, y) && L.leq(y, xp) && y != x && y != xp;
        }
        case Axiom::H3: return L.meet(t[0], t[1]) < 0 || L.join(t[0], t[1]) < 0;
        case Axiom::H4: {
            int z = t[0];
            if (z == L.zero() || z == L.one()) return false;
            for (int x = 0; x < n; ++x)
                if (!decomposes(L, x, z)) return false;
            return true;
        }
        case Axiom::EQ3: return !decomposes(L, t[0], t[1]);
    }
    return false;
}

AxiomReport check_axiom(const FiniteOrtholattice& L, Axiom ax) {
    AxiomReport r;
    r.axiom = ax;
    const int n = L.size();
    const int k = arity(ax);
    std::vector<int> t(k, 0);
    bool found = false;
    // lexicographic sweep over k-tuples
    for (;;) {
        if (violates(L, ax, t)) {
            found = true;
            break;
        }
        int i = k - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
    if (found) {
        r.holds = false;
        r.witness = t;
        for (int v : t) r.counterexample.push_back(L.label(v));
    }
    switch (ax) {
        case Axiom::H3:
            r.note = r.holds ? "finite lattice with all binary meets and joins: arbitrary meets and joins exist"
                             : "a binary meet or join is missing";
            break;
        case Axiom::EQ3:
            r.note = r.holds ? "no incompatible pair: every x equals (x meet z) join (x meet z-perp)"
                             : "incompatible pair (x, z) found";
            break;
        case Axiom::H4:
            if (!r.holds) r.note = "non-trivial element compatible with everything";
            break;
        default:
            break;
    }
    return r;
}

std::vector<AxiomReport> check_all(const FiniteOrtholattice& L) {
    std::vector<AxiomReport> out;
    for (Axiom a : all_axioms()) out.push_back(check_axiom(L, a));
    return out;
}

bool compatibility(const FiniteOrtholattice& L, int x, int y) { return decomposes(L, x, y) && decomposes(L, y, x); }

FiniteOrtholattice boolean_algebra(int n) {
    if (n < 0 || n > 5) throw CapExceeded("boolean algebra supports 0 <= n <= 5");
    const int N = 1 << n;
    std::vector<std::string> labels(N);
    for (int m = 0; m < N; ++m) {
        if (m == 0) labels[m] = "0";
        else if (m == N - 1) labels[m] = "1";
        else {
            std::string s = "{";
            for (int b = 0; b < n; ++b)
                if (m >> b & 1) s += (s.size() > 1 ? "," : "") + std::to_string(b + 1);
            labels[m] = s + "}";
        }
    }
    if (n == 0) labels[0] = "0";  // single element: 0 = 1
    std::vector<std::vector<char>> leq(N, std::vector<char>(N));
    std::vector<int> comp(N);
    for (int a = 0; a < N; ++a) {
        comp[a] = (N - 1) ^ a;
        for (int b = 0; b < N; ++b) leq[a][b] = (a & b) == a;
    }
    return FiniteOrtholattice(labels, leq, comp, 0, N - 1);
}

FiniteOrtholattice mo(int n) {
    if (n < 1 || n > 8) throw CapExceeded("MO_n supports 1 <= n <= 8");
    std::vector<std::string> labels{"0"};
    for (int i = 0; i < n; ++i) {
        std::string a(1, char('a' + i));
        labels.push_back(a);
        labels.push_back(a + "'");
    }
    labels.push_back("1");
    const int N = static_cast<int>(labels.size());
    std::vector<std::vector<char>> leq(N, std::vector<char>(N));
    std::vector<int> comp(N);
    for (int i = 0; i < N; ++i) {
        leq[i][i] = 1;
        leq[0][i] = 1;
        leq[i][N - 1] = 1;
    }
    comp[0] = N - 1;
    comp[N - 1] = 0;
    for (int i = 0; i < n; ++i) {
        comp[1 + 2 * i] = 2 + 2 * i;
        comp[2 + 2 * i] = 1 + 2 * i;
    }
    return FiniteOrtholattice(labels, leq, comp, 0, N - 1);
}

FiniteOrtholattice subspace_lattice_over_prime_field(int p) {
    if (p < 2) throw InvalidInput("field size must be a prime");
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw InvalidInput(std::to_string(p) + " is not prime");
    if (p > 7) throw CapExceeded("prime-field lattices are built for p in {2, 3, 5, 7}");

    // projective points: first non-zero coordinate equal to 1
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c) {
                std::array<int, 3> v{a, b, c};
                int lead = a ? a : (b ? b : c);
                if (lead == 1) pts.push_back(v);
            }
    const int P = static_cast<int>(pts.size());
    auto dot = [&](const std::array<int, 3>& u, const std::array<int, 3>& v) {
        return (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) % p;
    };
    auto fmt = [](const char* tag, const std::array<int, 3>& v) {
        return std::string(tag) + "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
               std::to_string(v[2]) + ")";
    };
    // 0, points P(v), planes L(n) = {v : v·n = 0}, 1
    std::vector<std::string> labels{"0"};
    for (const auto& v : pts) labels.push_back(fmt("P", v));
    for (const auto& v : pts) labels.push_back(fmt("L", v));
    labels.push_back("1");
    const int N = static_cast<int>(labels.size());
    if (N > 100000) throw CapExceeded("lattice exceeds 10^5 elements");
    std::vector<std::vector<char>> leq(N, std::vector<char>(N));
    std::vector<int> comp(N);
    for (int i = 0; i < N; ++i) {
        leq[i][i] = 1;
        leq[0][i] = 1;
        leq[i][N - 1] = 1;
    }
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j)
            if (dot(pts[i], pts[j]) == 0) leq[1 + i][1 + P + j] = 1;
    comp[0] = N - 1;
    comp[N - 1] = 0;
    for (int i = 0; i < P; ++i) {
        comp[1 + i] = 1 + P + i;
        comp[1 + P + i] = 1 + i;
    }
    return FiniteOrtholattice(labels, leq, comp, 0, N - 1);
}

}  // namespace qp::lattice
