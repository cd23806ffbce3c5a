#pragma once

// Brute-force axiom checks on explicitly listed finite posets with a
// candidate orthocomplement.

#include <optional>
#include <string>
#include <vector>

namespace qp::lattice {

enum class Axiom { S1, S2, S3, S4, S5, S6, O1, O2, O3, O4, O4star, H1, H2, H3, H4, EQ3 };

std::string axiom_id(Axiom a);                       // "S1", ..., "O4*", ..., "EQ3-witness"
std::optional<Axiom> parse_axiom(const std::string& id);
const std::vector<Axiom>& all_axioms();              // report order

class FiniteOrtholattice {
public:
    // leq[i][j] means element i <= element j.  Reflexivity and antisymmetry
    // are required here; everything else is left to the checker.
    FiniteOrtholattice(std::vector<std::string> labels, std::vector<std::vector<char>> leq, std::vector<int> comp,
                       int zero, int one);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    int index(const std::string& l) const;
    bool leq(int a, int b) const { return leq_[a][b]; }
    int comp(int a) const { return comp_[a]; }
    int zero() const { return zero_; }
    int one() const { return one_; }
    // greatest lower / least upper bound, -1 when it does not exist
    int meet(int a, int b) const { return meet_[a * size() + b]; }
    int join(int a, int b) const { return join_[a * size() + b]; }
    bool is_atom(int p) const;
    std::vector<std::pair<int, int>> leq_pairs() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<char>> leq_;
    std::vector<int> comp_;
    int zero_, one_;
    std::vector<int> meet_, join_;
    std::vector<char> atom_;
};

struct AxiomReport {
    Axiom axiom;
    bool holds = true;
    std::vector<int> witness;                 // element indices
    std::vector<std::string> counterexample;  // their labels
    std::string note;
};

AxiomReport check_axiom(const FiniteOrtholattice& L, Axiom a);
std::vector<AxiomReport> check_all(const FiniteOrtholattice& L);

// true when the tuple violates the axiom body (re-substitution)
bool violates(const FiniteOrtholattice& L, Axiom a, const std::vector<int>& tuple);

// x = (x∩y)∪(x∩y⊥) and y = (y∩x)∪(y∩x⊥)
bool compatibility(const FiniteOrtholattice& L, int x, int y);

FiniteOrtholattice boolean_algebra(int n);  // 2^n, n <= 5
FiniteOrtholattice mo(int n);               // 0, 1 and n complementary atom pairs, n <= 8
FiniteOrtholattice subspace_lattice_over_prime_field(int p);  // F_p^3, dot-product complement

}  // namespace qp::lattice
