// Regenerates the files under data/ from the built-in catalog.
//   qprob-make-data <dir>

#include <fstream>
#include <iostream>

#include "qprob/catalog.hpp"
#include "qprob/io.hpp"
#include "qprob/lattice.hpp"
#include "qprob/polytope.hpp"

using namespace qp;
using io::json;

namespace {

void write(const std::string& dir, const std::string& name, const json& j) {
    std::ofstream f(dir + "/" + name);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error("cannot write " + dir + "/" + name);
}

json state_json(const gamble::OrthoGraph& g, const std::vector<Rational>& p) {
    json a = json::object();
    for (int i = 0; i < g.size(); ++i) a[g.label(i)] = to_string(p[i]);
    return json{{"assignment", a}};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: qprob-make-data <dir>\n";
        return 64;
    }
    std::string dir = argv[1];

    write(dir, "cats_cradle.json", io::graph_json(catalog::cats_cradle()));
    write(dir, "ks_gamma.json", io::graph_json(catalog::ks_gamma()));
    auto core = catalog::ks_core();
    write(dir, "ks_core.json", io::graph_json(core));
    write(dir, "ks_core_state.json", state_json(core, catalog::ks_core_two_valued()));

    write(dir, "boolean3.json", io::lattice_json(lattice::boolean_algebra(3)));
    write(dir, "mo2.json", io::lattice_json(lattice::mo(2)));
    write(dir, "f3.json", io::lattice_json(lattice::subspace_lattice_over_prime_field(3)));

    auto ch = polytope::ch_scheme();
    write(dir, "ch.json", io::scheme_json(ch));

    // uniform mixture of the vertices, and the PR-box correlations
    write(dir, "point_inside.json", json{{"point", {"1/2", "1/2", "1/2", "1/2", "1/4", "1/4", "1/4", "1/4"}}});
    write(dir, "point_pr.json", json{{"point", {"1/2", "1/2", "1/2", "1/2", "1/2", "1/2", "0", "1/2"}}});

    // Φ+ with the usual optimal angles for CH
    const double pi = 3.14159265358979323846;
    auto ray = [&](double th) { return io::vector_json(polytope::bloch_ray(th, 0).vector()); };
    write(dir, "setup_tsirelson.json",
          json{{"a1", ray(0)},
               {"a2", ray(pi / 2)},
               {"b1", ray(-pi / 4)},
               {"b2", ray(pi / 4)},
               {"psi", {0.7071067811865476, 0, 0, 0.7071067811865476}}});
    return 0;
}
