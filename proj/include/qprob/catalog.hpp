#pragma once

// Graphs shipped with the workbench.

#include <string>
#include <vector>

#include "qprob/gamble.hpp"

namespace qp::catalog {

// 13 nodes x1..x8, y, y2..y5 with seven orthogonal triads, realized in R³
// with cos²(x1, x8) = 1/10.  designated: x = x1, z = x8.
gamble::OrthoGraph cats_cradle();

// 30 integer rays in R³ on which no state gives P(x) = P(z) = 1, where
// x = (1,0,0) and z = (1,1,0).  designated: x, z.
gamble::OrthoGraph ks_gamma();

// 13-node subgraph of ks_gamma carrying a 0/1 state with P(x) = P(z) = 1;
// its three-round closure contains ks_gamma and admits no extension of it.
gamble::OrthoGraph ks_core();
std::vector<Rational> ks_core_two_valued();

// Labels of the six nodes pinned to zero in frame-function problems.
const std::vector<std::string>& frame_zero_labels();

// Abstract (not realized) halving gadget around `target`: every frame
// function vanishing on the zero nodes and bounded by 1 has |f(target)| <= 1/2.
// Internal nodes are named target/a, target/b, ...
gamble::OrthoGraph halving_gadget(const std::string& target);

// one full context {a, b, c} in dimension 3
gamble::OrthoGraph triangle(const std::string& a = "e1", const std::string& b = "e2",
                            const std::string& c = "e3");

}  // namespace qp::catalog
