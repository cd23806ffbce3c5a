#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qp::cli {

// exit codes
inline constexpr int ok = 0;
inline constexpr int invalid = 2;
inline constexpr int infeasible = 3;
inline constexpr int usage = 64;
inline constexpr int malformed = 65;

// args excludes the program name.  Reports go to --out, to $QPROB_OUT_DIR,
// or to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "2*x1 - 1/2*x8 + y" against node labels; throws InvalidInput on unknown labels
struct Term {
    std::string label;
    std::string coef;
};
std::vector<Term> parse_objective(const std::string& text);

}  // namespace qp::cli
