#pragma once

// JSON forms of the workbench objects.  Rationals travel as "p/q" strings;
// complex scalars as [re, im].

#include <json.hpp>

#include <string>
#include <vector>

#include "qprob/core.hpp"
#include "qprob/gamble.hpp"
#include "qprob/lattice.hpp"
#include "qprob/polytope.hpp"
#include "qprob/rational.hpp"

namespace qp::io {

using json = nlohmann::ordered_json;

// Reads and parses a file; syntax errors carry line and column.
json load_file(const std::string& path);
json parse_text(const std::string& text, const std::string& origin = "<input>");

// A field-path-aware reader: errors name the offending field ("edges[3][1]").
class Field {
public:
    Field(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}
    const json& value() const { return *j_; }
    const std::string& path() const { return path_; }
    bool has(const std::string& key) const;
    Field operator[](const std::string& key) const;  // required member
    Field operator[](size_t i) const;
    size_t size() const;  // array length, throws if not an array
    [[noreturn]] void fail(const std::string& msg) const;

    std::string str() const;
    long integer() const;
    double number() const;
    Rational rational() const;  // "p/q", integer, or decimal literal
    cplx complex() const;       // number or [re, im]

private:
    const json* j_;
    std::string path_;
};

json to_json(const Rational& r);
json to_json(cplx z);
json rationals(const std::vector<Rational>& v);
json numbers(const std::vector<double>& v);
json vector_json(const Vec<cplx>& v);
json matrix_json(const Mat<cplx>& m);

std::vector<Rational> read_rationals(const Field& f);
std::vector<double> read_numbers(const Field& f);
Vec<cplx> read_vector(const Field& f);
Mat<cplx> read_matrix(const Field& f);

json graph_json(const gamble::OrthoGraph& g);
gamble::OrthoGraph read_graph(const Field& f);

json lattice_json(const lattice::FiniteOrtholattice& L);
lattice::FiniteOrtholattice read_lattice(const Field& f);

json scheme_json(const polytope::EventScheme& s);
polytope::EventScheme read_scheme(const Field& f);

json inequality_json(const polytope::LinearInequality& f);

}  // namespace qp::io
