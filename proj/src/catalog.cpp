#include "qprob/catalog.hpp"

namespace qp::catalog {

using gamble::OrthoGraph;

namespace {

Vec<cplx> v3(double a, double b, double c) {
    Vec<cplx> v(3);
    v << a, b, c;
    return v;
}

struct IntRay {
    const char* label;
    int a, b, c;
};

// x = (1,0,0), z = (1,1,0); the rest were found by completing orthogonal
// pairs of a small seed set and pruning while the LP obstruction persisted
const IntRay kGamma[] = {
    {"x", 1, 0, 0},    {"z", 1, 1, 0},    {"v2", 0, 1, 0},   {"v3", 0, 0, 1},   {"v4", 1, 1, 1},
    {"v5", 1, -1, 1},  {"v6", 1, 2, 0},   {"v7", 2, 1, 1},   {"v8", 1, -1, 0},  {"v9", 0, 1, -1},
    {"v10", 0, 1, 1},  {"v11", 2, 1, -1}, {"v12", 2, -1, 0}, {"v13", 1, -1, -1}, {"v14", 1, 1, -2},
    {"v15", 1, -1, -2}, {"v16", 1, 0, -1}, {"v17", 1, 0, 1},  {"v18", 1, -2, 1}, {"v19", 1, 2, 1},
    {"v20", 1, 0, -2}, {"v21", 2, 0, 1},  {"v22", 1, -2, 0}, {"v23", 2, 1, 0},  {"v24", 0, 2, -1},
    {"v25", 0, 1, 2},  {"v26", 1, 2, -1}, {"v27", 2, -1, 1}, {"v28", 1, 1, -1}, {"v29", 1, 1, 2},
};

const char* kCore[] = {"x", "z", "v2", "v4", "v5", "v6", "v7", "v9", "v16", "v20", "v22", "v24", "v27"};

OrthoGraph from_int_rays(const std::vector<IntRay>& rays) {
    std::vector<std::string> labels;
    std::vector<Vec<cplx>> vs;
    for (const auto& r : rays) {
        labels.push_back(r.label);
        vs.push_back(v3(r.a, r.b, r.c));
    }
    OrthoGraph g = OrthoGraph::from_realization(3, labels, vs);
    g.designated = {{"x", "x"}, {"z", "z"}};
    return g;
}

}  // namespace

OrthoGraph cats_cradle() {
    std::vector<std::string> labels{"x1", "x2", "x3", "x4", "x5", "x6", "x7",
                                    "x8", "y",  "y2", "y3", "y4", "y5"};
    std::vector<Vec<cplx>> rays{
        v3(1, 0, 0),
        v3(0, 0.94275466552834619, 0.33348709214081435),
        v3(0, -0.81145295797594019, 0.5844177418526042),
        v3(-0.7072698106219738, 0.23575660354065794, -0.66647448478522431),
        v3(-0.86863961346360619, 0.2895465378212021, 0.40202987993127076),
        v3(-0.70694371415463986, -0.23586535250330654, 0.66678191375121576),
        v3(-0.49544446905964834, -0.50764840138411971, -0.70486018376012061),
        v3(0.31622776601683794, 0.94868329805051377, 0),
        v3(0.50474286829577486, -0.82864988750414892, 0.24202066201858752),
        v3(0, -0.3334870921408144, 0.9427546655283463),
        v3(0, -0.5844177418526042, -0.81145295797594019),
        v3(0.63227321229256361, -0.21075773743085457, -0.74552784061379607),
        v3(-0.38139903240805001, 0.12713301080268335, -0.91562654813108602),
    };
    OrthoGraph g = OrthoGraph::from_realization(3, labels, rays);
    g.designated = {{"x", "x1"}, {"z", "x8"}};
    g.metadata = {{"cos2_x1_x8", "1/10"},
                  {"construction", "x2, x3 orthogonal to x1 at fixed angles; x4..x7 by cross products; "
                                   "x8 solved so that x6 is orthogonal to x7"}};
    return g;
}

OrthoGraph ks_gamma() { return from_int_rays({std::begin(kGamma), std::end(kGamma)}); }

OrthoGraph ks_core() {
    std::vector<IntRay> rays;
    for (const char* l : kCore)
        for (const auto& r : kGamma)
            if (std::string(r.label) == l) rays.push_back(r);
    return from_int_rays(rays);
}

std::vector<Rational> ks_core_two_valued() {
    OrthoGraph g = ks_core();
    std::vector<Rational> p(g.size(), 0);
    p[g.index("x")] = 1;
    p[g.index("z")] = 1;
    return p;
}

const std::vector<std::string>& frame_zero_labels() {
    static const std::vector<std::string> z{"e1", "e2", "e3", "b12", "b13", "b23"};
    return z;
}

OrthoGraph triangle(const std::string& a, const std::string& b, const std::string& c) {
    OrthoGraph g(3);
    g.add_node(a);
    g.add_node(b);
    g.add_node(c);
    g.add_edge(a, b);
    g.add_edge(a, c);
    g.add_edge(b, c);
    return g;
}

// Triads {t,a,b} {t,c,d} {a,c,w1} {b,d,w2} {w1,w2,y}.  With the constant
// forced to zero, {t,a,c} (closed by the edges) and {a,c,w1} give f(w1) = f(t),
// likewise f(w2) = f(t), so 2 f(t) = -f(y).  No realization exists in R³:
// t, a, c mutually orthogonal and a, c, w1 mutually orthogonal force w1 = t.
OrthoGraph halving_gadget(const std::string& t) {
    OrthoGraph g = triangle("e1", "e2", "e3");
    for (const char* b : {"b12", "b13", "b23"}) g.add_node(b);
    g.add_edge("b12", "e3");
    g.add_edge("b13", "e2");
    g.add_edge("b23", "e1");
    auto n = [&](const char* s) { return t + "/" + s; };
    g.ensure_node(t);
    for (const char* s : {"a", "b", "c", "d", "w1", "w2", "y"}) g.add_node(n(s));
    auto tri = [&](const std::string& p, const std::string& q, const std::string& r) {
        g.add_edge(p, q);
        g.add_edge(p, r);
        g.add_edge(q, r);
    };
    tri(t, n("a"), n("b"));
    tri(t, n("c"), n("d"));
    tri(n("a"), n("c"), n("w1"));
    tri(n("b"), n("d"), n("w2"));
    tri(n("w1"), n("w2"), n("y"));
    g.designated = {{"z", t}};
    g.metadata = {{"realized", "false"}};
    return g;
}

}  // namespace qp::catalog
