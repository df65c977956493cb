#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "eucalc/cone.hpp"
#include "eucalc/errors.hpp"
#include "eucalc/polytope.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

// Point of RP^n in homogeneous coordinates; canonical form is the
// primitive integer vector with positive first nonzero entry.
struct ProjPoint {
    Vec homogeneous;

    explicit ProjPoint(Vec h) : homogeneous(primitive_signed(std::move(h))) {
        if (is_zero(homogeneous)) throw Error("projective point: zero vector");
    }

    int n() const { return static_cast<int>(homogeneous.size()) - 1; }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.homogeneous == b.homogeneous;
    }
};

// Hyperplanes of RP^n live in the dual space but carry the same data.
using ProjHyperplane = ProjPoint;

inline Rational pair(const ProjHyperplane& h, const ProjPoint& x) {
    return dot(h.homogeneous, x.homogeneous);
}

// chi(RP^d) = 1 for even d, 0 for odd d.
inline Rational chi_projective_space(int d) {
    if (d < 0) throw Error("chi_projective_space: negative dimension");
    return d % 2 == 0 ? Rational(1) : Rational(0);
}

// Convex compact body in RP^n, stored as the salient cone C in Q^{n+1}
// with K = r(C \ 0). The witness hyperplane misses K and fixes the sign
// of the cone (all generators pair strictly positively with it).
class ProjBody {
public:
    ProjBody(int n, std::vector<Vec> generators, Vec witness)
        : n_(n), witness_(primitive(std::move(witness))) {
        if (n < 1 || n + 1 > kMaxAmbientDim)
            throw DimensionUnsupported("ProjBody: n must be 1..3");
        if (generators.empty()) throw Error("ProjBody: no generators");
        for (auto& g : generators) {
            if (static_cast<int>(g.size()) != n + 1)
                throw AmbientMismatch("ProjBody: generator length != n+1");
            int s = sgn(dot(witness_, g));
            if (s == 0) throw Error("ProjBody: witness hyperplane touches the cone");
            if (s < 0) for (auto& x : g) x = -x;
        }
        ConeGenerators min = minimal_generators(generators, {}, n + 1);
        if (!min.lineality.empty())
            throw Error("ProjBody: cone is not salient");
        generators_ = std::move(min.rays);
        dim_ = rank(Mat(generators_.begin(), generators_.end()));
        ConeGenerators dual = dual_description(generators_, n + 1);
        dual_generators_ = dual.rays;
        dual_lineality_ = dual.lineality;
        std::sort(dual_generators_.begin(), dual_generators_.end(), lex_less);
    }

    int n() const { return n_; }
    // dimension of the cone C; the body is full-dimensional iff this is n+1
    int cone_dim() const { return dim_; }
    bool full_dimensional() const { return dim_ == n_ + 1; }
    const std::vector<Vec>& generators() const { return generators_; }
    const std::vector<Vec>& dual_generators() const { return dual_generators_; }
    const Vec& witness() const { return witness_; }

    // membership of a projective point: some sign of x lies in C, i.e.
    // the dual generators (and dual lineality) pair consistently
    bool contains(const ProjPoint& x) const {
        return locate(x) != PointLocation::Outside;
    }

    PointLocation locate(const ProjPoint& x) const {
        // fix the sign of x against the witness; points on the witness
        // hyperplane are outside by construction
        Vec v = x.homogeneous;
        int ws = sgn(dot(witness_, v));
        if (ws == 0) return PointLocation::Outside;
        if (ws < 0) for (auto& t : v) t = -t;
        for (const auto& l : dual_lineality_)
            if (sgn(dot(l, v)) != 0) return PointLocation::Outside;
        bool tight = false;
        for (const auto& xi : dual_generators_) {
            int s = sgn(dot(xi, v));
            if (s < 0) return PointLocation::Outside;
            if (s == 0) tight = true;
        }
        // relative to RP^n: lower-dimensional bodies have no interior
        if (!full_dimensional()) return PointLocation::Boundary;
        return tight ? PointLocation::Boundary : PointLocation::Interior;
    }

    friend bool operator==(const ProjBody& a, const ProjBody& b) {
        return a.n_ == b.n_ && a.generators_ == b.generators_;
    }

private:
    int n_ = 0;
    int dim_ = 0;
    std::vector<Vec> generators_;      // extreme rays, canonical order
    std::vector<Vec> dual_generators_; // extreme rays of the dual cone
    std::vector<Vec> dual_lineality_;  // nonempty iff body is lower-dimensional
    Vec witness_;
};

// Polar dual body K^v: projectivization of the dual cone. The witness of
// the dual is the functional of any interior point of K.
inline ProjBody dual_body(const ProjBody& k) {
    if (!k.full_dimensional())
        throw LowerDimensionalBody("dual_body: body must be full-dimensional");
    Vec interior(k.n() + 1, Rational(0));
    for (const auto& g : k.generators()) interior = add(interior, g);
    return ProjBody(k.n(), k.dual_generators(), std::move(interior));
}

// Does the hyperplane H meet K? H misses K exactly when the functional
// takes one strict sign on all cone generators.
inline bool meets(const ProjBody& k, const ProjHyperplane& h) {
    bool pos = false, neg = false;
    for (const auto& g : k.generators()) {
        int s = sgn(dot(h.homogeneous, g));
        if (s == 0) return true; // H passes through a point of K
        (s > 0 ? pos : neg) = true;
        if (pos && neg) return true;
    }
    return false;
}

inline PointLocation classify_point(const ProjBody& k, const ProjPoint& x) {
    return k.locate(x);
}

// Affine chart { <witness, y> = 1 }: returns the polytope of chart
// coordinates together with the affine parametrization u -> y0 + B u of
// the chart slice (so cone generators can be regenerated from it).
struct ChartEmbedding {
    AffineMap chart_to_homogeneous; // R^n -> R^{n+1}, image in the slice
    Polytope polytope;              // K in chart coordinates
};

inline ChartEmbedding chart_embed(const ProjBody& k) {
    const int n = k.n();
    const Vec& w = k.witness();
    // base point of the slice: y0 with <w, y0> = 1
    int piv = 0;
    while (sgn(w[piv]) == 0) ++piv;
    Vec y0(n + 1, Rational(0));
    y0[piv] = Rational(1) / w[piv];
    // basis of the hyperplane <w, .> = 0
    std::vector<Vec> basis = nullspace(Mat{w}, n + 1);

    AffineMap param;
    param.matrix.assign(n + 1, Vec(n, Rational(0)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i) param.matrix[i][j] = basis[j][i];
    param.translation = y0;

    // chart coordinates of each generator: solve y0 + B u = g / <w,g>
    std::vector<Vec> verts;
    for (const auto& g : k.generators()) {
        Vec target = scale(Rational(1) / dot(w, g), g);
        Mat b(n + 1, Vec(n, Rational(0)));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j < n; ++j) b[i][j] = param.matrix[i][j];
        auto u = solve(b, sub(target, y0));
        if (!u) throw Error("chart_embed: generator outside the chart");
        verts.push_back(*u);
    }
    ChartEmbedding out;
    out.chart_to_homogeneous = std::move(param);
    out.polytope = Polytope::from_vertices(n, std::move(verts));
    return out;
}

// Rebuild the cone body from chart coordinates (round-trip companion of
// chart_embed).
inline ProjBody body_from_chart(int n, const Polytope& chart_poly, const AffineMap& param,
                                const Vec& witness) {
    std::vector<Vec> gens;
    for (const auto& v : chart_poly.vertices()) gens.push_back(param(v));
    return ProjBody(n, std::move(gens), witness);
}

} // namespace eucalc
