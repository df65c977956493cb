#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eucalc/constructible.hpp"
#include "eucalc/errors.hpp"
#include "eucalc/projective.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

// Weighted sum of indicators of convex bodies in RP^n, plus an optional
// constant multiple of 1 on all of RP^n (the Euler characteristic term).
struct ProjConstructibleFn {
    int n = 0;
    Rational constant = 0;
    std::vector<std::pair<Rational, ProjBody>> terms;

    static ProjConstructibleFn indicator(const ProjBody& k) {
        ProjConstructibleFn f;
        f.n = k.n();
        f.terms.emplace_back(Rational(1), k);
        return f;
    }
};

inline Rational evaluate(const ProjConstructibleFn& f, const ProjPoint& x) {
    Rational s = f.constant;
    for (const auto& [w, k] : f.terms)
        if (k.contains(x)) s += w;
    return s;
}

inline Rational euler_integral(const ProjConstructibleFn& f) {
    // each body is compact convex (chi = 1); the constant term contributes
    // chi(RP^n)
    Rational s = f.constant * chi_projective_space(f.n);
    for (const auto& [w, k] : f.terms) s += w;
    return s;
}

// Image of the Euler Radon transform: each body K contributes
// weight * 1 on { H : H meets K } = complement of int(K^v), stored via
// the dual body; plus a constant on the dual projective space.
struct RadonImage {
    int n = 0;
    Rational constant = 0;
    std::vector<std::pair<Rational, ProjBody>> dual_terms; // (weight, K^v)
    std::vector<ProjBody> bodies;                          // original K_i, kept for the oracle
};

inline RadonImage radon(const ProjConstructibleFn& f) {
    RadonImage out;
    out.n = f.n;
    // the Radon image of the constant c is c * chi(fiber) = c * chi(RP^{n-1})
    out.constant = f.constant * chi_projective_space(f.n - 1);
    for (const auto& [w, k] : f.terms) {
        out.dual_terms.emplace_back(w, dual_body(k));
        out.bodies.push_back(k);
    }
    return out;
}

inline Rational eval_radon(const RadonImage& psi, const ProjHyperplane& h) {
    Rational s = psi.constant;
    for (std::size_t i = 0; i < psi.dual_terms.size(); ++i) {
        // H meets K  <=>  H not in int(K^v)
        if (classify_point(psi.dual_terms[i].second, h) != PointLocation::Interior)
            s += psi.dual_terms[i].first;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Dual transform R^t: Euler integral over the pencil of hyperplanes
// through a point, a projective subspace of RP^{n v} of dimension n-1.

// Brute-force pencil integral (n = 2, 3): restrict each term to the
// pencil, build the central arrangement of the induced linear forms in
// pencil coordinates, and sum chi_c over projective cells. A sign-vector
// cell with a strict sign projectivizes to an open (dim-1)-cell; the
// all-tight cell is a projective subspace.
inline Rational dual_radon_oracle(const RadonImage& psi, const ProjPoint& x) {
    const int n = psi.n;
    if (n != 2 && n != 3)
        throw DimensionUnsupported("dual_radon_oracle: n must be 2 or 3");
    const int m = n; // pencil coordinates live in R^n (projectivized to RP^{n-1})

    // basis of the pencil { xi : xi(x) = 0 }
    std::vector<Vec> basis = nullspace(Mat{x.homogeneous}, n + 1);
    auto to_dual = [&](const Vec& u) {
        Vec xi(n + 1, Rational(0));
        for (int j = 0; j < m; ++j) xi = add(xi, scale(u[j], basis[j]));
        return xi;
    };

    // linear forms cutting the pencil: one per generator of each original cone
    std::vector<Vec> forms;
    for (const auto& k : psi.bodies) {
        for (const auto& g : k.generators()) {
            Vec f(m, Rational(0));
            for (int j = 0; j < m; ++j) f[j] = dot(g, basis[j]);
            if (!is_zero(f)) {
                Vec c = primitive_signed(f);
                if (std::find(forms.begin(), forms.end(), c) == forms.end())
                    forms.push_back(std::move(c));
            }
        }
    }

    // value of psi at the pencil point represented by u (nonzero)
    auto value_at = [&](const Vec& u) {
        Vec xi = to_dual(u);
        ProjHyperplane h(xi);
        return eval_radon(psi, h);
    };

    if (forms.empty()) {
        Vec u(m, Rational(0));
        u[0] = 1;
        return value_at(u) * chi_projective_space(m - 1);
    }

    // central arrangement cells via the affine machinery (all offsets 0)
    CellDecomposition d;
    d.ambient_dim = m;
    for (const auto& f : forms) d.hyperplanes.push_back({f, Rational(0)});
    Cell root;
    root.closure = Polytope::whole_space(m);
    root.witness = Vec(m, Rational(0));
    root.dim = m;
    d.cells.push_back(std::move(root));
    std::vector<ArrHyperplane> prefix;
    for (const auto& hp : d.hyperplanes) {
        detail::split_cells(d.cells, prefix, hp, m);
        prefix.push_back(hp);
    }

    Rational total = 0;
    for (const auto& c : d.cells) {
        bool all_tight = std::all_of(c.signs.begin(), c.signs.end(),
                                     [](int s) { return s == 0; });
        if (all_tight) {
            // common intersection subspace L: contributes over RP(dim L - 1)
            if (c.dim == 0) continue; // the origin carries no projective points
            Vec u = c.closure.lines().front();
            total += value_at(u) * chi_projective_space(c.dim - 1);
            continue;
        }
        // pointed in some strict direction: antipodal pairs are distinct
        // cells; each projective cell is an open (dim-1)-cell with
        // chi_c = (-1)^{dim-1}, counted once per pair
        Vec u = c.witness;
        if (is_zero(u)) continue; // cone cell witness can only be 0 for subspaces
        Rational contrib = value_at(u);
        if ((c.dim - 1) % 2 != 0) contrib = -contrib;
        total += contrib / 2; // each projective cell seen twice (u and -u)
    }
    return total;
}

// Closed-form dual transform. The per-term coefficients (chi(RP^{n-1})
// on the body, chi(RP^{n-1}) - (-1)^{n-1} off it) are locked against
// dual_radon_oracle by the test suite.
inline Rational dual_radon_eval(const RadonImage& psi, const ProjPoint& x) {
    const int n = psi.n;
    Rational chi_pencil = chi_projective_space(n - 1);
    Rational s = psi.constant * chi_pencil;
    Rational off_coeff = chi_pencil - (n % 2 == 1 ? Rational(1) : Rational(-1));
    for (std::size_t i = 0; i < psi.bodies.size(); ++i) {
        const Rational& w = psi.dual_terms[i].first;
        s += w * (psi.bodies[i].contains(x) ? chi_pencil : off_coeff);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Inversion-formula verifier: checks
//   (-1)^{n-1} (R^t R phi)(x) = phi(x) + 1/2 ((-1)^{n-1} - 1) * Int phi
// exactly at every sample point.
struct InversionReport {
    struct Entry {
        ProjPoint point;
        Rational lhs, rhs, residual;
    };
    std::vector<Entry> entries;
    bool all_zero = true;
};

inline InversionReport verify_inversion(const ProjConstructibleFn& f,
                                        const std::vector<ProjPoint>& samples) {
    RadonImage psi = radon(f);
    Rational sign = (f.n % 2 == 1) ? Rational(1) : Rational(-1);
    Rational correction = Rational(1, 2) * (sign - 1) * euler_integral(f);
    InversionReport rep;
    for (const auto& x : samples) {
        InversionReport::Entry e{x, 0, 0, 0};
        e.lhs = sign * dual_radon_eval(psi, x);
        e.rhs = evaluate(f, x) + correction;
        e.residual = e.lhs - e.rhs;
        if (sgn(e.residual) != 0) rep.all_zero = false;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// Kernel probe: the Radon transform of the constant function is
// chi(RP^{n-1}) everywhere, so constants die exactly when n is even.
struct KernelProbeReport {
    int n = 0;
    Rational constant_image_value;
    std::vector<Rational> sampled_values;
    bool consistent = true;
};

inline KernelProbeReport kernel_probe(int n, const std::vector<ProjHyperplane>& samples) {
    if (n != 2 && n != 3)
        throw DimensionUnsupported("kernel_probe: n must be 2 or 3");
    ProjConstructibleFn one;
    one.n = n;
    one.constant = 1;
    RadonImage img = radon(one);
    KernelProbeReport rep;
    rep.n = n;
    rep.constant_image_value = chi_projective_space(n - 1);
    for (const auto& h : samples) {
        Rational v = eval_radon(img, h);
        rep.sampled_values.push_back(v);
        if (v != rep.constant_image_value) rep.consistent = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Affine-chart transforms on R^2.

// Euler integral of phi restricted to the line { x : normal.x = offset }.
inline Rational radon_affine_line(const ConstructibleFn& f, const Vec& normal,
                                  const Rational& offset) {
    if (f.ambient_dim != 2)
        throw DimensionUnsupported("radon_affine_line: expects R^2");
    if (!f.compactly_supported())
        throw NotCompactlySupported("radon_affine_line: unbounded support");
    if (is_zero(normal)) throw Error("radon_affine_line: zero normal");
    Vec d = {normal[1], -normal[0]};
    Vec p(2, Rational(0));
    int piv = sgn(normal[0]) != 0 ? 0 : 1;
    p[piv] = offset / normal[piv];
    return euler_integral_line(restrict_to_line(f, p, d));
}

// Classical (length-kernel) sinogram: entry (theta, p) is the total
// weighted chord length of the line x cos(theta) + y sin(theta) = p.
// Clipping is exact in the dyadic rationalization of (cos, sin, p);
// the single square root per row is the only float operation.
inline std::vector<std::vector<double>> classical_sinogram(const ConstructibleFn& f,
                                                           const std::vector<double>& angles,
                                                           const std::vector<double>& offsets) {
    if (f.ambient_dim != 2)
        throw DimensionUnsupported("classical_sinogram: expects R^2");
    if (!f.compactly_supported())
        throw NotCompactlySupported("classical_sinogram: unbounded support");
    std::vector<std::vector<double>> out(angles.size(),
                                         std::vector<double>(offsets.size(), 0.0));
    for (std::size_t a = 0; a < angles.size(); ++a) {
        Rational c = rational_from_double(std::cos(angles[a]));
        Rational s = rational_from_double(std::sin(angles[a]));
        Vec dir = {-s, c};
        double dir_norm = std::sqrt(to_double(c * c + s * s));
        for (std::size_t o = 0; o < offsets.size(); ++o) {
            Rational p = rational_from_double(offsets[o]);
            Vec base = {c * p, s * p};
            double total = 0.0;
            for (const auto& [w, k] : f.terms) {
                if (k.is_empty() || sgn(w) == 0) continue;
                auto seg = clip_to_line(k, base, dir);
                if (seg)
                    total += to_double(w) * to_double(seg->second - seg->first) * dir_norm;
            }
            out[a][o] = total;
        }
    }
    return out;
}

} // namespace eucalc
