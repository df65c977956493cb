#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "eucalc/linalg.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

// Generator description of a polyhedral cone: extreme rays modulo the
// lineality space, plus a basis of the lineality space.
struct ConeGenerators {
    std::vector<Vec> rays;
    std::vector<Vec> lineality;
};

namespace detail {

using Bits = unsigned __int128; // tight-constraint set per ray; <= 128 constraints

struct DDRay {
    Vec v;
    Bits tight = 0;
};

} // namespace detail

// Double description: extreme rays of { x : a.x >= 0 for all a in normals }
// in R^dim. Standard incremental algorithm with the combinatorial
// adjacency test; lineality handled by splitting off one basis vector
// per constraint that cuts it.
inline ConeGenerators dual_description(const std::vector<Vec>& normals, int dim) {
    using detail::Bits;
    using detail::DDRay;

    if (normals.size() > 128)
        throw Error("double description limited to 128 constraints");

    std::vector<Vec> lin;
    for (int i = 0; i < dim; ++i) {
        Vec e(dim, Rational(0));
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<DDRay> rays;

    for (std::size_t k = 0; k < normals.size(); ++k) {
        const Vec& a = normals[k];
        const Bits bit = Bits{1} << k;

        // does a cut the lineality space?
        int cut = -1;
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (sgn(dot(a, lin[i])) != 0) { cut = static_cast<int>(i); break; }
        if (cut >= 0) {
            Vec l0 = lin[cut];
            Rational al0 = dot(a, l0);
            if (sgn(al0) < 0) { for (auto& x : l0) x = -x; al0 = -al0; }
            lin.erase(lin.begin() + cut);
            for (auto& l : lin) {
                Rational f = dot(a, l) / al0;
                if (sgn(f) != 0) l = primitive_signed(sub(l, scale(f, l0)));
            }
            for (auto& r : rays) {
                Rational f = dot(a, r.v) / al0;
                if (sgn(f) != 0) r.v = primitive(sub(r.v, scale(f, l0)));
            }
            DDRay nr;
            nr.v = primitive(l0);
            // l0 came from the lineality space: tight on every earlier constraint
            nr.tight = bit - 1;
            rays.push_back(nr);
            // the new constraint is tight on everything that remains except nr
            for (auto& r : rays)
                if (sgn(dot(a, r.v)) == 0) r.tight |= bit;
            continue;
        }

        std::vector<std::size_t> pos, neg, zero;
        std::vector<Rational> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            int s = sgn(val[i]);
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
            else zero.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i : zero) rays[i].tight |= bit;
            continue;
        }

        std::vector<DDRay> next;
        for (std::size_t i : pos) next.push_back(rays[i]);
        for (std::size_t i : zero) {
            next.push_back(rays[i]);
            next.back().tight |= bit;
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                Bits common = rays[p].tight & rays[n].tight;
                bool adjacent = true;
                for (std::size_t j = 0; j < rays.size(); ++j) {
                    if (j == p || j == n) continue;
                    if ((common & ~rays[j].tight) == 0) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                DDRay w;
                w.v = primitive(sub(scale(val[p], rays[n].v), scale(val[n], rays[p].v)));
                w.tight = common | bit;
                next.push_back(std::move(w));
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    for (auto& r : rays) out.rays.push_back(primitive(r.v));
    out.lineality = lin;
    return out;
}

// Minimal inequality description of the cone spanned by `gens` (+- each
// vector of `lines`): pairs (inequality normals, equality normals) with
// the cone equal to { x : n.x >= 0, e.x = 0 }.
struct ConeInequalities {
    std::vector<Vec> inequalities;
    std::vector<Vec> equalities;
};

inline ConeInequalities cone_inequalities(const std::vector<Vec>& gens,
                                          const std::vector<Vec>& lines, int dim) {
    std::vector<Vec> constraints = gens;
    for (const auto& l : lines) {
        constraints.push_back(l);
        constraints.push_back(scale(Rational(-1), l));
    }
    ConeGenerators dual = dual_description(constraints, dim);
    ConeInequalities out;
    out.inequalities = dual.rays;
    out.equalities = dual.lineality;
    return out;
}

// Reduce a generator list to extreme rays + lineality basis (dualize twice).
inline ConeGenerators minimal_generators(const std::vector<Vec>& gens,
                                         const std::vector<Vec>& lines, int dim) {
    ConeInequalities ineq = cone_inequalities(gens, lines, dim);
    std::vector<Vec> normals = ineq.inequalities;
    for (const auto& e : ineq.equalities) {
        normals.push_back(e);
        normals.push_back(scale(Rational(-1), e));
    }
    ConeGenerators g = dual_description(normals, dim);
    std::sort(g.rays.begin(), g.rays.end(), lex_less);
    std::sort(g.lineality.begin(), g.lineality.end(), lex_less);
    return g;
}

inline int cone_dim(const ConeGenerators& g) {
    Mat m = g.rays;
    for (const auto& l : g.lineality) m.push_back(l);
    return rank(std::move(m));
}

} // namespace eucalc
