#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "eucalc/errors.hpp"
#include "eucalc/polytope.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

inline constexpr std::size_t kMaxArrangementHyperplanes = 24;

// Finite weighted sum of indicator functions of closed convex polyhedra.
struct ConstructibleFn {
    int ambient_dim = 0;
    std::vector<std::pair<Rational, Polytope>> terms;

    static ConstructibleFn indicator(const Polytope& p) {
        ConstructibleFn f;
        f.ambient_dim = p.ambient_dim();
        if (!p.is_empty()) f.terms.emplace_back(Rational(1), p);
        return f;
    }

    static ConstructibleFn zero(int n) {
        ConstructibleFn f;
        f.ambient_dim = n;
        return f;
    }

    bool compactly_supported() const {
        for (const auto& [w, k] : terms)
            if (sgn(w) != 0 && !k.is_bounded()) return false;
        return true;
    }
};

inline ConstructibleFn operator+(ConstructibleFn a, const ConstructibleFn& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw AmbientMismatch("constructible sum: ambient dimensions differ");
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
}

inline ConstructibleFn operator*(const Rational& c, ConstructibleFn f) {
    for (auto& [w, k] : f.terms) w *= c;
    return f;
}

inline ConstructibleFn operator-(ConstructibleFn a, const ConstructibleFn& b) {
    return std::move(a) + Rational(-1) * b;
}

inline Rational evaluate(const ConstructibleFn& f, const Vec& x) {
    if (static_cast<int>(x.size()) != f.ambient_dim)
        throw AmbientMismatch("evaluate: point dimension mismatch");
    Rational s = 0;
    for (const auto& [w, k] : f.terms)
        if (k.contains(x)) s += w;
    return s;
}

inline ConstructibleFn multiply(const ConstructibleFn& a, const ConstructibleFn& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw AmbientMismatch("multiply: ambient dimensions differ");
    ConstructibleFn r = ConstructibleFn::zero(a.ambient_dim);
    for (const auto& [wa, ka] : a.terms) {
        for (const auto& [wb, kb] : b.terms) {
            Polytope k = intersect(ka, kb);
            if (!k.is_empty()) r.terms.emplace_back(wa * wb, std::move(k));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Hyperplane arrangement normal form.

// Oriented hyperplane normal.x = offset, canonicalized so arrangement
// hyperplanes compare structurally.
struct ArrHyperplane {
    Vec normal; // primitive, first nonzero entry positive
    Rational offset;

    friend bool operator==(const ArrHyperplane& a, const ArrHyperplane& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
};

inline ArrHyperplane canonical_hyperplane(Vec normal, Rational offset) {
    Vec joint = std::move(normal);
    joint.push_back(std::move(offset));
    joint = primitive_signed(joint);
    ArrHyperplane h;
    h.offset = joint.back();
    joint.pop_back();
    h.normal = std::move(joint);
    return h;
}

// One relatively open cell of the arrangement: sign pattern over the
// hyperplane list, plus its closed hull, a relative-interior witness,
// and the function value there.
struct Cell {
    std::vector<int> signs; // -1 / 0 / +1 per hyperplane
    Polytope closure;
    Vec witness;
    int dim = 0;
    Rational value;
};

struct CellDecomposition {
    int ambient_dim = 0;
    std::vector<ArrHyperplane> hyperplanes;
    std::vector<Cell> cells;
};

namespace detail {

inline std::vector<ArrHyperplane> collect_hyperplanes(const ConstructibleFn& f) {
    std::vector<ArrHyperplane> hps;
    for (const auto& [w, k] : f.terms) {
        if (k.is_empty()) continue;
        for (const auto& h : k.halfspaces()) {
            ArrHyperplane a = canonical_hyperplane(h.normal, h.offset);
            if (std::find(hps.begin(), hps.end(), a) == hps.end()) hps.push_back(a);
        }
    }
    return hps;
}

// Split every current cell by one more hyperplane. Candidate children are
// kept when the relative-interior witness of the candidate's closure
// realizes every strict sign strictly (so the open cell is genuinely there).
inline void split_cells(std::vector<Cell>& cells, const std::vector<ArrHyperplane>& prefix,
                        const ArrHyperplane& hp, int n) {
    std::vector<Cell> next;
    for (auto& c : cells) {
        for (int s : {-1, 0, 1}) {
            std::vector<Halfspace> hs = c.closure.halfspaces();
            if (s <= 0) hs.push_back(canonical_halfspace(hp.normal, hp.offset));
            if (s >= 0) {
                Vec neg = hp.normal;
                for (auto& x : neg) x = -x;
                hs.push_back(canonical_halfspace(std::move(neg), -hp.offset));
            }
            Polytope cl = Polytope::from_halfspaces(n, std::move(hs));
            if (cl.is_empty()) continue;
            Vec w = cl.relative_interior_point();
            // verify the full strict-sign pattern at the witness: adding a
            // tight constraint may have collapsed an earlier strict sign
            if (sgn(dot(hp.normal, w) - hp.offset) != s) continue;
            bool genuine = true;
            for (std::size_t i = 0; i < prefix.size(); ++i) {
                if (sgn(dot(prefix[i].normal, w) - prefix[i].offset) != c.signs[i]) {
                    genuine = false;
                    break;
                }
            }
            if (!genuine) continue;
            Cell child;
            child.signs = c.signs;
            child.signs.push_back(s);
            child.closure = std::move(cl);
            child.witness = std::move(w);
            child.dim = child.closure.dim();
            next.push_back(std::move(child));
        }
    }
    cells = std::move(next);
}

} // namespace detail

// Cell decomposition of R^n induced by all facet hyperplanes of f's
// supports, each cell labeled with f's value at an interior witness.
inline CellDecomposition normalize(const ConstructibleFn& f) {
    CellDecomposition d;
    d.ambient_dim = f.ambient_dim;
    d.hyperplanes = detail::collect_hyperplanes(f);
    if (d.hyperplanes.size() > kMaxArrangementHyperplanes)
        throw ArrangementTooLarge("normalize: too many distinct hyperplanes");

    Cell root;
    root.closure = Polytope::whole_space(f.ambient_dim);
    root.witness = Vec(f.ambient_dim, Rational(0));
    root.dim = f.ambient_dim;
    d.cells.push_back(std::move(root));
    std::vector<ArrHyperplane> prefix;
    for (const auto& hp : d.hyperplanes) {
        detail::split_cells(d.cells, prefix, hp, f.ambient_dim);
        prefix.push_back(hp);
    }

    for (auto& c : d.cells) c.value = evaluate(f, c.witness);
    std::sort(d.cells.begin(), d.cells.end(),
              [](const Cell& a, const Cell& b) { return a.signs < b.signs; });
    return d;
}

// Extensional equality: compare values over the joint arrangement.
inline bool extensionally_equal(const ConstructibleFn& a, const ConstructibleFn& b) {
    if (a.ambient_dim != b.ambient_dim) return false;
    ConstructibleFn joint = a + b;
    CellDecomposition d = normalize(joint);
    for (const auto& c : d.cells)
        if (evaluate(a, c.witness) != evaluate(b, c.witness)) return false;
    return true;
}

// Euler integral: sum of weight * chi(support) over terms; chi of a
// nonempty compact convex set is 1. The cell route (chi_c of a
// relatively open d-cell is (-1)^d) is exposed separately as an oracle.
inline Rational euler_integral(const ConstructibleFn& f) {
    if (!f.compactly_supported())
        throw NotCompactlySupported("euler_integral: unbounded support term");
    Rational s = 0;
    for (const auto& [w, k] : f.terms)
        if (!k.is_empty()) s += w;
    return s;
}

inline Rational euler_integral_cells(const ConstructibleFn& f) {
    if (!f.compactly_supported())
        throw NotCompactlySupported("euler_integral_cells: unbounded support term");
    CellDecomposition d = normalize(f);
    Rational s = 0;
    for (const auto& c : d.cells) {
        if (sgn(c.value) == 0) continue;
        if (c.dim % 2 == 0) s += c.value; else s -= c.value;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Functorial operations.

inline ConstructibleFn pullback(const ConstructibleFn& f, const AffineMap& m) {
    if (m.target_dim() != f.ambient_dim)
        throw AmbientMismatch("pullback: map target != function ambient");
    ConstructibleFn r = ConstructibleFn::zero(m.source_dim());
    for (const auto& [w, k] : f.terms) {
        Polytope pre = affine_preimage(k, m);
        if (!pre.is_empty()) r.terms.emplace_back(w, std::move(pre));
    }
    return r;
}

inline ConstructibleFn pushforward(const ConstructibleFn& f, const AffineMap& m) {
    if (m.source_dim() != f.ambient_dim)
        throw AmbientMismatch("pushforward: map source != function ambient");
    ConstructibleFn r = ConstructibleFn::zero(m.target_dim());
    for (const auto& [w, k] : f.terms) {
        if (!k.is_bounded())
            throw UnboundedTerm("pushforward: term support must be bounded");
        if (k.is_empty()) continue;
        // fibers of a compact convex set are compact convex, chi in {0,1},
        // so the push-forward is the indicator of the image
        r.terms.emplace_back(w, affine_image(k, m));
    }
    return r;
}

inline ConstructibleFn exterior_product(const ConstructibleFn& a, const ConstructibleFn& b) {
    const int m = a.ambient_dim, n = b.ambient_dim;
    ConstructibleFn r = ConstructibleFn::zero(m + n);
    for (const auto& [wa, ka] : a.terms) {
        for (const auto& [wb, kb] : b.terms) {
            if (ka.is_empty() || kb.is_empty()) continue;
            std::vector<Halfspace> hs;
            for (const auto& h : ka.halfspaces()) {
                Vec nn(m + n, Rational(0));
                for (int i = 0; i < m; ++i) nn[i] = h.normal[i];
                hs.push_back(canonical_halfspace(std::move(nn), h.offset));
            }
            for (const auto& h : kb.halfspaces()) {
                Vec nn(m + n, Rational(0));
                for (int i = 0; i < n; ++i) nn[m + i] = h.normal[i];
                hs.push_back(canonical_halfspace(std::move(nn), h.offset));
            }
            r.terms.emplace_back(wa * wb, Polytope::from_halfspaces(m + n, std::move(hs)));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Exact restriction to a rational line and 1-D Euler integration; shared
// by the fiber oracle and the affine Euler line transform.

// restriction of f to { p + t d : t real } as breakpoints on the t-axis
struct LineRestriction {
    // closed parameter intervals with weights, plus whether each term
    // clipped to a point or an interval
    std::vector<std::pair<Rational, std::pair<Rational, Rational>>> intervals; // w, [lo,hi]
};

// Clip a polyhedron to the line p + t d; nullopt when disjoint,
// otherwise the closed (possibly degenerate) interval [lo,hi]. Requires
// the trace to be bounded, which holds for bounded supports.
inline std::optional<std::pair<Rational, Rational>> clip_to_line(const Polytope& k,
                                                                 const Vec& p, const Vec& d) {
    bool has_lo = false, has_hi = false;
    Rational lo = 0, hi = 0;
    for (const auto& h : k.halfspaces()) {
        Rational a = dot(h.normal, d);
        Rational b = h.offset - dot(h.normal, p);
        int s = sgn(a);
        if (s == 0) {
            if (sgn(b) < 0) return std::nullopt;
            continue;
        }
        Rational t = b / a;
        if (s > 0) {
            if (!has_hi || t < hi) { hi = t; has_hi = true; }
        } else {
            if (!has_lo || t > lo) { lo = t; has_lo = true; }
        }
    }
    if (!has_lo || !has_hi)
        throw UnboundedTerm("clip_to_line: unbounded trace");
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

inline LineRestriction restrict_to_line(const ConstructibleFn& f, const Vec& p, const Vec& d) {
    LineRestriction r;
    for (const auto& [w, k] : f.terms) {
        if (k.is_empty() || sgn(w) == 0) continue;
        auto seg = clip_to_line(k, p, d);
        if (seg) r.intervals.emplace_back(w, *seg);
    }
    return r;
}

// chi_c integral of a 1-D piecewise constant function given as weighted
// closed intervals: breakpoint arrangement, chi_c(point)=1,
// chi_c(open interval)=-1.
inline Rational euler_integral_line(const LineRestriction& r) {
    std::vector<Rational> pts;
    for (const auto& [w, seg] : r.intervals) {
        pts.push_back(seg.first);
        pts.push_back(seg.second);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto value_at = [&](const Rational& t) {
        Rational s = 0;
        for (const auto& [w, seg] : r.intervals)
            if (seg.first <= t && t <= seg.second) s += w;
        return s;
    };
    Rational total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        total += value_at(pts[i]); // 0-cell
        if (i + 1 < pts.size()) {
            Rational mid = (pts[i] + pts[i + 1]) / 2;
            total -= value_at(mid); // open 1-cell
        }
    }
    return total;
}

// Independent fiberwise-Euler oracle for surjective affine maps R^2 -> R^1:
// critical values are vertex images; between and at them the fiber Euler
// characteristic is computed by exact 1-D arrangement on the fiber line.
inline ConstructibleFn pushforward_fiber_oracle(const ConstructibleFn& f, const AffineMap& m) {
    if (f.ambient_dim != 2 || m.source_dim() != 2 || m.target_dim() != 1)
        throw DimensionUnsupported("pushforward_fiber_oracle: expects R^2 -> R^1");
    if (!f.compactly_supported())
        throw NotCompactlySupported("pushforward_fiber_oracle: unbounded support");
    const Vec& row = m.matrix[0];
    if (is_zero(row)) throw NotFullDim("pushforward_fiber_oracle: map not surjective");
    // fiber direction and a solution x(y) with row.x + b = y
    Vec d = {row[1], -row[0]};
    Vec base(2, Rational(0));
    int piv = sgn(row[0]) != 0 ? 0 : 1;

    std::vector<Rational> crit;
    for (const auto& [w, k] : f.terms) {
        if (sgn(w) == 0 || k.is_empty()) continue;
        for (const auto& v : k.vertices()) crit.push_back(dot(row, v) + m.translation[0]);
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

    auto fiber_chi = [&](const Rational& y) {
        Vec p = base;
        p[piv] = (y - m.translation[0]) / row[piv];
        return euler_integral_line(restrict_to_line(f, p, d));
    };

    // assemble a 1-D constructible function: closed intervals between
    // consecutive critical values carry the open-interval value; point
    // corrections fix the values at the critical values themselves
    ConstructibleFn out = ConstructibleFn::zero(1);
    if (crit.empty()) return out;
    std::vector<Rational> interval_vals(crit.size() - 1);
    for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
        Rational mid = (crit[i] + crit[i + 1]) / 2;
        interval_vals[i] = fiber_chi(mid);
        if (sgn(interval_vals[i]) != 0)
            out.terms.emplace_back(interval_vals[i],
                                   Polytope::from_vertices(1, {{crit[i]}, {crit[i + 1]}}));
    }
    for (std::size_t i = 0; i < crit.size(); ++i) {
        Rational covered = 0;
        if (i > 0) covered += interval_vals[i - 1];
        if (i + 1 < crit.size()) covered += interval_vals[i];
        Rational corr = fiber_chi(crit[i]) - covered;
        if (sgn(corr) != 0)
            out.terms.emplace_back(corr, Polytope::from_vertices(1, {{crit[i]}}));
    }
    return out;
}

} // namespace eucalc
