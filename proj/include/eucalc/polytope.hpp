#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "eucalc/cone.hpp"
#include "eucalc/errors.hpp"
#include "eucalc/linalg.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

inline constexpr int kMaxAmbientDim = 4;

// normal . x <= offset; stored with primitive integer (normal, offset).
struct Halfspace {
    Vec normal;
    Rational offset;

    friend bool operator==(const Halfspace& a, const Halfspace& b) {
        return a.offset == b.offset && a.normal == b.normal;
    }
};

inline Halfspace canonical_halfspace(Vec normal, Rational offset) {
    Vec joint = normal;
    joint.push_back(offset);
    joint = primitive(joint);
    Halfspace h;
    h.offset = joint.back();
    joint.pop_back();
    h.normal = std::move(joint);
    return h;
}

inline bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    if (lex_less(a.normal, b.normal)) return true;
    if (lex_less(b.normal, a.normal)) return false;
    return a.offset < b.offset;
}

// x -> matrix * x + translation
struct AffineMap {
    Mat matrix;
    Vec translation;

    int source_dim() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }
    int target_dim() const { return static_cast<int>(matrix.size()); }

    Vec operator()(const Vec& x) const {
        Vec y = apply(matrix, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += translation[i];
        return y;
    }

    static AffineMap identity(int n) {
        AffineMap f;
        f.matrix.assign(n, Vec(n, Rational(0)));
        for (int i = 0; i < n; ++i) f.matrix[i][i] = 1;
        f.translation.assign(n, Rational(0));
        return f;
    }
};

inline AffineMap compose(const AffineMap& g, const AffineMap& f) {
    // (g o f)(x) = g.A * f.A * x + (g.A * f.b + g.b)
    AffineMap h;
    h.matrix.assign(g.target_dim(), Vec(f.source_dim(), Rational(0)));
    for (int i = 0; i < g.target_dim(); ++i)
        for (int j = 0; j < f.source_dim(); ++j)
            for (int k = 0; k < f.target_dim(); ++k)
                h.matrix[i][j] += g.matrix[i][k] * f.matrix[k][j];
    h.translation = g(f.translation);
    return h;
}

enum class PointLocation { Interior, Boundary, Outside };

// A (possibly unbounded, possibly lower-dimensional, possibly empty)
// convex rational polyhedron, always held in both minimal canonical
// V-form (vertices + rays + lineality lines) and H-form. Construction
// runs double description both ways, so instances are plain immutable
// values afterwards.
class Polytope {
public:
    Polytope() = default;

    static Polytope from_vertices(int ambient, std::vector<Vec> vertices,
                                  std::vector<Vec> rays = {}, std::vector<Vec> lines = {}) {
        check_dim(ambient);
        Polytope p;
        p.ambient_ = ambient;
        if (vertices.empty()) return p; // empty polytope (rays without a vertex are not a set)
        p.build_from_generators(std::move(vertices), std::move(rays), std::move(lines));
        return p;
    }

    static Polytope from_halfspaces(int ambient, std::vector<Halfspace> hs) {
        check_dim(ambient);
        // homogenize: n.x <= c  ->  (c, -n).(x0,x) >= 0, plus x0 >= 0
        std::vector<Vec> normals;
        for (auto& h : hs) {
            Vec v(ambient + 1);
            v[0] = h.offset;
            for (int i = 0; i < ambient; ++i) v[i + 1] = -h.normal[i];
            if (is_zero(v)) continue;
            normals.push_back(std::move(v));
        }
        std::sort(normals.begin(), normals.end(), lex_less);
        normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
        {
            Vec e0(ambient + 1, Rational(0));
            e0[0] = 1;
            normals.push_back(std::move(e0));
        }
        // a trivially false row 0.x <= c, c < 0 homogenizes to (c,0,..) which
        // dual_description would misread; detect it up front
        for (const auto& h : hs)
            if (is_zero(h.normal) && sgn(h.offset) < 0) {
                Polytope p;
                p.ambient_ = ambient;
                return p;
            }
        ConeGenerators g = dual_description(normals, ambient + 1);
        std::vector<Vec> vertices, rays, lines;
        for (const auto& r : g.rays) {
            int s = sgn(r[0]);
            Vec tail(r.begin() + 1, r.end());
            if (s > 0) {
                for (auto& x : tail) x /= r[0];
                vertices.push_back(std::move(tail));
            } else if (!is_zero(tail)) {
                rays.push_back(std::move(tail));
            }
        }
        for (const auto& l : g.lineality) {
            // x0 >= 0 forces l[0] == 0 here
            Vec tail(l.begin() + 1, l.end());
            if (!is_zero(tail)) lines.push_back(std::move(tail));
        }
        Polytope p;
        p.ambient_ = ambient;
        if (vertices.empty()) return p; // infeasible system
        p.build_from_generators(std::move(vertices), std::move(rays), std::move(lines));
        return p;
    }

    static Polytope whole_space(int n) {
        return from_halfspaces(n, {});
    }

    int ambient_dim() const { return ambient_; }
    bool is_empty() const { return vertices_.empty(); }
    bool is_bounded() const { return rays_.empty() && lines_.empty(); }

    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Vec>& lines() const { return lines_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

    // dimension of the affine hull; -1 for the empty polytope
    int dim() const { return dim_; }

    PointLocation locate(const Vec& x) const {
        if (static_cast<int>(x.size()) != ambient_)
            throw AmbientMismatch("point/polytope dimension mismatch");
        if (is_empty()) return PointLocation::Outside;
        bool tight = false;
        for (const auto& h : halfspaces_) {
            int s = sgn(dot(h.normal, x) - h.offset);
            if (s > 0) return PointLocation::Outside;
            if (s == 0) tight = true;
        }
        return tight ? PointLocation::Boundary : PointLocation::Interior;
    }

    bool contains(const Vec& x) const { return locate(x) != PointLocation::Outside; }

    // a point in the relative interior (affine hull interior)
    Vec relative_interior_point() const {
        Vec w(ambient_, Rational(0));
        for (const auto& v : vertices_) w = add(w, v);
        Rational inv(1, static_cast<unsigned long>(vertices_.size()));
        inv.canonicalize();
        w = scale(inv, w);
        for (const auto& r : rays_) w = add(w, r);
        return w;
    }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.ambient_ == b.ambient_ && a.vertices_ == b.vertices_ &&
               a.rays_ == b.rays_ && a.lines_ == b.lines_;
    }

private:
    static void check_dim(int ambient) {
        if (ambient < 1 || ambient > kMaxAmbientDim)
            throw DimensionUnsupported("ambient dimension must be 1..4");
    }

    void build_from_generators(std::vector<Vec> vertices, std::vector<Vec> rays,
                               std::vector<Vec> lines) {
        const int n = ambient_;
        // homogenize generators and reduce to minimal form
        std::vector<Vec> gens;
        for (auto& v : vertices) {
            Vec g(n + 1);
            g[0] = 1;
            for (int i = 0; i < n; ++i) g[i + 1] = v[i];
            gens.push_back(std::move(g));
        }
        for (auto& r : rays) {
            if (is_zero(r)) continue;
            Vec g(n + 1, Rational(0));
            for (int i = 0; i < n; ++i) g[i + 1] = r[i];
            gens.push_back(std::move(g));
        }
        std::vector<Vec> homo_lines;
        for (auto& l : lines) {
            if (is_zero(l)) continue;
            Vec g(n + 1, Rational(0));
            for (int i = 0; i < n; ++i) g[i + 1] = l[i];
            homo_lines.push_back(std::move(g));
        }
        ConeInequalities ineq = cone_inequalities(gens, homo_lines, n + 1);

        halfspaces_.clear();
        for (const auto& y : ineq.inequalities) {
            // y.(1,x) >= 0  ->  (-y_tail).x <= y0
            Vec tail(y.begin() + 1, y.end());
            if (is_zero(tail)) continue; // x0 >= 0, an artifact of homogenization
            for (auto& t : tail) t = -t;
            halfspaces_.push_back(canonical_halfspace(std::move(tail), y[0]));
        }
        for (const auto& y : ineq.equalities) {
            Vec tail(y.begin() + 1, y.end());
            if (is_zero(tail)) continue;
            Vec neg = tail;
            for (auto& t : neg) t = -t;
            halfspaces_.push_back(canonical_halfspace(neg, y[0]));
            halfspaces_.push_back(canonical_halfspace(tail, -y[0]));
        }
        std::sort(halfspaces_.begin(), halfspaces_.end(), halfspace_less);
        halfspaces_.erase(std::unique(halfspaces_.begin(), halfspaces_.end()),
                          halfspaces_.end());

        // minimal V-form via the dual direction
        std::vector<Vec> normals;
        std::vector<Vec> all = ineq.inequalities;
        for (const auto& e : ineq.equalities) {
            all.push_back(e);
            all.push_back(scale(Rational(-1), e));
        }
        {
            Vec e0(n + 1, Rational(0));
            e0[0] = 1;
            all.push_back(std::move(e0));
        }
        ConeGenerators g = dual_description(all, n + 1);
        vertices_.clear();
        rays_.clear();
        lines_.clear();
        for (const auto& r : g.rays) {
            Vec tail(r.begin() + 1, r.end());
            if (sgn(r[0]) > 0) {
                for (auto& x : tail) x /= r[0];
                vertices_.push_back(std::move(tail));
            } else if (!is_zero(tail)) {
                rays_.push_back(primitive(std::move(tail)));
            }
        }
        for (const auto& l : g.lineality) {
            Vec tail(l.begin() + 1, l.end());
            if (!is_zero(tail)) lines_.push_back(primitive_signed(std::move(tail)));
        }
        std::sort(vertices_.begin(), vertices_.end(), lex_less);
        std::sort(rays_.begin(), rays_.end(), lex_less);
        std::sort(lines_.begin(), lines_.end(), lex_less);

        Mat span;
        for (std::size_t i = 1; i < vertices_.size(); ++i)
            span.push_back(sub(vertices_[i], vertices_[0]));
        for (const auto& r : rays_) span.push_back(r);
        for (const auto& l : lines_) span.push_back(l);
        dim_ = vertices_.empty() ? -1 : rank(std::move(span));
    }

    int ambient_ = 0;
    int dim_ = -1;
    std::vector<Vec> vertices_;
    std::vector<Vec> rays_;
    std::vector<Vec> lines_;
    std::vector<Halfspace> halfspaces_;
};

// H-form completion of a V-form polytope. Construction already computes
// both descriptions; these wrappers are the stable entry points.
inline Polytope v_to_h(const Polytope& p) { return p; }
inline Polytope h_to_v(const Polytope& p) { return p; }

inline Polytope intersect(const Polytope& p, const Polytope& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw AmbientMismatch("intersect: ambient dimensions differ");
    if (p.is_empty()) return p;
    if (q.is_empty()) return q;
    std::vector<Halfspace> hs = p.halfspaces();
    hs.insert(hs.end(), q.halfspaces().begin(), q.halfspaces().end());
    return Polytope::from_halfspaces(p.ambient_dim(), std::move(hs));
}

inline Polytope affine_image(const Polytope& p, const AffineMap& f) {
    if (f.source_dim() != p.ambient_dim())
        throw AmbientMismatch("affine_image: map/polytope dimension mismatch");
    if (p.is_empty()) {
        Polytope e = Polytope::from_vertices(f.target_dim(), {});
        return e;
    }
    std::vector<Vec> verts, rays, lines;
    for (const auto& v : p.vertices()) verts.push_back(f(v));
    for (const auto& r : p.rays()) rays.push_back(apply(f.matrix, r));
    for (const auto& l : p.lines()) lines.push_back(apply(f.matrix, l));
    return Polytope::from_vertices(f.target_dim(), std::move(verts), std::move(rays),
                                   std::move(lines));
}

// { x : f(x) in P }, computed directly on the H-form.
inline Polytope affine_preimage(const Polytope& p, const AffineMap& f) {
    if (f.target_dim() != p.ambient_dim())
        throw AmbientMismatch("affine_preimage: map/polytope dimension mismatch");
    const int m = f.source_dim();
    if (p.is_empty()) return Polytope::from_vertices(m, {});
    std::vector<Halfspace> hs;
    for (const auto& h : p.halfspaces()) {
        // n.(Ax + b) <= c  ->  (A^T n).x <= c - n.b
        Vec nn(m, Rational(0));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < f.target_dim(); ++i) nn[j] += h.normal[i] * f.matrix[i][j];
        Rational off = h.offset - dot(h.normal, f.translation);
        if (is_zero(nn)) {
            if (sgn(off) < 0) return Polytope::from_vertices(m, {});
            continue;
        }
        hs.push_back(canonical_halfspace(std::move(nn), std::move(off)));
    }
    return Polytope::from_halfspaces(m, std::move(hs));
}

inline bool is_empty(const Polytope& p) { return p.is_empty(); }
inline int dimension(const Polytope& p) { return p.dim(); }
inline PointLocation contains_point(const Polytope& p, const Vec& x) { return p.locate(x); }

// Number of facets tight at x, for a full-dimensional simple polytope.
inline int point_type(const Polytope& p, const Vec& x) {
    if (p.dim() != p.ambient_dim())
        throw NotFullDim("point_type: polytope is not full-dimensional");
    for (const auto& v : p.vertices()) {
        int tight = 0;
        for (const auto& h : p.halfspaces())
            if (dot(h.normal, v) == h.offset) ++tight;
        if (tight > p.ambient_dim())
            throw NotSimple("point_type: polytope is not simple");
    }
    if (!p.contains(x)) throw PointOutside("point_type: point not in polytope");
    int r = 0;
    for (const auto& h : p.halfspaces())
        if (dot(h.normal, x) == h.offset) ++r;
    return r;
}

// Face of a bounded polytope, identified by its vertex set and the set
// of facets containing it.
struct Face {
    int dim = 0;
    std::vector<int> vertex_indices;
    std::vector<int> tight_facets;
};

// All nonempty faces of a bounded polytope, P itself included, ordered
// by dimension then vertex set.
inline std::vector<Face> face_lattice(const Polytope& p) {
    if (!p.is_bounded()) throw UnboundedTerm("face_lattice: polytope must be bounded");
    if (p.is_empty()) return {};
    const auto& vs = p.vertices();
    const auto& hs = p.halfspaces();
    // incidence
    std::vector<std::vector<bool>> tight(hs.size(), std::vector<bool>(vs.size(), false));
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            tight[i][j] = dot(hs[i].normal, vs[j]) == hs[i].offset;

    // close vertex sets under intersection, starting from P and the facets
    std::vector<std::vector<bool>> sets;
    std::vector<bool> all(vs.size(), true);
    sets.push_back(all);
    for (std::size_t i = 0; i < hs.size(); ++i) sets.push_back(tight[i]);
    auto key = [](const std::vector<bool>& s) { return s; };
    for (std::size_t a = 0; a < sets.size(); ++a) {
        for (std::size_t b = 0; b < sets.size(); ++b) {
            std::vector<bool> inter(vs.size());
            bool nonempty = false;
            for (std::size_t j = 0; j < vs.size(); ++j) {
                inter[j] = sets[a][j] && sets[b][j];
                nonempty |= inter[j];
            }
            if (!nonempty) continue;
            if (std::find(sets.begin(), sets.end(), key(inter)) == sets.end())
                sets.push_back(inter);
        }
    }

    std::vector<Face> faces;
    for (const auto& s : sets) {
        Face f;
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (s[j]) f.vertex_indices.push_back(static_cast<int>(j));
        for (std::size_t i = 0; i < hs.size(); ++i) {
            bool contains_face = true;
            for (int j : f.vertex_indices)
                if (!tight[i][j]) { contains_face = false; break; }
            if (contains_face) f.tight_facets.push_back(static_cast<int>(i));
        }
        Mat span;
        for (std::size_t k = 1; k < f.vertex_indices.size(); ++k)
            span.push_back(sub(vs[f.vertex_indices[k]], vs[f.vertex_indices[0]]));
        f.dim = rank(std::move(span));
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertex_indices < b.vertex_indices;
    });
    faces.erase(std::unique(faces.begin(), faces.end(),
                            [](const Face& a, const Face& b) {
                                return a.vertex_indices == b.vertex_indices;
                            }),
                faces.end());
    return faces;
}

} // namespace eucalc
