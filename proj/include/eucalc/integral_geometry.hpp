#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "eucalc/errors.hpp"
#include "eucalc/polytope.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

// ---------------------------------------------------------------------------
// Normal fan and external angles.

struct NormalFanEntry {
    Face face;
    int face_dim = 0;
    std::vector<Vec> normal_cone_rays;     // extreme rays (modulo lineality)
    std::vector<Vec> normal_cone_lineality; // aff(P)^perp for lower-dim P
};

struct NormalFan {
    int ambient_dim = 0;
    std::vector<NormalFanEntry> entries;
};

// Normal cone of each nonempty face: the cone spanned by the outward
// normals of the facets containing it.
inline NormalFan normal_fan(const Polytope& p) {
    if (p.ambient_dim() > 3)
        throw DimensionUnsupported("normal_fan: ambient dimension must be <= 3");
    if (!p.is_bounded()) throw UnboundedTerm("normal_fan: polytope must be bounded");
    NormalFan fan;
    fan.ambient_dim = p.ambient_dim();
    for (const auto& f : face_lattice(p)) {
        std::vector<Vec> normals;
        for (int i : f.tight_facets) normals.push_back(p.halfspaces()[i].normal);
        NormalFanEntry e;
        e.face = f;
        e.face_dim = f.dim;
        if (!normals.empty()) {
            ConeGenerators g = minimal_generators(normals, {}, p.ambient_dim());
            e.normal_cone_rays = std::move(g.rays);
            e.normal_cone_lineality = std::move(g.lineality);
        }
        fan.entries.push_back(std::move(e));
    }
    return fan;
}

namespace detail {

inline std::vector<double> to_doubles(const Vec& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
    return r;
}

inline double norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dotd(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::vector<double> crossd(const std::vector<double>& a,
                                  const std::vector<double>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// solid angle of the tetrahedral cone spanned by unit-independent a,b,c
// (Van Oosterom & Strackee)
inline double tetra_solid_angle(std::vector<double> a, std::vector<double> b,
                                std::vector<double> c) {
    double la = norm(a), lb = norm(b), lc = norm(c);
    double triple = dotd(a, crossd(b, c));
    double den = la * lb * lc + dotd(a, b) * lc + dotd(a, c) * lb + dotd(b, c) * la;
    double omega = 2.0 * std::atan2(std::abs(triple), den);
    if (omega < 0) omega += 4.0 * std::numbers::pi;
    return omega;
}

// project rays onto the orthogonal complement of the lineality space
inline std::vector<Vec> project_off_lineality(const std::vector<Vec>& rays,
                                              const std::vector<Vec>& lin) {
    if (lin.empty()) return rays;
    std::vector<Vec> out;
    for (Vec r : rays) {
        for (const auto& l : lin) {
            Rational f = dot(r, l) / dot(l, l);
            r = sub(r, scale(f, l));
        }
        if (!is_zero(r)) out.push_back(primitive(r));
    }
    return out;
}

} // namespace detail

// Normalized spherical measure of the normal cone: the fraction of the
// unit sphere of the cone's linear span covered by the cone. Linear
// subspaces count in full, so the value is 1 for the top face and the
// classical external angle elsewhere, in any isometric embedding.
inline double external_angle(const NormalFanEntry& entry) {
    const auto rays0 = entry.normal_cone_rays;
    const auto& lin = entry.normal_cone_lineality;
    std::vector<Vec> rays = detail::project_off_lineality(rays0, lin);
    const std::size_t c = rays.size();
    if (c == 0) return 1.0;  // the cone is a linear subspace (or {0})
    if (c == 1) return 0.5;  // a ray: one of the two points of S^0
    if (c == 2) {
        // planar wedge: angle between the extreme rays, over 2*pi
        auto a = detail::to_doubles(rays[0]);
        auto b = detail::to_doubles(rays[1]);
        double cosang = detail::dotd(a, b) / (detail::norm(a) * detail::norm(b));
        cosang = std::clamp(cosang, -1.0, 1.0);
        return std::acos(cosang) / (2.0 * std::numbers::pi);
    }
    // pointed 3-dimensional cone: order the extreme rays around the axis
    // and sum spherical-triangle solid angles of a fan triangulation
    std::vector<std::vector<double>> rd;
    for (const auto& r : rays) rd.push_back(detail::to_doubles(r));
    std::vector<double> axis(3, 0.0);
    for (const auto& r : rd)
        for (int i = 0; i < 3; ++i) axis[i] += r[i] / detail::norm(r);
    // in-plane angular order around the axis
    std::vector<double> u = rd[0];
    double f = detail::dotd(u, axis) / detail::dotd(axis, axis);
    for (int i = 0; i < 3; ++i) u[i] -= f * axis[i];
    std::vector<double> v = detail::crossd(axis, u);
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < rd.size(); ++i)
        order.emplace_back(std::atan2(detail::dotd(rd[i], v), detail::dotd(rd[i], u)), i);
    std::sort(order.begin(), order.end());
    double omega = 0.0;
    for (std::size_t i = 1; i + 1 < order.size(); ++i)
        omega += detail::tetra_solid_angle(rd[order[0].second], rd[order[i].second],
                                           rd[order[i + 1].second]);
    return omega / (4.0 * std::numbers::pi);
}

// Monte Carlo estimate of the same fraction (sphere sampling); test oracle.
inline double external_angle_mc(const NormalFanEntry& entry, int ambient,
                                std::size_t samples, std::uint64_t seed) {
    std::vector<Vec> all = entry.normal_cone_rays;
    for (const auto& l : entry.normal_cone_lineality) {
        all.push_back(l);
        all.push_back(scale(Rational(-1), l));
    }
    if (all.empty()) return 1.0;
    ConeInequalities ineq = cone_inequalities(all, {}, ambient);
    Mat span(all.begin(), all.end());
    int k = rank(std::move(span));
    if (k == 0) return 1.0;
    // sample uniformly on the unit sphere of the span
    std::vector<Vec> basis;
    if (k == ambient) {
        for (int i = 0; i < ambient; ++i) {
            Vec e(ambient, Rational(0));
            e[i] = 1;
            basis.push_back(e);
        }
    } else {
        // orthogonalize the generators spanning the cone (exact Gram-Schmidt)
        for (const auto& g : all) {
            Vec r = g;
            for (const auto& b : basis) {
                Rational f = dot(r, b) / dot(b, b);
                r = sub(r, scale(f, b));
            }
            if (!is_zero(r)) basis.push_back(primitive(r));
            if (static_cast<int>(basis.size()) == k) break;
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> ineqd;
    for (const auto& nrm : ineq.inequalities) ineqd.push_back(detail::to_doubles(nrm));
    std::vector<std::vector<double>> basisd;
    for (const auto& b : basis) basisd.push_back(detail::to_doubles(b));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> x(ambient, 0.0);
        for (const auto& b : basisd) {
            double g = gauss(rng);
            for (int i = 0; i < ambient; ++i) x[i] += g * b[i];
        }
        bool in = true;
        for (const auto& nrm : ineqd)
            if (detail::dotd(nrm, x) < 0) { in = false; break; }
        if (in) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

// ---------------------------------------------------------------------------
// Intrinsic volumes.

struct IntrinsicVolumeVector {
    std::vector<double> values; // V_0 .. V_n
};

namespace detail {

// cyclic order of the vertices of a convex polygon face (double precision
// ordering only; the coordinates stay exact)
inline std::vector<Vec> order_polygon(const std::vector<Vec>& verts) {
    const std::size_t n = verts[0].size();
    Vec centroid(n, Rational(0));
    for (const auto& v : verts) centroid = add(centroid, v);
    Rational inv(1, static_cast<unsigned long>(verts.size()));
    inv.canonicalize();
    centroid = scale(inv, centroid);
    // plane basis from the first two independent edge vectors
    std::vector<double> u, w;
    std::vector<double> e1 = to_doubles(sub(verts[1], verts[0]));
    u = e1;
    for (std::size_t i = 2; i < verts.size() && w.empty(); ++i) {
        std::vector<double> e2 = to_doubles(sub(verts[i], verts[0]));
        // orthogonalize e2 against u
        double f = dotd(e2, u) / dotd(u, u);
        for (std::size_t j = 0; j < e2.size(); ++j) e2[j] -= f * u[j];
        if (norm(e2) > 1e-12) w = e2;
    }
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        std::vector<double> d = to_doubles(sub(verts[i], centroid));
        order.emplace_back(std::atan2(dotd(d, w), dotd(d, u)), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<Vec> out;
    for (const auto& [ang, i] : order) out.push_back(verts[i]);
    return out;
}

inline double face_volume(const Polytope& p, const Face& f) {
    std::vector<Vec> verts;
    for (int i : f.vertex_indices) verts.push_back(p.vertices()[i]);
    switch (f.dim) {
        case 0:
            return 1.0;
        case 1: {
            Vec d = sub(verts[1], verts[0]);
            return std::sqrt(to_double(dot(d, d)));
        }
        case 2: {
            std::vector<Vec> ring = order_polygon(verts);
            if (p.ambient_dim() == 2) {
                Rational area2 = 0;  // shoelace, twice the signed area
                for (std::size_t i = 0; i < ring.size(); ++i) {
                    const Vec& a = ring[i];
                    const Vec& b = ring[(i + 1) % ring.size()];
                    area2 += a[0] * b[1] - a[1] * b[0];
                }
                return std::abs(to_double(area2)) / 2.0;
            }
            // planar polygon in R^3: half the norm of the exact vector area
            Vec area(3, Rational(0));
            for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
                Vec a = sub(ring[i], ring[0]);
                Vec b = sub(ring[i + 1], ring[0]);
                area[0] += a[1] * b[2] - a[2] * b[1];
                area[1] += a[2] * b[0] - a[0] * b[2];
                area[2] += a[0] * b[1] - a[1] * b[0];
            }
            return std::sqrt(to_double(dot(area, area))) / 2.0;
        }
        case 3: {
            // exact rational volume: cone over the facets from a vertex
            Rational vol6 = 0;
            const Vec& apex = verts[0];
            for (const auto& g : face_lattice(p)) {
                if (g.dim != 2) continue;
                std::vector<Vec> fv;
                for (int i : g.vertex_indices) fv.push_back(p.vertices()[i]);
                std::vector<Vec> ring = order_polygon(fv);
                for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
                    Vec a = sub(ring[0], apex);
                    Vec b = sub(ring[i], apex);
                    Vec c = sub(ring[i + 1], apex);
                    Rational det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                                   a[1] * (b[0] * c[2] - b[2] * c[0]) +
                                   a[2] * (b[0] * c[1] - b[1] * c[0]);
                    vol6 += abs(det);
                }
            }
            return to_double(vol6) / 6.0;
        }
        default:
            throw DimensionUnsupported("face_volume: face dimension > 3");
    }
}

} // namespace detail

// V_j(P) = sum over j-faces of vol_j(F) * external_angle(F).
inline IntrinsicVolumeVector intrinsic_volumes(const Polytope& p) {
    if (p.ambient_dim() > 3)
        throw DimensionUnsupported("intrinsic_volumes: ambient dimension must be <= 3");
    if (!p.is_bounded()) throw UnboundedTerm("intrinsic_volumes: polytope must be bounded");
    IntrinsicVolumeVector v;
    v.values.assign(p.ambient_dim() + 1, 0.0);
    if (p.is_empty()) return v;
    NormalFan fan = normal_fan(p);
    for (const auto& e : fan.entries)
        v.values[e.face_dim] += detail::face_volume(p, e.face) * external_angle(e);
    return v;
}

// ---------------------------------------------------------------------------
// Monte Carlo verification reports.

struct McReport {
    double estimate = 0.0;
    double stderr_ = 0.0;
    double reference = 0.0;
    bool pass = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double window_measure = 0.0; // sampled measure, documented for audit
};

inline constexpr double kVolumeBall1 = 2.0;
inline const double kVolumeBall2 = std::numbers::pi;
inline const double kVolumeBall3 = 4.0 * std::numbers::pi / 3.0;

namespace detail {

// Euclidean distance from a point to a bounded polytope (dim <= 3),
// via vertex / clamped-edge / in-face projections.
inline double distance_to_polytope(const std::vector<double>& x, const Polytope& p,
                                   const std::vector<std::vector<double>>& verts,
                                   const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<std::pair<std::vector<double>, double>>& hsd) {
    bool inside = true;
    for (const auto& [nrm, off] : hsd)
        if (dotd(nrm, x) > off + 1e-15) { inside = false; break; }
    if (inside) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) {
        double d2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - v[i]) * (x[i] - v[i]);
        best = std::min(best, std::sqrt(d2));
    }
    for (const auto& [a, b] : edges) {
        const auto& va = verts[a];
        const auto& vb = verts[b];
        std::vector<double> d(x.size()), e(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            d[i] = x[i] - va[i];
            e[i] = vb[i] - va[i];
        }
        double t = dotd(d, e) / dotd(e, e);
        if (t <= 0 || t >= 1) continue;
        double dist2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double q = x[i] - (va[i] + t * e[i]);
            dist2 += q * q;
        }
        best = std::min(best, std::sqrt(dist2));
    }
    // facet-plane projections that land inside the polytope
    for (const auto& [nrm, off] : hsd) {
        double nn = dotd(nrm, nrm);
        if (nn == 0) continue;
        double t = (dotd(nrm, x) - off) / nn;
        if (t <= 0) continue;
        std::vector<double> proj(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) proj[i] = x[i] - t * nrm[i];
        bool in = true;
        for (const auto& [n2, o2] : hsd)
            if (dotd(n2, proj) > o2 + 1e-9) { in = false; break; }
        if (in) best = std::min(best, t * std::sqrt(nn));
    }
    return best;
}

} // namespace detail

// Sample the tube volume vol(P_eps) in a covering box and compare with the
// Steiner polynomial sum_i eps^{n-i} kappa_{n-i} V_i(P).
inline std::vector<McReport> steiner_check(const Polytope& p,
                                           const std::vector<double>& epsilons,
                                           std::size_t mc_samples, std::uint64_t seed) {
    const int n = p.ambient_dim();
    if (n > 3) throw DimensionUnsupported("steiner_check: ambient dimension must be <= 3");
    if (!p.is_bounded() || p.is_empty())
        throw UnboundedTerm("steiner_check: polytope must be bounded and nonempty");
    IntrinsicVolumeVector iv = intrinsic_volumes(p);
    const double kappa[4] = {1.0, kVolumeBall1, kVolumeBall2, kVolumeBall3};

    std::vector<std::vector<double>> verts;
    for (const auto& v : p.vertices()) verts.push_back(detail::to_doubles(v));
    std::vector<std::pair<int, int>> edges;
    for (const auto& f : face_lattice(p))
        if (f.dim == 1) edges.emplace_back(f.vertex_indices[0], f.vertex_indices[1]);
    std::vector<std::pair<std::vector<double>, double>> hsd;
    for (const auto& h : p.halfspaces())
        hsd.emplace_back(detail::to_doubles(h.normal), to_double(h.offset));

    std::vector<McReport> reports;
    for (double eps : epsilons) {
        McReport rep;
        rep.samples = mc_samples;
        rep.seed = seed;
        double steiner = 0.0;
        for (int i = 0; i <= n; ++i)
            steiner += std::pow(eps, n - i) * kappa[n - i] * iv.values[i];
        rep.reference = steiner;
        if (eps == 0.0) {
            rep.estimate = iv.values[n];
            rep.stderr_ = 0.0;
            rep.pass = true;
            reports.push_back(rep);
            continue;
        }
        std::vector<double> lo(n, std::numeric_limits<double>::infinity());
        std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
        for (const auto& v : verts)
            for (int i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], v[i] - eps);
                hi[i] = std::max(hi[i], v[i] + eps);
            }
        double box = 1.0;
        for (int i = 0; i < n; ++i) box *= hi[i] - lo[i];
        rep.window_measure = box;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::size_t hits = 0;
        for (std::size_t s = 0; s < mc_samples; ++s) {
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unif(rng);
            if (detail::distance_to_polytope(x, p, verts, edges, hsd) <= eps) ++hits;
        }
        double frac = static_cast<double>(hits) / mc_samples;
        rep.estimate = frac * box;
        rep.stderr_ = box * std::sqrt(frac * (1.0 - frac) / mc_samples);
        rep.pass = std::abs(rep.estimate - rep.reference) < 4.0 * rep.stderr_;
        reports.push_back(rep);
    }
    return reports;
}

namespace detail {

// perimeter with the boundary-counted convention: 2 * V_1, which is the
// edge-length sum for full-dimensional K and twice the length of a segment
inline double perimeter_2v1(const Polytope& k) {
    IntrinsicVolumeVector iv = intrinsic_volumes(k);
    return 2.0 * iv.values[1];
}

} // namespace detail

// Measure of affine lines meeting a planar convex body, sampled in the
// (theta, p) line parametrization, against the perimeter.
inline McReport cauchy_crofton_check(const Polytope& k, std::size_t mc_samples,
                                     std::uint64_t seed) {
    if (k.ambient_dim() != 2) throw DimensionUnsupported("cauchy_crofton_check: expects R^2");
    if (k.is_empty() || !k.is_bounded()) throw NotConvex("cauchy_crofton_check: need a bounded body");
    McReport rep;
    rep.samples = mc_samples;
    rep.seed = seed;
    rep.reference = detail::perimeter_2v1(k);

    std::vector<std::vector<double>> verts;
    for (const auto& v : k.vertices()) verts.push_back(detail::to_doubles(v));
    double cx = 0, cy = 0;
    for (const auto& v : verts) { cx += v[0]; cy += v[1]; }
    cx /= verts.size();
    cy /= verts.size();
    double radius = 0;
    for (const auto& v : verts)
        radius = std::max(radius, std::hypot(v[0] - cx, v[1] - cy));
    // the window [0,pi) x [-R, R] around the centroid covers every
    // incident line, so truncation bias is exactly zero
    rep.window_measure = std::numbers::pi * 2.0 * radius;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < mc_samples; ++s) {
        double theta = std::numbers::pi * unif(rng);
        double pofs = radius * (2.0 * unif(rng) - 1.0);
        double nx = std::cos(theta), ny = std::sin(theta);
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        for (const auto& v : verts) {
            double t = nx * (v[0] - cx) + ny * (v[1] - cy);
            mn = std::min(mn, t);
            mx = std::max(mx, t);
        }
        if (mn <= pofs && pofs <= mx) ++hits;
    }
    double frac = static_cast<double>(hits) / mc_samples;
    rep.estimate = frac * rep.window_measure;
    rep.stderr_ = rep.window_measure * std::sqrt(frac * (1.0 - frac) / mc_samples);
    rep.pass = std::abs(rep.estimate - rep.reference) < 4.0 * rep.stderr_;
    return rep;
}

// Planar principal kinematic formula: integral over rigid motions g of
// chi(K cap gL), against 2*pi*(area K + area L) + perimeter K * perimeter L.
// The closed form is pinned by the concentric-disk computation: for disks
// of radii r and s the motion measure of overlap is 2*pi * pi*(r+s)^2,
// which the right side reproduces exactly.
inline McReport kinematic_check_R2(const Polytope& k, const Polytope& l,
                                   std::size_t mc_samples, std::uint64_t seed) {
    if (k.ambient_dim() != 2 || l.ambient_dim() != 2)
        throw DimensionUnsupported("kinematic_check_R2: expects R^2");
    if (k.is_empty() || l.is_empty() || !k.is_bounded() || !l.is_bounded())
        throw NotConvex("kinematic_check_R2: need bounded nonempty bodies");
    McReport rep;
    rep.samples = mc_samples;
    rep.seed = seed;

    IntrinsicVolumeVector ivk = intrinsic_volumes(k);
    IntrinsicVolumeVector ivl = intrinsic_volumes(l);
    rep.reference = 2.0 * std::numbers::pi * (ivk.values[2] + ivl.values[2]) +
                    (2.0 * ivk.values[1]) * (2.0 * ivl.values[1]);

    std::vector<std::vector<double>> vk, vl;
    for (const auto& v : k.vertices()) vk.push_back(detail::to_doubles(v));
    for (const auto& v : l.vertices()) vl.push_back(detail::to_doubles(v));
    auto centroid = [](const std::vector<std::vector<double>>& vs) {
        std::vector<double> c{0, 0};
        for (const auto& v : vs) { c[0] += v[0]; c[1] += v[1]; }
        c[0] /= vs.size();
        c[1] /= vs.size();
        return c;
    };
    auto circumradius = [](const std::vector<std::vector<double>>& vs,
                           const std::vector<double>& c) {
        double r = 0;
        for (const auto& v : vs) r = std::max(r, std::hypot(v[0] - c[0], v[1] - c[1]));
        return r;
    };
    std::vector<double> ck = centroid(vk), cl = centroid(vl);
    double rk = circumradius(vk, ck), rl = circumradius(vl, cl);
    // translations sampled about L's centroid landing on K's centroid,
    // in a square window of half-width rk + rl: covers every contact
    double half = rk + rl;
    rep.window_measure = 2.0 * std::numbers::pi * (2.0 * half) * (2.0 * half);

    // convex polygon overlap via the separating axis test
    auto edge_normals = [](const std::vector<std::vector<double>>& hull) {
        std::vector<std::vector<double>> ns;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const auto& a = hull[i];
            const auto& b = hull[(i + 1) % hull.size()];
            ns.push_back({-(b[1] - a[1]), b[0] - a[0]});
        }
        return ns;
    };
    auto hull_order = [](std::vector<std::vector<double>> pts) {
        std::vector<double> c{0, 0};
        for (const auto& p : pts) { c[0] += p[0]; c[1] += p[1]; }
        c[0] /= pts.size();
        c[1] /= pts.size();
        std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
            return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
        });
        return pts;
    };
    std::vector<std::vector<double>> hk = hull_order(vk);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < mc_samples; ++s) {
        double theta = 2.0 * std::numbers::pi * unif(rng);
        double tx = ck[0] - cl[0] + half * (2.0 * unif(rng) - 1.0);
        double ty = ck[1] - cl[1] + half * (2.0 * unif(rng) - 1.0);
        double cs = std::cos(theta), sn = std::sin(theta);
        std::vector<std::vector<double>> moved;
        for (const auto& v : vl) {
            double x = v[0] - cl[0], y = v[1] - cl[1];
            moved.push_back({cl[0] + cs * x - sn * y + tx, cl[1] + sn * x + cs * y + ty});
        }
        std::vector<std::vector<double>> hm = hull_order(moved);
        // SAT over both polygons' edge normals
        bool overlap = true;
        for (const auto& axes : {edge_normals(hk), edge_normals(hm)}) {
            for (const auto& ax : axes) {
                double k_lo = std::numeric_limits<double>::infinity(), k_hi = -k_lo;
                double m_lo = k_lo, m_hi = -k_lo;
                for (const auto& v : hk) {
                    double t = ax[0] * v[0] + ax[1] * v[1];
                    k_lo = std::min(k_lo, t);
                    k_hi = std::max(k_hi, t);
                }
                for (const auto& v : hm) {
                    double t = ax[0] * v[0] + ax[1] * v[1];
                    m_lo = std::min(m_lo, t);
                    m_hi = std::max(m_hi, t);
                }
                if (k_hi < m_lo || m_hi < k_lo) { overlap = false; break; }
            }
            if (!overlap) break;
        }
        if (overlap) ++hits;
    }
    double frac = static_cast<double>(hits) / mc_samples;
    rep.estimate = frac * rep.window_measure;
    rep.stderr_ = rep.window_measure * std::sqrt(frac * (1.0 - frac) / mc_samples);
    rep.pass = std::abs(rep.estimate - rep.reference) < 4.0 * rep.stderr_;
    return rep;
}

} // namespace eucalc
