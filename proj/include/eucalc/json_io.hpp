#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eucalc/constructible.hpp"
#include "eucalc/integral_geometry.hpp"
#include "eucalc/polytope.hpp"
#include "eucalc/projective.hpp"
#include "eucalc/radon.hpp"
#include "eucalc/rational.hpp"

namespace eucalc {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": expected integer or \"p/q\" string");
}

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Vec vec_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rational_to_json(x));
    return j;
}

inline Polytope polytope_from_json(const Json& j, const std::string& path = "polytope") {
    if (!j.contains("ambient_dim"))
        throw ParseError(path + ": missing ambient_dim");
    int n = j.at("ambient_dim").get<int>();
    std::vector<Vec> vertices, rays;
    std::vector<Halfspace> hs;
    if (j.contains("vertices"))
        for (std::size_t i = 0; i < j["vertices"].size(); ++i)
            vertices.push_back(vec_from_json(j["vertices"][i],
                                             path + ".vertices[" + std::to_string(i) + "]"));
    if (j.contains("rays"))
        for (std::size_t i = 0; i < j["rays"].size(); ++i)
            rays.push_back(vec_from_json(j["rays"][i],
                                         path + ".rays[" + std::to_string(i) + "]"));
    if (j.contains("halfspaces")) {
        for (std::size_t i = 0; i < j["halfspaces"].size(); ++i) {
            const Json& h = j["halfspaces"][i];
            std::string hp = path + ".halfspaces[" + std::to_string(i) + "]";
            hs.push_back(canonical_halfspace(vec_from_json(h.at("normal"), hp + ".normal"),
                                             rational_from_json(h.at("offset"), hp + ".offset")));
        }
    }
    if (!vertices.empty() || !rays.empty())
        return Polytope::from_vertices(n, std::move(vertices), std::move(rays));
    if (j.contains("halfspaces")) return Polytope::from_halfspaces(n, std::move(hs));
    throw ParseError(path + ": need vertices or halfspaces");
}

inline Json polytope_to_json(const Polytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    j["vertices"] = Json::array();
    for (const auto& v : p.vertices()) j["vertices"].push_back(vec_to_json(v));
    if (!p.rays().empty()) {
        j["rays"] = Json::array();
        for (const auto& r : p.rays()) j["rays"].push_back(vec_to_json(r));
    }
    if (!p.lines().empty()) {
        j["lines"] = Json::array();
        for (const auto& l : p.lines()) j["lines"].push_back(vec_to_json(l));
    }
    j["halfspaces"] = Json::array();
    for (const auto& h : p.halfspaces())
        j["halfspaces"].push_back(
            Json{{"normal", vec_to_json(h.normal)}, {"offset", rational_to_json(h.offset)}});
    return j;
}

inline ConstructibleFn constructible_from_json(const Json& j,
                                               const std::string& path = "fn") {
    ConstructibleFn f;
    f.ambient_dim = j.at("ambient_dim").get<int>();
    if (j.contains("terms")) {
        for (std::size_t i = 0; i < j["terms"].size(); ++i) {
            const Json& t = j["terms"][i];
            std::string tp = path + ".terms[" + std::to_string(i) + "]";
            Rational w = rational_from_json(t.at("weight"), tp + ".weight");
            Polytope k = polytope_from_json(t.at("support"), tp + ".support");
            if (k.ambient_dim() != f.ambient_dim)
                throw ParseError(tp + ": support ambient_dim mismatch");
            f.terms.emplace_back(std::move(w), std::move(k));
        }
    }
    return f;
}

inline Json constructible_to_json(const ConstructibleFn& f) {
    Json j;
    j["ambient_dim"] = f.ambient_dim;
    j["terms"] = Json::array();
    for (const auto& [w, k] : f.terms)
        j["terms"].push_back(
            Json{{"weight", rational_to_json(w)}, {"support", polytope_to_json(k)}});
    return j;
}

inline ProjBody projbody_from_json(const Json& j, const std::string& path = "body") {
    int n = j.at("n").get<int>();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < j.at("cone_generators").size(); ++i)
        gens.push_back(vec_from_json(j["cone_generators"][i],
                                     path + ".cone_generators[" + std::to_string(i) + "]"));
    Vec witness = vec_from_json(j.at("witness"), path + ".witness");
    return ProjBody(n, std::move(gens), std::move(witness));
}

inline Json projbody_to_json(const ProjBody& k) {
    Json j;
    j["n"] = k.n();
    j["cone_generators"] = Json::array();
    for (const auto& g : k.generators()) j["cone_generators"].push_back(vec_to_json(g));
    j["witness"] = vec_to_json(k.witness());
    return j;
}

inline ProjConstructibleFn proj_constructible_from_json(const Json& j,
                                                        const std::string& path = "fn") {
    ProjConstructibleFn f;
    f.n = j.at("n").get<int>();
    if (j.contains("constant"))
        f.constant = rational_from_json(j["constant"], path + ".constant");
    if (j.contains("terms")) {
        for (std::size_t i = 0; i < j["terms"].size(); ++i) {
            const Json& t = j["terms"][i];
            std::string tp = path + ".terms[" + std::to_string(i) + "]";
            f.terms.emplace_back(rational_from_json(t.at("weight"), tp + ".weight"),
                                 projbody_from_json(t.at("body"), tp + ".body"));
        }
    }
    return f;
}

inline Json proj_constructible_to_json(const ProjConstructibleFn& f) {
    Json j;
    j["n"] = f.n;
    if (sgn(f.constant) != 0) j["constant"] = rational_to_json(f.constant);
    j["terms"] = Json::array();
    for (const auto& [w, k] : f.terms)
        j["terms"].push_back(
            Json{{"weight", rational_to_json(w)}, {"body", projbody_to_json(k)}});
    return j;
}

inline Json cell_decomposition_to_json(const CellDecomposition& d) {
    Json j;
    j["ambient_dim"] = d.ambient_dim;
    j["hyperplanes"] = Json::array();
    for (const auto& h : d.hyperplanes)
        j["hyperplanes"].push_back(
            Json{{"normal", vec_to_json(h.normal)}, {"offset", rational_to_json(h.offset)}});
    j["cells"] = Json::array();
    for (const auto& c : d.cells)
        j["cells"].push_back(Json{{"signs", c.signs},
                                  {"dim", c.dim},
                                  {"witness", vec_to_json(c.witness)},
                                  {"value", rational_to_json(c.value)}});
    return j;
}

inline Json mc_report_to_json(const McReport& r) {
    return Json{{"estimate", r.estimate},     {"stderr", r.stderr_},
                {"reference", r.reference},   {"pass", r.pass},
                {"samples", r.samples},       {"seed", r.seed},
                {"window_measure", r.window_measure}};
}

} // namespace eucalc
