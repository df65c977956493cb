// eucalc: batch CLI over the exact Euler-calculus library.
// Exit codes: 0 success, 2 validation/parse error, 3 verification failure.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <eucalc/constructible.hpp>
#include <eucalc/integral_geometry.hpp>
#include <eucalc/json_io.hpp>
#include <eucalc/radon.hpp>

using namespace eucalc;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct ValidationError : Error {
    using Error::Error;
};

struct VerificationFailed : Error {
    using Error::Error;
};

Json load_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open " + file);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError(file + ": " + e.what());
    }
    return j;
}

void emit(const Json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream o(out);
        if (!o) throw ValidationError("cannot open " + out + " for writing");
        o << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream o(out);
        if (!o) throw ValidationError("cannot open " + out + " for writing");
        o << text;
    }
}

ConstructibleFn load_fn(const std::string& file) {
    return constructible_from_json(load_json(file), "fn");
}

ProjConstructibleFn load_proj_fn(const std::string& file) {
    return proj_constructible_from_json(load_json(file), "fn");
}

std::vector<ProjPoint> load_points(const std::string& file, int n) {
    Json j = load_json(file);
    if (!j.is_array()) throw ValidationError(file + ": expected an array of points");
    std::vector<ProjPoint> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Vec v = vec_from_json(j[i], "points[" + std::to_string(i) + "]");
        if (static_cast<int>(v.size()) != n + 1)
            throw ValidationError("points[" + std::to_string(i) + "]: expected length " +
                                  std::to_string(n + 1));
        pts.emplace_back(std::move(v));
    }
    return pts;
}

AffineMap map_from_json(const Json& j) {
    AffineMap m;
    if (!j.contains("matrix")) throw ValidationError("map: missing matrix");
    for (std::size_t i = 0; i < j["matrix"].size(); ++i)
        m.matrix.push_back(vec_from_json(j["matrix"][i], "map.matrix[" + std::to_string(i) + "]"));
    if (m.matrix.empty()) throw ValidationError("map: empty matrix");
    if (j.contains("translation"))
        m.translation = vec_from_json(j["translation"], "map.translation");
    else
        m.translation = Vec(m.matrix.size(), Rational(0));
    return m;
}

std::string csv_matrix(const std::vector<double>& angles,
                       const std::vector<double>& offsets,
                       const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "theta";
    for (double p : offsets) out << "," << p;
    out << "\n";
    for (std::size_t a = 0; a < rows.size(); ++a) {
        out << angles[a];
        for (double v : rows[a]) out << "," << v;
        out << "\n";
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Euler calculus on polytopal constructible functions"};
    app.require_subcommand(1);

    std::string fn_file, fn2_file, points_file, map_file, out_file, format = "json";
    std::uint64_t seed = 1;
    std::size_t samples = 1'000'000;
    int n = 2;
    int n_angles = 180, n_offsets = 256;
    double offset_range = 2.0;
    std::vector<double> epsilons = {0.1};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_file, "output file (default stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* c_euler = app.add_subcommand("euler-integral", "Euler integral of a function");
    c_euler->add_option("--fn", fn_file, "constructible function JSON")->required();
    c_euler->add_flag("--projective", "input is a projective function");
    add_common(c_euler);

    auto* c_mult = app.add_subcommand("multiply", "pointwise product of two functions");
    c_mult->add_option("--fn", fn_file)->required();
    c_mult->add_option("--fn2", fn2_file)->required();
    add_common(c_mult);

    auto* c_push = app.add_subcommand("pushforward", "pushforward along an affine map");
    c_push->add_option("--fn", fn_file)->required();
    c_push->add_option("--map", map_file, "affine map JSON {matrix, translation}")->required();
    add_common(c_push);

    auto* c_pull = app.add_subcommand("pullback", "pullback along an affine map");
    c_pull->add_option("--fn", fn_file)->required();
    c_pull->add_option("--map", map_file)->required();
    add_common(c_pull);

    auto* c_radon = app.add_subcommand("radon", "Euler Radon transform of a projective function");
    c_radon->add_option("--fn", fn_file)->required();
    c_radon->add_option("--points", points_file, "hyperplanes to evaluate the image at");
    add_common(c_radon);

    auto* c_dual = app.add_subcommand("dual-radon", "dual transform R^t of radon(fn) at points");
    c_dual->add_option("--fn", fn_file)->required();
    c_dual->add_option("--points", points_file)->required();
    add_common(c_dual);

    auto* c_inv = app.add_subcommand("invert-check", "verify the inversion formula at points");
    c_inv->add_option("--n", n, "projective dimension (information only; read from fn)");
    c_inv->add_option("--fn", fn_file)->required();
    c_inv->add_option("--points", points_file)->required();
    add_common(c_inv);

    auto* c_kernel = app.add_subcommand("kernel-probe", "probe the kernel of the transform");
    c_kernel->add_option("--n", n, "projective dimension")->required();
    c_kernel->add_option("--samples", samples, "number of random hyperplanes");
    c_kernel->add_option("--seed", seed);
    add_common(c_kernel);

    auto* c_sino = app.add_subcommand("sinogram", "classical length-kernel sinogram");
    c_sino->add_option("--fn", fn_file)->required();
    c_sino->add_option("--angles", n_angles, "number of angles in [0, pi)");
    c_sino->add_option("--offsets", n_offsets, "number of offsets");
    c_sino->add_option("--offset-range", offset_range, "offsets span [-R, R]");
    add_common(c_sino);

    auto* c_iv = app.add_subcommand("intrinsic-volumes", "intrinsic volume vector of a polytope");
    c_iv->add_option("--fn", fn_file, "polytope JSON")->required();
    add_common(c_iv);

    auto* c_steiner = app.add_subcommand("steiner-check", "Monte Carlo Steiner formula check");
    c_steiner->add_option("--fn", fn_file, "polytope JSON")->required();
    c_steiner->add_option("--epsilons", epsilons, "tube radii");
    c_steiner->add_option("--samples", samples);
    c_steiner->add_option("--seed", seed);
    add_common(c_steiner);

    auto* c_crofton = app.add_subcommand("crofton-check", "Monte Carlo Cauchy-Crofton check");
    c_crofton->add_option("--fn", fn_file, "polytope JSON")->required();
    c_crofton->add_option("--samples", samples);
    c_crofton->add_option("--seed", seed);
    add_common(c_crofton);

    auto* c_kin = app.add_subcommand("kinematic-check", "Monte Carlo planar kinematic check");
    c_kin->add_option("--fn", fn_file, "polytope JSON")->required();
    c_kin->add_option("--fn2", fn2_file, "polytope JSON")->required();
    c_kin->add_option("--samples", samples);
    c_kin->add_option("--seed", seed);
    add_common(c_kin);

    auto* c_norm = app.add_subcommand("normalize", "arrangement normal form of a function");
    c_norm->add_option("--fn", fn_file)->required();
    add_common(c_norm);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_euler->parsed()) {
            Json out;
            if (c_euler->count("--projective")) {
                out["euler_integral"] = rational_to_json(euler_integral(load_proj_fn(fn_file)));
            } else {
                out["euler_integral"] = rational_to_json(euler_integral(load_fn(fn_file)));
            }
            emit(out, out_file);
        } else if (c_mult->parsed()) {
            emit(constructible_to_json(multiply(load_fn(fn_file), load_fn(fn2_file))), out_file);
        } else if (c_push->parsed()) {
            emit(constructible_to_json(
                     pushforward(load_fn(fn_file), map_from_json(load_json(map_file)))),
                 out_file);
        } else if (c_pull->parsed()) {
            emit(constructible_to_json(
                     pullback(load_fn(fn_file), map_from_json(load_json(map_file)))),
                 out_file);
        } else if (c_radon->parsed()) {
            ProjConstructibleFn f = load_proj_fn(fn_file);
            RadonImage psi = radon(f);
            Json out;
            out["n"] = psi.n;
            out["constant"] = rational_to_json(psi.constant);
            out["dual_terms"] = Json::array();
            for (const auto& [w, k] : psi.dual_terms)
                out["dual_terms"].push_back(
                    Json{{"weight", rational_to_json(w)}, {"dual_body", projbody_to_json(k)}});
            if (!points_file.empty()) {
                out["values"] = Json::array();
                for (const auto& h : load_points(points_file, f.n))
                    out["values"].push_back(rational_to_json(eval_radon(psi, ProjHyperplane(h.homogeneous))));
            }
            emit(out, out_file);
        } else if (c_dual->parsed()) {
            ProjConstructibleFn f = load_proj_fn(fn_file);
            RadonImage psi = radon(f);
            Json out;
            out["values"] = Json::array();
            for (const auto& x : load_points(points_file, f.n))
                out["values"].push_back(rational_to_json(dual_radon_eval(psi, x)));
            emit(out, out_file);
        } else if (c_inv->parsed()) {
            ProjConstructibleFn f = load_proj_fn(fn_file);
            InversionReport rep = verify_inversion(f, load_points(points_file, f.n));
            Json out;
            out["all_zero"] = rep.all_zero;
            out["residuals"] = Json::array();
            for (const auto& e : rep.entries)
                out["residuals"].push_back(Json{{"point", vec_to_json(e.point.homogeneous)},
                                                {"lhs", rational_to_json(e.lhs)},
                                                {"rhs", rational_to_json(e.rhs)},
                                                {"residual", rational_to_json(e.residual)}});
            emit(out, out_file);
            if (!rep.all_zero) return kExitVerification;
        } else if (c_kernel->parsed()) {
            std::mt19937_64 rng(seed);
            std::vector<ProjHyperplane> hs;
            std::size_t count = samples > 10'000 ? 100 : samples;
            std::uniform_int_distribution<long> coord(-50, 50);
            while (hs.size() < count) {
                Vec v(n + 1);
                for (auto& x : v) x = coord(rng);
                if (!is_zero(v)) hs.emplace_back(std::move(v));
            }
            KernelProbeReport rep = kernel_probe(n, hs);
            Json out;
            out["n"] = rep.n;
            out["constant_image_value"] = rational_to_json(rep.constant_image_value);
            out["consistent"] = rep.consistent;
            out["seed"] = seed;
            Json vals = Json::array();
            for (const auto& v : rep.sampled_values) vals.push_back(rational_to_json(v));
            out["sampled_values"] = vals;
            emit(out, out_file);
            if (!rep.consistent) return kExitVerification;
        } else if (c_sino->parsed()) {
            ConstructibleFn f = load_fn(fn_file);
            std::vector<double> angles, offsets;
            for (int i = 0; i < n_angles; ++i)
                angles.push_back(std::numbers::pi * i / n_angles);
            for (int i = 0; i < n_offsets; ++i)
                offsets.push_back(-offset_range +
                                  2.0 * offset_range * i / (n_offsets - 1 > 0 ? n_offsets - 1 : 1));
            auto m = classical_sinogram(f, angles, offsets);
            if (format == "csv") {
                emit_text(csv_matrix(angles, offsets, m), out_file);
            } else {
                Json out;
                out["angles"] = angles;
                out["offsets"] = offsets;
                out["values"] = m;
                emit(out, out_file);
            }
        } else if (c_iv->parsed()) {
            IntrinsicVolumeVector iv =
                intrinsic_volumes(polytope_from_json(load_json(fn_file)));
            emit(Json{{"intrinsic_volumes", iv.values}}, out_file);
        } else if (c_steiner->parsed()) {
            Polytope p = polytope_from_json(load_json(fn_file));
            auto reports = steiner_check(p, epsilons, samples, seed);
            Json out = Json::array();
            bool all = true;
            for (std::size_t i = 0; i < reports.size(); ++i) {
                Json r = mc_report_to_json(reports[i]);
                r["epsilon"] = epsilons[i];
                all = all && reports[i].pass;
                out.push_back(std::move(r));
            }
            emit(out, out_file);
            if (!all) return kExitVerification;
        } else if (c_crofton->parsed()) {
            McReport r = cauchy_crofton_check(polytope_from_json(load_json(fn_file)),
                                              samples, seed);
            emit(mc_report_to_json(r), out_file);
            if (!r.pass) return kExitVerification;
        } else if (c_kin->parsed()) {
            McReport r = kinematic_check_R2(polytope_from_json(load_json(fn_file)),
                                            polytope_from_json(load_json(fn2_file)),
                                            samples, seed);
            emit(mc_report_to_json(r), out_file);
            if (!r.pass) return kExitVerification;
        } else if (c_norm->parsed()) {
            emit(cell_decomposition_to_json(normalize(load_fn(fn_file))), out_file);
        }
    } catch (const VerificationFailed& e) {
        emit(Json{{"error", e.what()}}, "");
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
        return kExitValidation;
    }
    return 0;
}
