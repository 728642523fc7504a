#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "obj_export.hpp"
#include "ruledmotion/dual_solver.hpp"
#include "ruledmotion/interpolation.hpp"
#include "ruledmotion/json_io.hpp"

namespace rm = ruledmotion;
using rm::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitGeometry = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitVerifyFail = 4;
constexpr int kExitNonGeneric = 5;
constexpr int kExitInterpolation = 6;

json read_json(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw rm::ParseError("cannot open " + path);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw rm::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void write_output(const std::string& path, const json& doc) {
    if (path == "-" || path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw rm::ParseError("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
}

std::vector<rm::Rat> parse_rat_list(const std::string& s) {
    std::vector<rm::Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rm::rat_from_string(item));
    return out;
}

rm::RPoly parse_rpoly(const std::string& s) { return rm::RPoly(parse_rat_list(s)); }

int run_analyze(const std::string& input, const std::string& output, double tol) {
    json doc = read_json(input);
    json rep;
    if (rm::io::document_mode(doc) == rm::io::Mode::exact) {
        auto L = rm::io::line_from_document<rm::Rat>(doc);
        rep["degree"] = L.degree();
        rep["reduced"] = rm::is_reduced(L);
        auto [kin, sigma] = rm::is_kinematic(L);
        rep["kinematic"] = kin;
        if (kin) {
            auto sat = rm::saturation_analysis(L);
            rep["saturated"] = sat.is_saturated;
            rep["g"] = rm::io::poly_to_json(sat.g);
            rep["g_pretty"] = rm::to_string(sat.g);
            rep["ell"] = rm::io::poly_to_json(sat.ell);
            rep["ell_pretty"] = rm::to_string(sat.ell);
            rep["sigma"] = rm::io::poly_to_json(sat.sigma);
        }
    } else {
        auto L = rm::io::line_from_document<double>(doc, tol);
        rep["degree"] = L.degree();
        rep["kinematic"] = rm::roots_have_even_multiplicities(L.primal.norm(), 1e3 * tol);
        rep["heuristic"] = true;
    }
    write_output(output, rep);
    return kExitOk;
}

int run_synthesize(const std::string& input, const std::string& output, const std::string& inject,
                   const std::string& nu, const std::string& unit, std::uint64_t seed) {
    json doc = read_json(input);
    if (rm::io::document_mode(doc) != rm::io::Mode::exact)
        throw rm::ParseError("synthesize requires an exact-mode surface");
    auto L = rm::io::line_from_document<rm::Rat>(doc);
    rm::SynthesizeOptions opts;
    opts.seed = seed;
    rm::QuatPoly<rm::Rat> injected;
    if (!inject.empty()) {
        json qdoc = read_json(inject);
        if (!qdoc.contains("quat")) throw rm::ParseError("injection document lacks a \"quat\" field");
        injected = rm::io::quat_poly_from_json<rm::Rat>(qdoc.at("quat"), false);
        opts.inject_Q = &injected;
    }
    rm::SynthesisResult res = rm::synthesize(L, opts);
    rm::MotionPoly<rm::Rat> emitted = res.C;
    if (!nu.empty() || !unit.empty()) {
        rm::RPoly nu_poly = nu.empty() ? rm::RPoly() : parse_rpoly(nu);
        rm::Quat<rm::Rat> v{rm::Rat(1), rm::Rat(0), rm::Rat(0), rm::Rat(0)};
        if (!unit.empty()) {
            auto vs = parse_rat_list(unit);
            if (vs.size() != 2) throw rm::ParseError("--unit expects v0,v3");
            v = rm::Quat<rm::Rat>{vs[0], rm::Rat(0), rm::Rat(0), vs[1]};
        }
        emitted = rm::solution_family(res, nu_poly, v);
    }
    json out = rm::io::motion_to_document(emitted);
    auto mini = rm::minimality_check(res);
    out["certificate"] = {
        {"h", rm::io::poly_to_json(res.h)},
        {"h_pretty", rm::to_string(res.h)},
        {"c", rm::to_string(res.c)},
        {"ell", rm::io::poly_to_json(res.ell)},
        {"removed_content", rm::io::poly_to_json(res.removed_content)},
        {"minimal", mini.minimal},
        {"unique", mini.unique},
        {"family_translation_degree", res.family_translation_degree},
        {"rotation", rm::io::quat_to_json(res.rotation)},
    };
    write_output(output, out);
    return kExitOk;
}

int run_verify(const std::string& motion_path, const std::string& line_path, const std::string& output,
               double tol) {
    json mdoc = read_json(motion_path);
    json ldoc = read_json(line_path);
    if (rm::io::document_mode(mdoc) != rm::io::document_mode(ldoc))
        throw rm::ParseError("motion and line documents must share one mode");
    json out;
    int code = kExitOk;
    if (rm::io::document_mode(mdoc) == rm::io::Mode::exact) {
        auto C = rm::io::motion_from_document<rm::Rat>(mdoc);
        auto L = rm::io::line_from_document<rm::Rat>(ldoc);
        try {
            auto vr = rm::verify_solution(C, L);
            out = {{"ok", true},
                   {"h", rm::io::poly_to_json(vr.h)},
                   {"h_pretty", rm::to_string(vr.h)},
                   {"c", rm::to_string(vr.c)}};
        } catch (const rm::VerificationFailure& e) {
            out = {{"ok", false}, {"reason", e.what()}};
            code = kExitVerifyFail;
        }
    } else {
        auto C = rm::io::motion_from_document<double>(mdoc, tol);
        auto L = rm::io::line_from_document<double>(ldoc, tol);
        auto vr = rm::verify_solution_approx(C, L, tol);
        out["ok"] = vr.ok;
        out["residual"] = vr.residual;
        if (vr.ok) {
            out["h"] = rm::io::poly_to_json(vr.h);
            out["c"] = rm::to_string(vr.c);
        }
        if (!vr.ok) code = kExitVerifyFail;
    }
    write_output(output, out);
    return code;
}

template <rm::ScalarField S>
json factorization_to_json(const rm::Factorization<S>& f) {
    json factors = json::array();
    for (const auto& lf : f.factors) {
        factors.push_back({{"h", rm::io::dual_quat_to_json(lf.h)},
                           {"norm", rm::io::poly_to_json(lf.norm())}});
    }
    return json{{"leading", rm::io::dual_quat_to_json(f.leading)}, {"factors", factors}};
}

int run_factor(const std::string& input, const std::string& output, const std::string& order,
               const std::string& peel, double tol) {
    json doc = read_json(input);
    json out;
    if (rm::io::document_mode(doc) == rm::io::Mode::exact) {
        auto C = rm::io::motion_from_document<rm::Rat>(doc);
        if (!peel.empty()) {
            auto sep = peel.find(';');
            if (sep == std::string::npos) throw rm::ParseError("--peel-translation expects coeffs;multiplicity");
            rm::RPoly f = parse_rpoly(peel.substr(0, sep));
            int m = std::stoi(peel.substr(sep + 1));
            auto [rest, E] = rm::peel_translation_factor(C, f, m);
            out["rest"] = rm::io::motion_to_document(rest);
            out["factor"] = rm::io::motion_to_document(rm::MotionPoly<rm::Rat>{E});
        } else {
            if (order.empty()) throw rm::ParseError("exact factorization needs --order");
            std::vector<rm::RPoly> quads;
            std::stringstream ss(order);
            std::string item;
            while (std::getline(ss, item, ';')) quads.push_back(parse_rpoly(item));
            auto f = rm::factor_into_linear(C, quads);
            out = factorization_to_json(f);
        }
    } else {
        auto C = rm::io::motion_from_document<double>(doc, tol);
        std::vector<rm::FPoly> quads;
        if (order.empty()) {
            quads = rm::norm_quadratics(C, tol);
        } else {
            std::stringstream ss(order);
            std::string item;
            while (std::getline(ss, item, ';')) {
                std::vector<double> cs;
                std::stringstream cc(item);
                std::string num;
                while (std::getline(cc, num, ',')) cs.push_back(rm::scalar_from_string<double>(num));
                quads.push_back(rm::FPoly(cs));
            }
        }
        auto f = rm::factor_into_linear(C, quads, 1e3 * tol);
        out = factorization_to_json(f);
    }
    write_output(output, out);
    return kExitOk;
}

int run_interpolate(const std::string& input, const std::string& output, const std::string& knots_s,
                    const std::string& weights_s, const std::string& phis_s, const std::string& mesh,
                    int samples, double clip, double tol) {
    json doc = read_json(input);
    if (rm::io::document_mode(doc) != rm::io::Mode::floating)
        throw rm::ParseError("interpolate requires a float-mode document");
    if (!doc.contains("lines") || !doc.at("lines").is_array() || doc.at("lines").size() != 3)
        throw rm::ParseError("document must carry exactly three \"lines\"");
    auto parse3 = [](const std::string& s, std::array<double, 3> dflt) {
        if (s.empty()) return dflt;
        std::array<double, 3> out{};
        std::stringstream ss(s);
        std::string item;
        int i = 0;
        while (std::getline(ss, item, ',') && i < 3) out[static_cast<size_t>(i++)] = std::stod(item);
        if (i != 3) throw rm::ParseError("expected three comma-separated values");
        return out;
    };
    std::array<double, 3> knots = parse3(knots_s, {-1, 0, 1});
    std::array<double, 3> weights = parse3(weights_s, {1, 1, 1});
    rm::InterpolateOptions opts;
    opts.phis = parse3(phis_s, {0, 0, 0});
    opts.tolerance = tol;
    auto mk_line = [&](const json& j) { return rm::io::plucker_from_json<double>(j, 1e3 * tol); };
    std::array<rm::PluckerLine<double>, 3> lines{mk_line(doc.at("lines").at(0)),
                                                 mk_line(doc.at("lines").at(1)),
                                                 mk_line(doc.at("lines").at(2))};
    rm::BennettResult res = rm::interpolate_three_lines(lines, knots, weights, opts);
    json out = rm::io::motion_to_document(res.C);
    out["leading"] = rm::io::dual_quat_to_json(res.leading);
    out["factorization_a"] = factorization_to_json(res.factorization_a);
    out["factorization_b"] = factorization_to_json(res.factorization_b);
    json axes = json::array();
    for (const auto& a : res.axes) axes.push_back(rm::io::plucker_to_json(a));
    out["axes"] = axes;
    out["surface"] = rm::io::line_to_document(res.L);
    json pre = json::array();
    for (const auto& p : res.preimages) pre.push_back(rm::io::quat_to_json(p));
    out["preimages"] = pre;
    out["residuals"] = {{"surface", res.surface_residual}, {"dual", res.dual_residual}};
    if (!mesh.empty()) {
        std::ofstream os(mesh);
        if (!os) throw rm::ParseError("cannot open " + mesh + " for writing");
        rm::io::ObjOptions oo;
        oo.samples = samples;
        oo.clip = clip;
        const double pad = 0.2 * (knots[2] - knots[0]);
        oo.t_lo = knots[0] - pad;
        oo.t_hi = knots[2] + pad;
        std::vector<rm::PluckerLine<double>> axes_vec(res.axes.begin(), res.axes.end());
        rm::io::write_ruled_surface_obj(os, res.L, axes_vec, oo);
    }
    write_output(output, out);
    return kExitOk;
}

int map_error(const rm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const rm::ParseError*>(&e)) return kExitParse;
    if (dynamic_cast<const rm::NotKinematicError*>(&e)) return kExitNoSolution;
    if (dynamic_cast<const rm::UnsupportedSplittingError*>(&e)) return kExitNoSolution;
    if (dynamic_cast<const rm::VerificationFailure*>(&e)) return kExitVerifyFail;
    if (dynamic_cast<const rm::GenericityError*>(&e)) return kExitNonGeneric;
    if (dynamic_cast<const rm::NonGenericFactorizationError*>(&e)) return kExitNonGeneric;
    if (dynamic_cast<const rm::InvalidFactorError*>(&e)) return kExitNonGeneric;
    if (dynamic_cast<const rm::InterpolationFailure*>(&e)) return kExitInterpolation;
    return kExitGeometry;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational motions with prescribed line trajectories"};
    app.require_subcommand(1);

    std::string input = "-", output = "-";
    double tolerance = rm::kDefaultTolerance;
    std::uint64_t seed = 0;
    app.add_option("--input", input, "input JSON file, or - for stdin")->capture_default_str();
    app.add_option("--output", output, "output JSON file, or - for stdout")->capture_default_str();
    app.add_option("--tolerance", tolerance, "float-mode comparison tolerance")->capture_default_str();
    app.add_option("--seed", seed, "seed for the pseudo-random rotation schedule tail");

    auto* analyze = app.add_subcommand("analyze", "structural report for a ruled surface");

    auto* synth = app.add_subcommand("synthesize", "minimal-degree motion for a ruled surface");
    std::string inject, nu, unit;
    synth->add_option("--inject-q", inject, "JSON file with a user-supplied primal cofactor");
    synth->add_option("--nu", nu, "family translation polynomial, comma-separated coefficients");
    synth->add_option("--unit", unit, "family rotation unit v0,v3");

    auto* verify = app.add_subcommand("verify", "check a motion against a surface");
    std::string motion_path, line_path;
    verify->add_option("--motion", motion_path, "motion document")->required();
    verify->add_option("--line", line_path, "line polynomial document")->required();

    auto* factor = app.add_subcommand("factor", "split a motion into linear or translation factors");
    std::string order, peel;
    factor->add_option("--order", order,
                       "norm quadratics, rightmost factor first: \"c0,c1,c2;c0,c1,c2;...\"");
    factor->add_option("--peel-translation", peel, "translation factor: \"c0,c1,c2;multiplicity\"");

    auto* interp = app.add_subcommand("interpolate", "degree-2 motion through three lines");
    std::string knots_s, weights_s, phis_s, mesh;
    int samples = 48;
    double clip = 10.0;
    interp->add_option("--knots", knots_s, "parameter values t0,t1,t2 (default -1,0,1)");
    interp->add_option("--weights", weights_s, "homogeneous weights w0,w1,w2 (default 1,1,1)");
    interp->add_option("--phis", phis_s, "preimage rotation angles (default 0,0,0)");
    interp->add_option("--mesh", mesh, "write the sampled ruled surface as an OBJ file");
    interp->add_option("--samples", samples, "ruling samples for the OBJ export")->capture_default_str();
    interp->add_option("--clip", clip, "half-width of the OBJ clip box")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(input, output, tolerance);
        if (synth->parsed()) return run_synthesize(input, output, inject, nu, unit, seed);
        if (verify->parsed()) return run_verify(motion_path, line_path, output, tolerance);
        if (factor->parsed()) return run_factor(input, output, order, peel, tolerance);
        if (interp->parsed())
            return run_interpolate(input, output, knots_s, weights_s, phis_s, mesh, samples, clip,
                                   tolerance);
    } catch (const rm::Error& e) {
        return map_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
