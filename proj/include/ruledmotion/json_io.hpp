#pragma once

#include <string>

#include <json.hpp>

#include "ruledmotion/line_geometry.hpp"
#include "ruledmotion/motion_ops.hpp"

namespace ruledmotion::io {

using nlohmann::json;

enum class Mode { exact, floating };

inline Mode mode_from_string(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "float") return Mode::floating;
    throw ParseError("unknown mode: " + s);
}

inline std::string mode_to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode document_mode(const json& doc) {
    if (!doc.is_object() || !doc.contains("mode")) throw ParseError("document lacks a \"mode\" field");
    if (!doc.at("mode").is_string()) throw ParseError("\"mode\" must be a string");
    return mode_from_string(doc.at("mode").get<std::string>());
}

template <ScalarField S>
constexpr Mode mode_of = is_exact_v<S> ? Mode::exact : Mode::floating;

// Coefficients serialize as strings, ascending degree: "p/q" in exact mode,
// shortest round-trip decimals in float mode. Numbers are accepted on input
// for convenience but never emitted.
template <ScalarField S>
Poly<S> poly_from_json(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("coeffs")) throw ParseError("polynomial object lacks \"coeffs\"");
        arr = &j.at("coeffs");
    }
    if (!arr->is_array()) throw ParseError("polynomial must be an array of coefficient strings");
    std::vector<S> cs;
    for (const auto& e : *arr) {
        if (e.is_string())
            cs.push_back(scalar_from_string<S>(e.get<std::string>()));
        else if (e.is_number())
            cs.push_back(scalar_from_string<S>(e.dump()));
        else
            throw ParseError("polynomial coefficient must be a string");
    }
    return Poly<S>(std::move(cs));
}

template <ScalarField S>
json poly_to_json(const Poly<S>& p) {
    json arr = json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(to_string(p.coeff(i)));
    return arr;
}

template <ScalarField S>
QuatPoly<S> quat_poly_from_json(const json& j, bool vectorial) {
    if (!j.is_object()) throw ParseError("quaternion polynomial must be an object");
    auto get = [&](const char* key) -> Poly<S> {
        if (!j.contains(key)) return Poly<S>();
        return poly_from_json<S>(j.at(key));
    };
    Poly<S> w = vectorial ? Poly<S>() : get("w");
    if (vectorial && j.contains("w") && !poly_from_json<S>(j.at("w")).is_zero())
        throw ParseError("vectorial component carries a nonzero scalar part");
    return QuatPoly<S>{w, get("x"), get("y"), get("z")};
}

template <ScalarField S>
json quat_poly_to_json(const QuatPoly<S>& q, bool vectorial) {
    json j = json::object();
    if (!vectorial) j["w"] = poly_to_json(q.w);
    j["x"] = poly_to_json(q.x);
    j["y"] = poly_to_json(q.y);
    j["z"] = poly_to_json(q.z);
    return j;
}

template <ScalarField S>
LinePoly<S> line_from_document(const json& doc, double tol = kDefaultTolerance) {
    if (!doc.contains("line")) throw ParseError("document lacks a \"line\" field");
    const json& l = doc.at("line");
    if (!l.is_object() || !l.contains("primal") || !l.contains("dual"))
        throw ParseError("line must carry \"primal\" and \"dual\" parts");
    QuatPoly<S> p = quat_poly_from_json<S>(l.at("primal"), /*vectorial=*/true);
    QuatPoly<S> d = quat_poly_from_json<S>(l.at("dual"), /*vectorial=*/true);
    return validate_line_poly(p, d, tol);
}

template <ScalarField S>
json line_to_document(const LinePoly<S>& L) {
    return json{{"mode", mode_to_string(mode_of<S>)},
                {"line",
                 {{"primal", quat_poly_to_json(L.primal, true)},
                  {"dual", quat_poly_to_json(L.dual, true)}}}};
}

template <ScalarField S>
MotionPoly<S> motion_from_document(const json& doc, double tol = kDefaultTolerance) {
    if (!doc.contains("motion")) throw ParseError("document lacks a \"motion\" field");
    const json& m = doc.at("motion");
    if (!m.is_object() || !m.contains("primal") || !m.contains("dual"))
        throw ParseError("motion must carry \"primal\" and \"dual\" parts");
    QuatPoly<S> p = quat_poly_from_json<S>(m.at("primal"), false);
    QuatPoly<S> d = quat_poly_from_json<S>(m.at("dual"), false);
    return MotionPoly<S>{DualQuatPoly<S>{p, d}, tol};
}

template <ScalarField S>
json motion_to_document(const MotionPoly<S>& C) {
    return json{{"mode", mode_to_string(mode_of<S>)},
                {"motion",
                 {{"primal", quat_poly_to_json(C.primal(), false)},
                  {"dual", quat_poly_to_json(C.dual(), false)}}}};
}

template <ScalarField S>
json quat_to_json(const Quat<S>& q) {
    return json{{"w", to_string(q.w)}, {"x", to_string(q.x)}, {"y", to_string(q.y)}, {"z", to_string(q.z)}};
}

template <ScalarField S>
json dual_quat_to_json(const DualQuat<S>& q) {
    return json{{"primal", quat_to_json(q.p)}, {"dual", quat_to_json(q.d)}};
}

template <ScalarField S>
PluckerLine<S> plucker_from_json(const json& j, double tol = kDefaultTolerance) {
    auto vec = [&](const char* key) -> Quat<S> {
        if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 3)
            throw ParseError(std::string("line needs a 3-component \"") + key + "\" array");
        const json& a = j.at(key);
        auto val = [&](int i) {
            const auto& e = a.at(static_cast<size_t>(i));
            return e.is_string() ? scalar_from_string<S>(e.get<std::string>())
                                 : scalar_from_string<S>(e.dump());
        };
        return Quat<S>{S(0), val(0), val(1), val(2)};
    };
    return PluckerLine<S>(vec("direction"), vec("moment"), tol);
}

template <ScalarField S>
json plucker_to_json(const PluckerLine<S>& l) {
    json dir = json::array(), mom = json::array();
    for (const S* v : {&l.direction.x, &l.direction.y, &l.direction.z}) dir.push_back(to_string(*v));
    for (const S* v : {&l.moment.x, &l.moment.y, &l.moment.z}) mom.push_back(to_string(*v));
    return json{{"direction", dir}, {"moment", mom}};
}

}  // namespace ruledmotion::io
