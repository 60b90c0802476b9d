#include "lorentzpol/json_io.hpp"

#include <array>
#include <cmath>

namespace lorentzpol {

namespace {

// Drops the sign of negative zero so reports do not show "-0.0".
double clean(double v) { return v + 0.0; }

StokesVector stokes_from_json(const nlohmann::json& j, const char* name) {
    if (!j.is_array() || j.size() != 4) {
        throw ParseError(std::string("outputs.") + name + " must be an array of 4 numbers");
    }
    StokesVector s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number()) {
            throw ParseError(std::string("outputs.") + name + "[" + std::to_string(i) + "] is not a number");
        }
        s[i] = j[i].get<double>();
    }
    return s;
}

}  // namespace

ordered_json to_json(const StokesVector& s) { return ordered_json::array({clean(s[0]), clean(s[1]), clean(s[2]), clean(s[3])}); }

ordered_json to_json(const MuellerMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m.m) rows.push_back(ordered_json::array({clean(row[0]), clean(row[1]), clean(row[2]), clean(row[3])}));
    return rows;
}

ordered_json to_json(const Vec3& v) { return ordered_json::array({clean(v[0]), clean(v[1]), clean(v[2])}); }

ordered_json to_json(const ComplexFourVector& k) {
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (std::size_t a = 0; a < 4; ++a) {
        re.push_back(clean(k.component(a).real()));
        im.push_back(clean(k.component(a).imag()));
    }
    ordered_json out;
    out["re"] = std::move(re);
    out["im"] = std::move(im);
    return out;
}

ordered_json to_json(const ComplexVector3& q) {
    ordered_json out;
    out["re"] = ordered_json::array({clean(q[0].real()), clean(q[1].real()), clean(q[2].real())});
    out["im"] = ordered_json::array({clean(q[0].imag()), clean(q[1].imag()), clean(q[2].imag())});
    return out;
}

ordered_json to_json(const UnitQuaternion& n) { return ordered_json::array({clean(n.n0), clean(n.n1), clean(n.n2), clean(n.n3)}); }

ordered_json to_json(const LorentzResiduals& r) {
    return ordered_json::array({clean(r.r[0]), clean(r.r[1]), clean(r.r[2]), clean(r.r[3])});
}

ordered_json to_json(const MeasurementSet& ms) {
    ordered_json out;
    out["intensity"] = ms.intensity;
    ordered_json outputs;
    outputs["F"] = to_json(ms.f);
    outputs["A"] = to_json(ms.a);
    outputs["B"] = to_json(ms.b);
    outputs["C"] = to_json(ms.c);
    out["outputs"] = std::move(outputs);
    return out;
}

MeasurementSet measurement_set_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("measurement set must be a JSON object");
    if (!j.contains("intensity") || !j["intensity"].is_number()) {
        throw ParseError("missing numeric field 'intensity'");
    }
    if (!j.contains("outputs") || !j["outputs"].is_object()) {
        throw ParseError("missing object field 'outputs'");
    }
    const auto& outputs = j["outputs"];
    for (const char* key : {"F", "A", "B", "C"}) {
        if (!outputs.contains(key)) throw ParseError(std::string("missing outputs.") + key);
    }
    MeasurementSet ms;
    ms.intensity = j["intensity"].get<double>();
    ms.f = stokes_from_json(outputs["F"], "F");
    ms.a = stokes_from_json(outputs["A"], "A");
    ms.b = stokes_from_json(outputs["B"], "B");
    ms.c = stokes_from_json(outputs["C"], "C");
    return ms;
}

MeasurementSet parse_measurement_set(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return measurement_set_from_json(j);
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace lorentzpol
