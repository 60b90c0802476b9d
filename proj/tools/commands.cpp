#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "lorentzpol/errors.hpp"
#include "lorentzpol/json_io.hpp"
#include "lorentzpol/lorentz_recovery.hpp"
#include "lorentzpol/probe_protocol.hpp"
#include "lorentzpol/rotation_recovery.hpp"

namespace lorentzpol::cli {

namespace {

std::string_view model_name(Model m) {
    switch (m) {
        case Model::Auto: return "auto";
        case Model::Rotation: return "rotation";
        case Model::Lorentz: return "lorentz";
        case Model::Raw: return "raw";
    }
    return "unknown";
}

void check_axis(int axis) {
    if (axis < 1 || axis > 3) throw SpecError("axis must be 1, 2 or 3, got " + std::to_string(axis));
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveIntensity: return kExitIntensity;
        case ErrorCode::DegenerateTrace:
        case ErrorCode::NearPiRotation:
        case ErrorCode::SingularNormalization: return kExitDegenerate;
        case ErrorCode::NotRotationType:
        case ErrorCode::NotRotation: return kExitNotLorentzian;
        default: return kExitUsage;
    }
}

ordered_json error_json(const Error& e) {
    ordered_json j;
    j["code"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    return j;
}

// Header shared by every recovery report.
ordered_json report_header(Model model, LorentzClass cls, double tol, const MuellerMatrix& m) {
    ordered_json j;
    j["model"] = std::string(model_name(model));
    j["classification"] = std::string(to_string(cls));
    j["tol"] = tol;
    j["matrix"] = to_json(m);
    return j;
}

void add_residuals(ordered_json& j, const LorentzResiduals& r) {
    j["lorentz_residuals"] = to_json(r);
    j["normalized_residual"] = r.normalized;
}

CommandOutput emit(int code, const ordered_json& report) {
    CommandOutput o;
    o.exit_code = code;
    // Degenerate cases go to stderr with whatever was computed before the failure.
    (code == kExitDegenerate ? o.err : o.out) = dump(report);
    return o;
}

CommandOutput recover_rotation(const MeasurementSet& ms, ordered_json report, double tol,
                               const LorentzResiduals& residuals) {
    try {
        const Mat3 r = rotation_from_measurements(ms, tol);
        const auto triad = validate_triad(triad_from_measurements(ms), std::max(tol, 1e-10));
        report["triad_valid"] = triad.valid();
        const UnitQuaternion n = recover_quaternion(r);
        report["quaternion"] = to_json(n);
        report["norm_identity_sum"] = norm_identity_sum(r);
        report["round_trip_max_dev"] =
            max_abs_diff(embed_rotation(quaternion_to_rotation(n)), reconstruct_mueller(ms));
        add_residuals(report, residuals);
        return emit(kExitOk, report);
    } catch (const Error& e) {
        add_residuals(report, residuals);
        report["error"] = error_json(e);
        return emit(exit_code_for(e.code()), report);
    }
}

CommandOutput recover_lorentz(const MeasurementSet& ms, ordered_json report, double tol,
                              LorentzClass cls, const LorentzResiduals& residuals) {
    if (cls == LorentzClass::NotLorentzian || residuals.normalized > tol) {
        add_residuals(report, residuals);
        ordered_json err;
        err["code"] = "NotLorentzian";
        err["message"] = "measurements violate the Lorentz invariance constraints above tol";
        report["error"] = std::move(err);
        return emit(kExitNotLorentzian, report);
    }
    const RoundTripReport rt = verify_round_trip(ms, std::max(tol, 1e-9));
    if (rt.intermediates) {
        report["delta"] = rt.intermediates->delta;
        report["M"] = to_json(rt.intermediates->mvec);
        report["N"] = to_json(rt.intermediates->nvec);
    }
    if (rt.k) report["k"] = to_json(*rt.k);
    if (rt.q) report["q"] = to_json(*rt.q);
    if (rt.max_deviation) report["round_trip_max_dev"] = *rt.max_deviation;
    add_residuals(report, residuals);
    if (rt.error) {
        ordered_json err;
        err["code"] = std::string(to_string(*rt.error));
        err["message"] = rt.message;
        report["error"] = std::move(err);
        return emit(exit_code_for(*rt.error), report);
    }
    return emit(kExitOk, report);
}

std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open " + path);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

Model parse_model(const std::string& name) {
    if (name == "auto") return Model::Auto;
    if (name == "rotation") return Model::Rotation;
    if (name == "lorentz") return Model::Lorentz;
    if (name == "raw") return Model::Raw;
    throw SpecError("unknown model '" + name + "'");
}

MuellerMatrix matrix_from_words(const std::vector<std::string>& words) {
    if (words.size() == 1 && words[0] == "identity") return MuellerMatrix::identity();
    if (words.size() != 16) {
        throw SpecError("--matrix takes 'identity' or 16 row-major numbers");
    }
    MuellerMatrix m;
    for (std::size_t i = 0; i < 16; ++i) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(words[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != words[i].size()) throw SpecError("--matrix entry '" + words[i] + "' is not a number");
        m(i / 4, i % 4) = v;
    }
    return m;
}

}  // namespace

MuellerMatrix boost_matrix(int axis, double beta) {
    check_axis(axis);
    MuellerMatrix m = MuellerMatrix::identity();
    const auto j = static_cast<std::size_t>(axis);
    m(0, 0) = std::cosh(beta);
    m(j, j) = std::cosh(beta);
    m(0, j) = std::sinh(beta);
    m(j, 0) = std::sinh(beta);
    return m;
}

MuellerMatrix rotation_matrix(int axis, double theta) {
    check_axis(axis);
    std::array<double, 3> v{};
    v[static_cast<std::size_t>(axis - 1)] = std::sin(theta / 2.0);
    return embed_rotation(quaternion_to_rotation({std::cos(theta / 2.0), v[0], v[1], v[2]}));
}

MuellerMatrix build_element(const ElementSpec& spec) {
    switch (spec.kind) {
        case ElementSpec::Kind::Matrix: return spec.matrix;
        case ElementSpec::Kind::Boost: return boost_matrix(spec.axis, spec.angle);
        case ElementSpec::Kind::Rotation: return rotation_matrix(spec.axis, spec.angle);
        case ElementSpec::Kind::Quaternion: {
            const UnitQuaternion& n = spec.quaternion;
            const double norm2 = n.norm_squared();
            if (!(std::abs(norm2 - 1.0) < 1e-6)) {
                throw SpecError("quaternion must be unit norm within 1e-6, |n|^2 = " + std::to_string(norm2));
            }
            const double s = 1.0 / std::sqrt(norm2);
            return embed_rotation(quaternion_to_rotation({n.n0 * s, n.n1 * s, n.n2 * s, n.n3 * s}));
        }
        case ElementSpec::Kind::QParam:
            try {
                return lorentz_from_k(k_from_q(spec.q));
            } catch (const Error& e) {
                throw SpecError(std::string("q-parameter: ") + e.what());
            }
    }
    throw SpecError("unknown element kind");
}

CommandOutput simulate(const ElementSpec& spec, double intensity, double noise_sigma,
                       std::uint64_t seed) {
    CommandOutput o;
    if (!(intensity > 0.0)) {
        o.exit_code = kExitIntensity;
        o.err = "error: --intensity must be > 0\n";
        return o;
    }
    if (!(noise_sigma >= 0.0)) {
        o.exit_code = kExitUsage;
        o.err = "error: --noise must be >= 0\n";
        return o;
    }
    try {
        const MuellerMatrix m = build_element(spec);
        o.out = dump(to_json(simulate_measurements(m, intensity, {noise_sigma, seed})));
    } catch (const SpecError& e) {
        o.exit_code = kExitUsage;
        o.err = std::string("error: invalid element: ") + e.what() + "\n";
    }
    return o;
}

CommandOutput recover(const std::string& measurement_json, Model model, double tol) {
    CommandOutput o;
    MeasurementSet ms;
    try {
        ms = parse_measurement_set(measurement_json);
    } catch (const ParseError& e) {
        o.exit_code = kExitUsage;
        o.err = std::string("error: ") + e.what() + "\n";
        return o;
    }
    if (!(ms.intensity > 0.0)) {
        o.exit_code = kExitIntensity;
        o.err = "error: measurement intensity must be > 0\n";
        return o;
    }

    const MuellerMatrix m = reconstruct_mueller(ms);
    const LorentzClass cls = is_lorentzian(m, tol);
    const LorentzResiduals residuals = lorentz_residuals(ms);
    ordered_json report = report_header(model, cls, tol, m);

    Model dispatched = model;
    if (model == Model::Auto) {
        dispatched = cls == LorentzClass::Rotation                     ? Model::Rotation
                     : cls == LorentzClass::ProperOrthochronousLorentz ? Model::Lorentz
                                                                       : Model::Raw;
        report["dispatched"] = std::string(model_name(dispatched));
    }

    switch (dispatched) {
        case Model::Rotation: return recover_rotation(ms, std::move(report), tol, residuals);
        case Model::Lorentz: return recover_lorentz(ms, std::move(report), tol, cls, residuals);
        case Model::Raw:
        case Model::Auto: break;
    }
    add_residuals(report, residuals);
    return emit(kExitOk, report);
}

CommandOutput recover_batch(const std::filesystem::path& dir, Model model, double tol) {
    CommandOutput o;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        o.exit_code = kExitUsage;
        o.err = "error: --batch needs a directory: " + dir.string() + "\n";
        return o;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::future<CommandOutput>> jobs;
    jobs.reserve(files.size());
    for (const auto& path : files) {
        jobs.push_back(std::async(std::launch::async, [path, model, tol] {
            std::ifstream in;
            try {
                return recover(read_source(path.string(), in), model, tol);
            } catch (const ParseError& e) {
                return CommandOutput{kExitUsage, {}, std::string("error: ") + e.what() + "\n"};
            }
        }));
    }

    ordered_json results = ordered_json::array();
    int worst = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const CommandOutput r = jobs[i].get();
        worst = std::max(worst, r.exit_code);
        ordered_json item;
        item["file"] = files[i].filename().string();
        item["exit_code"] = r.exit_code;
        const std::string& body = r.out.empty() ? r.err : r.out;
        const auto parsed = ordered_json::parse(body, nullptr, false);
        if (parsed.is_discarded()) {
            item["message"] = body;
        } else {
            item["report"] = parsed;
        }
        results.push_back(std::move(item));
    }
    o.exit_code = worst;
    o.out = dump(results);
    return o;
}

CommandOutput classify(const std::string& measurement_json, double tol) {
    CommandOutput o;
    MeasurementSet ms;
    try {
        ms = parse_measurement_set(measurement_json);
    } catch (const ParseError& e) {
        o.exit_code = kExitUsage;
        o.err = std::string("error: ") + e.what() + "\n";
        return o;
    }
    if (!(ms.intensity > 0.0)) {
        o.exit_code = kExitIntensity;
        o.err = "error: measurement intensity must be > 0\n";
        return o;
    }
    const LorentzClass cls = is_lorentzian(reconstruct_mueller(ms), tol);
    const LorentzResiduals r = lorentz_residuals(ms);
    o.out = std::string(to_string(cls)) + " residuals=" + to_json(r).dump() +
            " normalized=" + ordered_json(r.normalized).dump() + " tol=" + ordered_json(tol).dump() + "\n";
    switch (cls) {
        case LorentzClass::ProperOrthochronousLorentz: o.exit_code = kExitOk; break;
        case LorentzClass::Rotation: o.exit_code = kExitRotation; break;
        case LorentzClass::NotLorentzian: o.exit_code = kExitNotLorentzian; break;
    }
    return o;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Mueller matrices of Lorentzian type from four-probe polarisation measurements",
                 "lorentzpol"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Simulate the four probe measurements of an element");
    int boost_axis = 0;
    int rotation_axis = 0;
    double beta = 0.0;
    double theta = 0.0;
    std::vector<double> quaternion;
    std::vector<double> qparam;
    std::vector<std::string> matrix_words;
    double intensity = 1.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    auto* o_boost = sim->add_option("--boost", boost_axis, "Boost along axis 1..3 (use with --beta)");
    sim->add_option("--beta", beta, "Rapidity of the boost");
    auto* o_rot = sim->add_option("--rotation", rotation_axis, "Rotation about axis 1..3 (use with --theta)");
    sim->add_option("--theta", theta, "Rotation angle in radians");
    auto* o_quat = sim->add_option("--quaternion", quaternion, "Unit quaternion n0 n1 n2 n3")->expected(4);
    auto* o_q = sim->add_option("--qparam", qparam, "Vector parameter re1 im1 re2 im2 re3 im3")->expected(6);
    auto* o_mat = sim->add_option("--matrix", matrix_words, "'identity' or 16 row-major entries")
                      ->expected(1, 16);
    sim->add_option("--intensity", intensity, "Probe intensity I");
    sim->add_option("--noise", noise, "Gaussian noise sigma per Stokes component");
    sim->add_option("--seed", seed, "Noise generator seed");

    auto* rec = app.add_subcommand("recover", "Recover the matrix and its group parameters");
    std::string rec_input;
    std::string rec_model = "auto";
    std::string batch_dir;
    double rec_tol = 1e-9;
    auto* o_in = rec->add_option("input", rec_input, "Measurement JSON file, '-' for stdin");
    auto* o_batch = rec->add_option("--batch", batch_dir, "Recover every *.json in a directory");
    o_in->excludes(o_batch);
    rec->add_option("--model", rec_model, "auto | rotation | lorentz | raw");
    rec->add_option("--tol", rec_tol, "Classification tolerance (relative)");

    auto* cls = app.add_subcommand("classify", "Classify the element type");
    std::string cls_input;
    double cls_tol = 1e-9;
    cls->add_option("input", cls_input, "Measurement JSON file, '-' for stdin")->required();
    cls->add_option("--tol", cls_tol, "Classification tolerance (relative)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CommandOutput result;
    try {
        if (*sim) {
            const int given = static_cast<int>(o_boost->count() > 0) + static_cast<int>(o_rot->count() > 0) +
                              static_cast<int>(o_quat->count() > 0) + static_cast<int>(o_q->count() > 0) +
                              static_cast<int>(o_mat->count() > 0);
            if (given != 1) {
                throw SpecError("give exactly one of --boost, --rotation, --quaternion, --qparam, --matrix");
            }
            ElementSpec spec;
            if (o_boost->count() > 0) {
                spec.kind = ElementSpec::Kind::Boost;
                spec.axis = boost_axis;
                spec.angle = beta;
            } else if (o_rot->count() > 0) {
                spec.kind = ElementSpec::Kind::Rotation;
                spec.axis = rotation_axis;
                spec.angle = theta;
            } else if (o_quat->count() > 0) {
                spec.kind = ElementSpec::Kind::Quaternion;
                spec.quaternion = {quaternion[0], quaternion[1], quaternion[2], quaternion[3]};
            } else if (o_q->count() > 0) {
                spec.kind = ElementSpec::Kind::QParam;
                for (std::size_t i = 0; i < 3; ++i) spec.q[i] = Complex{qparam[2 * i], qparam[2 * i + 1]};
            } else {
                spec.kind = ElementSpec::Kind::Matrix;
                spec.matrix = matrix_from_words(matrix_words);
            }
            result = simulate(spec, intensity, noise, seed);
        } else if (*rec) {
            const Model model = parse_model(rec_model);
            if (!(rec_tol > 0.0)) throw SpecError("--tol must be > 0");
            if (!batch_dir.empty()) {
                result = recover_batch(batch_dir, model, rec_tol);
            } else if (rec_input.empty()) {
                throw SpecError("recover needs an input file or --batch");
            } else {
                result = recover(read_source(rec_input, in), model, rec_tol);
            }
        } else if (*cls) {
            if (!(cls_tol > 0.0)) throw SpecError("--tol must be > 0");
            result = classify(read_source(cls_input, in), cls_tol);
        }
    } catch (const SpecError& e) {
        result = {kExitUsage, {}, std::string("error: ") + e.what() + "\n"};
    } catch (const ParseError& e) {
        result = {kExitUsage, {}, std::string("error: ") + e.what() + "\n"};
    }

    out << result.out;
    err << result.err;
    return result.exit_code;
}

}  // namespace lorentzpol::cli
