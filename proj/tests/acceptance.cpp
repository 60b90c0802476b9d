// Acceptance suite: one PASS/FAIL line per criterion, exit status non-zero if any fail.
// Usage: acceptance <path-to-cli-binary> <golden-dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "lorentzpol/errors.hpp"
#include "lorentzpol/lorentz_recovery.hpp"
#include "lorentzpol/rotation_recovery.hpp"
#include "oracles.hpp"

using namespace lorentzpol;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Every Lorentzian element exercised by criteria 1, 3 and 4; criterion 5 re-checks their residuals.
std::vector<MuellerMatrix> g_lorentzian_elements;

MuellerMatrix boost_z(double beta) {
    MuellerMatrix m = MuellerMatrix::identity();
    m(0, 0) = m(3, 3) = std::cosh(beta);
    m(0, 3) = m(3, 0) = std::sinh(beta);
    return m;
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

Outcome boost_regression() {
    double worst = 0.0;
    for (double beta : {0.1, 0.5, std::numbers::ln2, 1.0, 2.0, 3.0}) {
        const MuellerMatrix m = boost_z(beta);
        g_lorentzian_elements.push_back(m);
        const ComplexVector3 q = recover_q(simulate_measurements(m, 1.0));
        const double expected[3] = {0.0, 0.0, -std::sinh(beta) / (std::cosh(beta) + 1.0)};
        for (std::size_t i = 0; i < 3; ++i) {
            worst = std::max(worst, std::abs(q[i].real() - expected[i]));
            worst = std::max(worst, std::abs(q[i].imag()));
        }
    }
    return {worst <= 1e-10, "max |q - q_expected| = " + num(worst)};
}

Outcome inversion_oracle() {
    std::mt19937_64 rng(20240501);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const MuellerMatrix m = oracle::random_dense(rng, 2.0);
        const MuellerMatrix back = reconstruct_mueller(simulate_measurements(m, 1.0));
        worst = std::max(worst, max_abs_diff(back, m) / m.max_abs());
    }
    return {worst < 1e-12, "max relative error = " + num(worst)};
}

Outcome lorentz_round_trip() {
    std::mt19937_64 rng(20240502);
    double worst_k = 0.0;
    double worst_l = 0.0;
    int accepted = 0;
    int rejected = 0;
    while (accepted < 1000) {
        const ComplexVector3 q = oracle::random_q(rng, 0.9);
        ComplexFourVector k;
        try {
            k = canonical_sign(k_from_q(q));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularParameter) throw;
            ++rejected;
            continue;
        }
        const MuellerMatrix l = lorentz_from_k(k);
        g_lorentzian_elements.push_back(l);
        const MeasurementSet ms = simulate_measurements(l, 1.0);
        try {
            const ComplexFourVector back = recover_k(ms);
            worst_k = std::max(worst_k, oracle::max_abs_diff(back, k));
            worst_l = std::max(worst_l, max_abs_diff(lorentz_from_k(back), reconstruct_mueller(ms)));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularNormalization) throw;
            ++rejected;
            continue;
        }
        ++accepted;
    }
    return {worst_k <= 1e-9 && worst_l <= 1e-9,
            "max |dk| = " + num(worst_k) + ", max |dL| = " + num(worst_l) + ", rejected " + std::to_string(rejected)};
}

Outcome quaternion_branch() {
    std::mt19937_64 rng(20240503);
    double worst_n = 0.0;
    double worst_sum = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const UnitQuaternion n = oracle::random_quaternion(rng, 0.05);
        const MuellerMatrix l = embed_rotation(quaternion_to_rotation(n));
        g_lorentzian_elements.push_back(l);
        const Mat3 r = rotation_from_measurements(simulate_measurements(l, 1.0));
        const UnitQuaternion back = recover_quaternion(r);
        worst_n = std::max({worst_n, std::abs(back.n0 - n.n0), std::abs(back.n1 - n.n1), std::abs(back.n2 - n.n2),
                            std::abs(back.n3 - n.n3)});
        worst_sum = std::max(worst_sum, std::abs(norm_identity_sum(r) - 4.0));
    }

    bool pi_ok = true;
    for (const auto& axis : {std::array<double, 3>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.6, 0.0, 0.8}}) {
        for (int repeat = 0; repeat < 2; ++repeat) {
            try {
                recover_quaternion(oracle::axis_angle(axis, std::numbers::pi));
                pi_ok = false;
            } catch (const Error& e) {
                pi_ok = pi_ok && e.code() == ErrorCode::NearPiRotation;
            }
        }
    }
    return {worst_n <= 1e-9 && worst_sum <= 1e-10 && pi_ok,
            "max |dn| = " + num(worst_n) + ", max |sum - 4| = " + num(worst_sum) +
                (pi_ok ? ", pi -> NearPiRotation" : ", pi rotation not rejected")};
}

Outcome residual_suite() {
    const double intensity = 1.0;
    double worst = 0.0;
    for (const MuellerMatrix& m : g_lorentzian_elements) {
        for (double r : lorentz_residuals(simulate_measurements(m, intensity)).r) worst = std::max(worst, std::abs(r));
    }
    const double r0 = lorentz_residuals(simulate_measurements(2.0 * MuellerMatrix::identity(), intensity)).r[0];
    const bool ok = !g_lorentzian_elements.empty() && worst < 1e-10 * intensity * intensity &&
                    std::abs(r0 - 3.0 * intensity * intensity) <= 1e-12;
    return {ok, std::to_string(g_lorentzian_elements.size()) + " elements, max |r| = " + num(worst) +
                    ", 2*identity r0 = " + num(r0)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

bool contains_nan(const nlohmann::json& j) {
    if (j.is_number_float()) return !std::isfinite(j.get<double>());
    if (j.is_structured()) {
        for (const auto& child : j)
            if (contains_nan(child)) return true;
    }
    return false;
}

Outcome degenerate_handling(const fs::path& cli, const fs::path& work) {
    const MeasurementSet ms = simulate_measurements(MuellerMatrix::diagonal(1, -1, -1, 1), 1.0);
    bool library_ok = false;
    try {
        recover_k(ms);
    } catch (const Error& e) {
        library_ok = e.code() == ErrorCode::DegenerateTrace;
    }

    const fs::path input = work / "degenerate.json";
    const int sim = shell(quote(cli) + " simulate --matrix 1 0 0 0 0 -1 0 0 0 0 -1 0 0 0 0 1 > " + quote(input));
    const int code = shell(quote(cli) + " recover " + quote(input) + " --model lorentz > " +
                           quote(work / "degenerate.out") + " 2> " + quote(work / "degenerate.err"));
    const std::string err = slurp(work / "degenerate.err");
    bool report_ok = false;
    std::string error_code;
    try {
        const auto j = nlohmann::json::parse(err);
        report_ok = !contains_nan(j);
        error_code = j.at("error").at("code").get<std::string>();
    } catch (const std::exception&) {
        report_ok = false;
    }
    const bool ok = library_ok && sim == 0 && code == 4 && report_ok && error_code == "DegenerateTrace";
    return {ok, "library " + std::string(library_ok ? "DegenerateTrace" : "wrong outcome") + ", CLI exit " +
                    std::to_string(code) + ", report " + (report_ok ? "NaN-free" : "invalid")};
}

Outcome golden_files(const fs::path& cli, const fs::path& golden, const fs::path& work) {
    const fs::path measurements = work / "boost3_ln2_measurements.json";
    const fs::path recovery = work / "boost3_ln2_recovery.json";
    const int sim = shell(quote(cli) + " simulate --boost 3 --beta 0.6931471805599453 --seed 0 --noise 0 > " +
                          quote(measurements));
    const int rec = shell(quote(cli) + " recover " + quote(measurements) + " --model lorentz > " + quote(recovery));
    const bool sim_match = slurp(measurements) == slurp(golden / "boost3_ln2_measurements.json");
    const bool rec_match = slurp(recovery) == slurp(golden / "boost3_ln2_recovery.json");
    return {sim == 0 && rec == 0 && sim_match && rec_match,
            std::string("simulate ") + (sim_match ? "identical" : "differs") + ", recover " +
                (rec_match ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <cli-binary> <golden-dir>\n";
        return 2;
    }
    const fs::path cli = fs::absolute(argv[1]);
    const fs::path golden = argv[2];
    const fs::path work = fs::temp_directory_path() / ("lorentzpol_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(work);

    struct Criterion {
        int id;
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "boost regression", 1.0, boost_regression},
        {2, "linear inversion oracle", 5.0, inversion_oracle},
        {3, "lorentz round trip", 10.0, lorentz_round_trip},
        {4, "quaternion branch", 0.0, quaternion_branch},
        {5, "metric residual suite", 0.0, residual_suite},
        {6, "degenerate trace handling", 0.0, [&] { return degenerate_handling(cli, work); }},
        {7, "cli golden files", 0.0, [&] { return golden_files(cli, golden, work); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && elapsed >= c.budget_s) {
            o.pass = false;
            o.detail += ", over time budget " + num(c.budget_s) + " s";
        }
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %d: %s (%s; %.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), elapsed);
    }
    fs::remove_all(work);
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
