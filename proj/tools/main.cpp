// Command-line front end: compute period matrices, verify the Riemann and
// Abel-Jacobi properties, evaluate the Abel-Jacobi map on divisors, and run
// local Jacobi inversion. JSON in, JSON out.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "abeljac/elliptic.hpp"
#include "abeljac/errors.hpp"
#include "abeljac/jsonio.hpp"
#include "abeljac/polyparse.hpp"

namespace {

using namespace abeljac;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Complex> load_coeffs(const std::string& spec) {
    std::string text = spec;
    if (std::filesystem::exists(spec) && std::filesystem::is_regular_file(spec))
        text = read_file(spec);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty curve specification");
    if (text[first] == '{') {
        try {
            return coeffs_from_json(json::parse(text));
        } catch (const json::parse_error& e) {
            throw InputError(std::string("curve JSON: ") + e.what());
        }
    }
    return parse_polynomial(text);
}

json load_json(const std::string& spec, const char* what) {
    std::string text = spec;
    if (std::filesystem::exists(spec) && std::filesystem::is_regular_file(spec))
        text = read_file(spec);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

struct CliOptions {
    std::string curve;
    std::string config;
    std::string out;
    std::vector<std::string> tols;
    std::uint64_t seed = 0;
    int order = 32;
    bool seed_given = false;
    bool order_given = false;
};

Settings make_settings(const CliOptions& opts) {
    Settings s;
    if (!opts.config.empty()) {
        const json cfg = load_json(opts.config, "config");
        if (cfg.contains("order")) s.gl_order = cfg["order"].get<int>();
        if (cfg.contains("seed")) s.seed = cfg["seed"].get<std::uint64_t>();
        if (cfg.contains("tolerances"))
            for (const auto& [name, value] : cfg["tolerances"].items()) {
                const double v = value.get<double>();
                if (name == "membership") s.membership_tol = v;
                else if (name == "symmetry") s.symmetry_tol = v;
                else if (name == "quad") s.quad_tol = v;
                else if (name == "degeneracy") s.degeneracy_threshold = v;
                else if (name == "rank_margin") s.rank_margin_tol = v;
                else if (name == "newton") s.newton_tol = v;
                else if (name == "clearance") s.clearance_fraction = v;
                else throw InputError("unknown tolerance name: " + name);
            }
    }
    if (opts.order_given) s.gl_order = opts.order;
    if (opts.seed_given) s.seed = opts.seed;
    for (const auto& spec : opts.tols) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw InputError("--tol expects name=value");
        const std::string name = spec.substr(0, eq);
        double v = 0.0;
        try {
            v = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("--tol " + name + ": bad value");
        }
        if (v <= 0.0) throw InputError("--tol " + name + ": tolerance must be positive");
        if (name == "membership") s.membership_tol = v;
        else if (name == "symmetry") s.symmetry_tol = v;
        else if (name == "quad") s.quad_tol = v;
        else if (name == "degeneracy") s.degeneracy_threshold = v;
        else if (name == "rank_margin") s.rank_margin_tol = v;
        else if (name == "newton") s.newton_tol = v;
        else if (name == "clearance") s.clearance_fraction = v;
        else throw InputError("unknown tolerance name: " + name);
    }
    if (s.gl_order < 8) throw InputError("quadrature order must be >= 8");
    return s;
}

void emit(const json& out, const CliOptions& opts) {
    const std::string text = out.dump(2) + "\n";
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opts.out, std::ios::binary);
        if (!f) throw InputError("cannot write: " + opts.out);
        f << text;
    }
}

int cmd_periods(const CliOptions& opts) {
    const Settings settings = make_settings(opts);
    const Pipeline pipe = build_pipeline(load_coeffs(opts.curve), settings);
    const RiemannReport report = verify_riemann_relations(pipe);
    emit(periods_output_json(pipe, report), opts);
    return report.pass ? 0 : 2;
}

int cmd_verify(const CliOptions& opts) {
    const Settings settings = make_settings(opts);
    const Pipeline pipe = build_pipeline(load_coeffs(opts.curve), settings);
    const VerifyReport report = run_verify(pipe);
    emit(verify_report_to_json(report), opts);
    return report.pass ? 0 : 2;
}

int cmd_abel(const CliOptions& opts, const std::string& base_spec, const std::string& divisor_spec) {
    const Settings settings = make_settings(opts);
    const Pipeline pipe = build_pipeline(load_coeffs(opts.curve), settings);

    CurvePoint O = generic_base_point(pipe.curve);
    if (!base_spec.empty()) O = point_from_json(pipe.curve, load_json(base_spec, "base point"));

    Divisor D;
    if (!divisor_spec.empty())
        D = divisor_from_json(pipe.curve, load_json(divisor_spec, "divisor"));

    const JacobianPoint u = abel_divisor(pipe, O, D);
    json out = jacobian_point_to_json(u);
    out["lattice_distance"] = lattice_distance(pipe.lattice, u.value);
    emit(out, opts);
    return 0;
}

int cmd_invert(const CliOptions& opts, const std::string& target_spec) {
    const Settings settings = make_settings(opts);
    const Pipeline pipe = build_pipeline(load_coeffs(opts.curve), settings);
    const int g = pipe.curve.genus;

    Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(g);
    if (!target_spec.empty()) xi = cvector_from_json(load_json(target_spec, "target"));
    if (xi.size() != g) throw InputError("target dimension must equal the genus");

    Rng rng(settings.seed);
    const std::vector<CurvePoint> base = sample_base_tuple(pipe, rng);
    const InversionResult result =
        jacobi_invert_local(pipe, base, xi, settings.newton_max_iter, settings.newton_tol);

    // forward round trip through the full Abel-Jacobi pipeline
    Divisor D;
    for (int j = 0; j < g; ++j) {
        D.add(result.points[j], 1);
        D.add(base[j], -1);
    }
    const JacobianPoint u = abel_divisor(pipe, branch_point_index(pipe.curve, 0), D);
    const double forward = lattice_distance(pipe.lattice, u.value - xi);

    json points = json::array();
    for (const auto& p : result.points) points.push_back(point_to_json(p));
    json base_json = json::array();
    for (const auto& p : base) base_json.push_back(point_to_json(p));
    emit(json{{"points", points},
              {"base", base_json},
              {"residual", result.residual},
              {"iterations", result.iterations},
              {"forward_distance", forward}},
         opts);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"period matrices and the Abel-Jacobi map for hyperelliptic curves y^2 = f(x)"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string base_spec, divisor_spec, target_spec;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--curve", opts.curve,
                        "curve as a polynomial string (\"x^3 - x\"), JSON, or a file")
            ->required();
        cmd->add_option("--config", opts.config, "JSON config file");
        cmd->add_option("--seed", opts.seed, "seed for randomized checks");
        cmd->add_option("--order", opts.order, "base Gauss-Legendre order");
        cmd->add_option("--tol", opts.tols, "tolerance override, name=value");
        cmd->add_option("--out", opts.out, "output file (default stdout)");
    };

    CLI::App* periods =
        app.add_subcommand("periods", "period matrices A, B and the Riemann matrix Omega");
    add_common(periods);
    CLI::App* verify = app.add_subcommand("verify", "full verification suite");
    add_common(verify);
    CLI::App* abel = app.add_subcommand("abel", "Abel-Jacobi map of a degree-zero divisor");
    add_common(abel);
    abel->add_option("--base", base_spec, "base point JSON (default: first branch point)");
    abel->add_option("--divisor", divisor_spec, "divisor JSON or file");
    CLI::App* invert = app.add_subcommand("invert", "local Jacobi inversion of a target in C^g");
    add_common(invert);
    invert->add_option("--target", target_spec, "target vector JSON [[re, im], ...]");

    try {
        app.parse(argc, argv);
        for (CLI::App* cmd : {periods, verify, abel, invert}) {
            if (!cmd->parsed()) continue;
            opts.seed_given = cmd->count("--seed") > 0;
            opts.order_given = cmd->count("--order") > 0;
        }
        if (periods->parsed()) return cmd_periods(opts);
        if (verify->parsed()) return cmd_verify(opts);
        if (abel->parsed()) return cmd_abel(opts, base_spec, divisor_spec);
        if (invert->parsed()) return cmd_invert(opts, target_spec);
        return 1;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const abeljac::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const abeljac::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const abeljac::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
