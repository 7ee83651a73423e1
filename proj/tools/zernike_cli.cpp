#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "zernike/classical.hpp"
#include "zernike/config.hpp"
#include "zernike/errors.hpp"
#include "zernike/spectral.hpp"
#include "zernike/verify.hpp"
#include "zernike/zernike_operator.hpp"

namespace fs = std::filesystem;
using namespace zernike;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitResonance = 4;

struct Flags {
    std::optional<std::string> config_file;
    std::optional<double> alpha, beta, hbar, tol_eig, tol_ode, tol_quad, T;
    std::optional<int> max_degree, m;
    std::optional<long long> seed;
    std::optional<std::string> out, variant, x0, p0, tag, norm;
    bool paired = false;
};

RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    if (f.config_file) apply_config_entries(cfg, read_config_file(*f.config_file));
    if (f.alpha) { cfg.alpha = *f.alpha; cfg.params_explicit = true; }
    if (f.beta) { cfg.beta = *f.beta; cfg.params_explicit = true; }
    if (f.hbar) cfg.hbar = *f.hbar;
    if (f.max_degree) cfg.max_degree = *f.max_degree;
    if (f.m) cfg.m_sector = *f.m;
    if (f.tol_eig) cfg.tol_eig = *f.tol_eig;
    if (f.tol_ode) cfg.tol_ode = *f.tol_ode;
    if (f.tol_quad) cfg.tol_quad = *f.tol_quad;
    if (f.seed) {
        if (*f.seed < 0) throw ConfigError("seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(*f.seed);
    }
    if (f.out) cfg.output_dir = *f.out;
    if (f.variant) cfg.variant = *f.variant;
    if (f.tag) cfg.tag = *f.tag;
    if (f.norm) cfg.normalization = *f.norm;
    if (f.T) cfg.T = *f.T;
    if (f.x0) cfg.x0 = parse_vec2(*f.x0);
    if (f.p0) cfg.p0 = parse_vec2(*f.p0);
    if (f.paired) cfg.paired = true;
    cfg.validate();
    return cfg;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

Normalization normalization_from_string(const std::string& name) {
    if (name == "monic_top") return Normalization::monic_top;
    if (name == "rim") return Normalization::rim;
    if (name == "unit_norm") return Normalization::unit_norm;
    throw ConfigError("unknown normalization '" + name + "' (monic_top, rim, unit_norm)");
}

void require_compact(const Params& params, const char* command) {
    if (!(params.alpha < 0.0)) throw DomainError(std::string(command) + " requires alpha < 0");
}

void refuse_resonance(const RunConfig& cfg) {
    if (const auto locus = find_resonance(cfg.params(), cfg.max_degree, cfg.m_sector)) {
        throw ResonanceError("resonant parameters: beta = -2 alpha (n - k) at n=" + std::to_string(locus->n) +
                                 ", k=" + std::to_string(locus->k),
                             locus->n, locus->k);
    }
}

int cmd_spectrum(const RunConfig& cfg) {
    const Params params = cfg.params();
    require_compact(params, "spectrum");
    refuse_resonance(cfg);
    const OperatorTag tag = operator_tag_from_string(cfg.tag);
    AssembleOptions options;
    options.quadrature_tol = cfg.tol_quad;
    const OperatorMatrix matrix = assemble(params, tag, {cfg.max_degree, cfg.m_sector}, 0.0, options);
    SpectrumReport report = eigen(matrix);
    compare_with_exact(report, matrix);

    nlohmann::json j = to_json(report);
    j["tag"] = to_string(tag);
    j["params"] = {{"alpha", params.alpha}, {"beta", params.beta}, {"hbar", params.hbar}};
    j["max_degree"] = cfg.max_degree;
    j["m_sector"] = cfg.m_sector ? nlohmann::json(*cfg.m_sector) : nlohmann::json(nullptr);
    j["tolerance"] = cfg.tol_eig;
    const bool ok = report.max_abs_deviation < cfg.tol_eig;
    j["within_tolerance"] = ok;
    write_file(cfg, "spectrum.csv", to_csv(report));
    write_file(cfg, "spectrum.json", j.dump(2) + "\n");
    std::cout << to_csv(report);
    std::cerr << "max_abs_deviation " << report.max_abs_deviation << (ok ? " < " : " >= ") << cfg.tol_eig << "\n";
    return ok ? kExitOk : kExitNumerical;
}

int cmd_eigenfunctions(const RunConfig& cfg) {
    const Params params = cfg.params();
    require_compact(params, "eigenfunctions");
    refuse_resonance(cfg);
    const Normalization mode = normalization_from_string(cfg.normalization);
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n <= cfg.max_degree; ++n) {
        for (int m = -n; m <= n; m += 2) {
            if (cfg.m_sector && m != *cfg.m_sector) continue;
            const EigenPair pair = build_eigenfunction(params, n, m, mode);
            rows.push_back({{"n", n},
                            {"m", m},
                            {"energy", pair.energy},
                            {"residual_norm", residual_norm(params, pair, 0.0)},
                            {"poly", to_json(pair.poly)}});
        }
    }
    nlohmann::json j{{"params", {{"alpha", params.alpha}, {"beta", params.beta}, {"hbar", params.hbar}}},
                     {"normalization", cfg.normalization},
                     {"eigenfunctions", rows}};
    write_file(cfg, "eigenfunctions.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_evolve(const RunConfig& cfg) {
    const Params params = cfg.params();
    IntegrateOptions options;
    options.tol = cfg.tol_ode;
    const PhaseState state0 = PhaseState::real(cfg.x0, cfg.p0);

    auto run = [&](Variant variant, const PhaseState& s, const std::string& file, bool gauge_columns) {
        try {
            const Trajectory t = integrate(variant, params, s, cfg.T, options);
            write_file(cfg, file, trajectory_csv(t, gauge_columns));
        } catch (const BoundaryError& e) {
            write_file(cfg, file, trajectory_csv(e.partial(), gauge_columns));
            throw;
        }
    };

    if (cfg.paired) {
        run(Variant::higgs_real, state0, "trajectory_higgs_real.csv", false);
        run(Variant::zernike_complex, gauge_shift(params, state0, GaugeDirection::to_complex),
            "trajectory_zernike_complex.csv", true);
        std::cout << (fs::path(cfg.output_dir) / "trajectory_higgs_real.csv").string() << "\n"
                  << (fs::path(cfg.output_dir) / "trajectory_zernike_complex.csv").string() << "\n";
        return kExitOk;
    }
    const Variant variant = variant_from_string(cfg.variant);
    run(variant, state0, "trajectory.csv", variant == Variant::zernike_complex);
    std::cout << (fs::path(cfg.output_dir) / "trajectory.csv").string() << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    const VerificationReport report = run_verification(cfg);
    const std::string text = to_text(report);
    write_file(cfg, "verify_report.json", to_json(report).dump(2) + "\n");
    write_file(cfg, "verify_report.txt", text);
    std::cout << text;
    return report.all_passed() ? kExitOk : kExitNumerical;
}

int report_error(const Error& e, int code) {
    nlohmann::json j{{"error", e.kind()}, {"message", e.what()}, {"exit_code", code}};
    if (const auto* r = dynamic_cast<const ResonanceError*>(&e)) j["locus"] = {{"n", r->n()}, {"k", r->k()}};
    std::cerr << j.dump() << "\n";
    return code;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const ResonanceError*>(&e)) return kExitResonance;
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ConfigError*>(&e) ||
        dynamic_cast<const GaugeMismatchError*>(&e))
        return kExitConfig;
    return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Zernike operator: spectra, eigenfunctions, classical orbits, verification"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config_file, "flat key = value config file; flags override it");
    app.add_option("--alpha", f.alpha, "curvature parameter alpha");
    app.add_option("--beta", f.beta, "first-order coefficient beta");
    app.add_option("--hbar", f.hbar, "Planck constant (> 0)");
    app.add_option("--max-degree", f.max_degree, "maximal polynomial degree (<= 40)");
    app.add_option("--m", f.m, "restrict to angular sector m");
    app.add_option("--tol-eig", f.tol_eig, "eigenvalue tolerance");
    app.add_option("--tol-ode", f.tol_ode, "integrator tolerance");
    app.add_option("--tol-quad", f.tol_quad, "quadrature node-doubling tolerance");
    app.add_option("--seed", f.seed, "seed for randomized checks");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--tag", f.tag, "operator: zernike, higgs_pq, higgs_laplacian, free_particle");
    app.add_option("--norm", f.norm, "eigenfunction normalization: monic_top, rim, unit_norm");
    app.add_option("--variant", f.variant, "classical variant: higgs_real, zernike_complex, weyl");
    app.add_flag("--paired", f.paired, "evolve higgs_real and gauge-shifted zernike_complex side by side");
    app.add_option("--T", f.T, "integration time");
    app.add_option("--x0", f.x0, "initial position 'x1,x2'");
    app.add_option("--p0", f.p0, "initial momentum 'p1,p2'");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the assembled operator vs the exact spectrum");
    auto* eigenfunctions = app.add_subcommand("eigenfunctions", "polynomial eigenfunctions with residual norms");
    auto* evolve = app.add_subcommand("evolve", "integrate a classical trajectory to CSV");
    auto* verify = app.add_subcommand("verify", "run the verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        const RunConfig cfg = build_config(f);
        if (*spectrum) return cmd_spectrum(cfg);
        if (*eigenfunctions) return cmd_eigenfunctions(cfg);
        if (*evolve) return cmd_evolve(cfg);
        if (*verify) return cmd_verify(cfg);
    } catch (const Error& e) {
        return report_error(e, exit_code_for(e));
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "InternalError"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
        return 1;
    }
    return kExitConfig;
}
