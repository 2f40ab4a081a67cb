// matcomp: masked matrix approximation and completion from the command line.
//
// Subcommands: approx, complete, corrupt, spectrum. Standard output carries
// machine-parsable key=value lines only; diagnostics go to standard error.
// Exit codes: 0 success, 1 runtime error, 2 non-convergence, 64 usage error.

#include <CLI11.hpp>

#include "matcomp/completion.hpp"
#include "matcomp/io.hpp"
#include "matcomp/norms.hpp"
#include "matcomp/projections.hpp"
#include "matcomp/solver.hpp"

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <utility>

namespace {

using namespace matcomp;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int usage_error(const std::string& msg) {
    std::cerr << "usage error: " << msg << '\n';
    return 64;
}

struct InputOpts {
    std::string input;
    std::string output;
    std::string mask;
    std::string format; // empty = auto-detect by magic number
    bool verbose = false;
};

void add_io_flags(CLI::App* sub, InputOpts& o) {
    sub->add_option("input", o.input, "Input matrix (CSV, or PGM image)")->required();
    sub->add_option("output", o.output, "Output path (same format as the input)")->required();
    sub->add_option("--mask", o.mask,
                    "CSV of observed `i,j` pairs; intersected with the input's own holes");
    sub->add_option("--format", o.format, "Force the input format instead of auto-detecting")
        ->check(CLI::IsMember({"csv", "pgm"}));
    sub->add_flag("--verbose", o.verbose, "Log iteration progress to standard error");
}

struct LoadedInput {
    Matrix matrix;
    ObservationSet omega;
    bool pgm = false;
};

ObservationSet intersect(const ObservationSet& a, const ObservationSet& b) {
    ObservationSet out(a.rows(), a.cols());
    for (const auto& [i, j] : a.indices())
        if (b.contains(i, j)) out.insert(i, j);
    return out;
}

LoadedInput load_input(const InputOpts& o) {
    const bool pgm = o.format.empty() ? looks_like_pgm(o.input) : o.format == "pgm";
    LoadedInput in{Matrix(), ObservationSet(1, 1), pgm};
    if (pgm) {
        in.matrix = read_pgm(o.input);
        in.omega = ObservationSet::full(in.matrix.rows(), in.matrix.cols());
    } else {
        MaskedMatrixFile f = read_matrix_csv(o.input);
        in.matrix = std::move(f.matrix);
        in.omega = std::move(f.omega);
    }
    if (!o.mask.empty()) {
        in.omega = intersect(read_mask_csv(o.mask, in.matrix.rows(), in.matrix.cols()), in.omega);
        in.matrix = apply_mask(in.matrix, in.omega);
    }
    return in;
}

void write_output(const std::string& path, const Matrix& x, bool pgm) {
    if (pgm) {
        write_pgm(path, x, /*clamp=*/true);
    } else {
        write_matrix_csv(path, x);
    }
}

// ---- approx ----------------------------------------------------------------

struct ApproxOpts {
    InputOpts io;
    std::string constraint;
    double lambda = 0.0;
    Index k = 0;
    double tol = -1.0;
    double rel_tol = 1e-10;
    int max_iters = 5000;
    std::string step = "fixed";
    double mu = 1.0;
    double mu0 = 1.0;
    double sigma = 0.1;
    int halvings = 30;
};

CLI::App* add_approx(CLI::App& app, ApproxOpts& o) {
    CLI::App* sub = app.add_subcommand(
        "approx", "Project-and-iterate approximation of the observed entries");
    add_io_flags(sub, o.io);
    sub->add_option("--constraint", o.constraint, "Feasible set for the approximant")
        ->required()
        ->check(CLI::IsMember({"frobenius", "spectral", "nuclear", "kyfan", "rank", "orthonormal"}));
    sub->add_option("--lambda", o.lambda, "Ball radius (frobenius/spectral/nuclear/kyfan)");
    sub->add_option("--k", o.k, "Order for kyfan (top-k sum) or rank");
    sub->add_option("--tol", o.tol,
                    "Absolute masked-error target (default: 1e-6 * max(1, ||P m||_F))");
    sub->add_option("--rel-tol", o.rel_tol, "Stagnation threshold on successive errors")
        ->capture_default_str();
    sub->add_option("--max-iters", o.max_iters, "Iteration budget")->capture_default_str();
    sub->add_option("--step", o.step, "Step-size rule")
        ->check(CLI::IsMember({"fixed", "armijo"}))
        ->capture_default_str();
    sub->add_option("--mu", o.mu, "Fixed step size")->capture_default_str();
    sub->add_option("--mu0", o.mu0, "Initial Armijo step size")->capture_default_str();
    sub->add_option("--sigma", o.sigma, "Armijo sufficient-decrease fraction")
        ->capture_default_str();
    sub->add_option("--halvings", o.halvings, "Armijo backtracking budget")->capture_default_str();
    return sub;
}

int run_approx(const ApproxOpts& o) {
    Constraint c = Constraint::orthonormal();
    try {
        if (o.constraint == "frobenius") {
            c = Constraint::frobenius_ball(o.lambda);
        } else if (o.constraint == "spectral") {
            c = Constraint::spectral_ball(o.lambda);
        } else if (o.constraint == "nuclear") {
            c = Constraint::nuclear_ball(o.lambda);
        } else if (o.constraint == "kyfan") {
            c = Constraint::ky_fan_ball(o.k, o.lambda);
        } else if (o.constraint == "rank") {
            c = Constraint::rank_at_most(o.k);
        }
    } catch (const std::invalid_argument& e) {
        return usage_error(std::string("--constraint ") + o.constraint + ": " + e.what());
    }

    SolverConfig cfg;
    cfg.step_mode = o.step == "armijo" ? SolverConfig::StepMode::Armijo
                                       : SolverConfig::StepMode::Fixed;
    cfg.mu = o.mu;
    cfg.armijo_mu0 = o.mu0;
    cfg.armijo_sigma = o.sigma;
    cfg.max_halvings = o.halvings;
    cfg.tol = o.tol;
    cfg.rel_tol = o.rel_tol;
    cfg.max_iters = o.max_iters;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    }

    const LoadedInput in = load_input(o.io);
    const ApproximationSolution sol = solve_approximation(in.matrix, in.omega, c, cfg);
    if (o.io.verbose) {
        for (std::size_t n = 0; n < sol.trace.errors.size(); ++n) {
            std::cerr << "iter=" << n << " error=" << fmt(sol.trace.errors[n]);
            if (n >= 1 && n - 1 < sol.trace.steps.size())
                std::cerr << " step=" << fmt(sol.trace.steps[n - 1]);
            std::cerr << '\n';
        }
    }
    write_output(o.io.output, sol.x, in.pgm);
    std::cout << "error=" << fmt(sol.trace.final_error()) << '\n';
    std::cout << "iterations=" << sol.trace.iterations() << '\n';
    std::cout << "measure=" << fmt(constraint_measure(sol.x, c)) << '\n';
    return sol.trace.converged ? 0 : 2;
}

// ---- complete --------------------------------------------------------------

struct CompleteOpts {
    InputOpts io;
    std::string norm = "nuclear";
    Index k = 0;
    double tol = 1e-6;
    double lambda_tol = 1e-6;
    int max_bisections = 60;
    int max_iters = 5000;
};

CLI::App* add_complete(CLI::App& app, CompleteOpts& o) {
    CLI::App* sub = app.add_subcommand(
        "complete", "Fill missing entries by bisecting the norm-ball radius");
    add_io_flags(sub, o.io);
    sub->add_option("--norm", o.norm, "Norm whose ball is shrunk")
        ->check(CLI::IsMember({"nuclear", "spectral", "kyfan"}))
        ->capture_default_str();
    sub->add_option("--k", o.k, "Order for kyfan");
    sub->add_option("--tol", o.tol, "Admissible masked error")->capture_default_str();
    sub->add_option("--lambda-tol", o.lambda_tol, "Radius resolution of the bisection")
        ->capture_default_str();
    sub->add_option("--max-bisections", o.max_bisections, "Bisection budget")
        ->capture_default_str();
    sub->add_option("--max-iters", o.max_iters, "Inner solver iteration budget")
        ->capture_default_str();
    return sub;
}

int run_complete(const CompleteOpts& o) {
    NormKind kind = NormKind::nuclear();
    try {
        if (o.norm == "spectral") {
            kind = NormKind::spectral();
        } else if (o.norm == "kyfan") {
            kind = NormKind::ky_fan(o.k);
        }
    } catch (const std::invalid_argument& e) {
        return usage_error(std::string("--norm kyfan: ") + e.what());
    }

    CompletionConfig cfg;
    cfg.norm = kind;
    cfg.tol = o.tol;
    cfg.lambda_tol = o.lambda_tol;
    cfg.max_bisections = o.max_bisections;
    cfg.solver.max_iters = o.max_iters;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    }

    const LoadedInput in = load_input(o.io);
    if (in.omega.is_full()) {
        std::cerr << "note: input has no missing entries; returning it unchanged\n";
        write_output(o.io.output, in.matrix, in.pgm);
        std::cout << "lambda_star=" << fmt(norm(in.matrix, kind)) << '\n';
        std::cout << "error=" << fmt(0.0) << '\n';
        std::cout << "bisections=0\n";
        return 0;
    }

    const CompletionResult res = complete(in.matrix, in.omega, cfg);
    if (o.io.verbose) {
        for (std::size_t n = 0; n < res.bisection_history.size(); ++n) {
            std::cerr << "bisection=" << n + 1 << " lambda=" << fmt(res.bisection_history[n].first)
                      << " error=" << fmt(res.bisection_history[n].second) << '\n';
        }
    }
    write_output(o.io.output, res.x, in.pgm);
    std::cout << "lambda_star=" << fmt(res.lambda_star) << '\n';
    std::cout << "error=" << fmt(res.final_error) << '\n';
    std::cout << "bisections=" << res.bisection_history.size() << '\n';
    return res.converged ? 0 : 2;
}

// ---- corrupt ---------------------------------------------------------------

struct CorruptOpts {
    InputOpts io;
    Index square = 0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

CLI::App* add_corrupt(CLI::App& app, CorruptOpts& o) {
    CLI::App* sub = app.add_subcommand(
        "corrupt", "Remove random square blocks until a target fraction is unobserved");
    add_io_flags(sub, o.io);
    sub->add_option("--square", o.square, "Block side length")->required();
    sub->add_option("--fraction", o.fraction, "Target unobserved fraction, in (0, 1)")->required();
    sub->add_option("--seed", o.seed, "Generator seed (64-bit)")->required();
    return sub;
}

int run_corrupt(const CorruptOpts& o) {
    if (o.square < 1) return usage_error("--square must be >= 1");
    if (!(o.fraction > 0.0 && o.fraction < 1.0)) {
        return usage_error("--fraction must be in (0, 1)");
    }
    const LoadedInput in = load_input(o.io);
    const ObservationSet kept =
        intersect(corrupt_squares(in.matrix, o.square, o.fraction, o.seed), in.omega);
    if (in.pgm) {
        // Holes cannot be encoded in PGM; zero-fill them and write a sidecar mask.
        write_pgm(o.io.output, apply_mask(in.matrix, kept), /*clamp=*/true);
        write_mask_csv(o.io.output + ".mask.csv", kept);
    } else {
        write_masked_matrix_csv(o.io.output, in.matrix, kept);
    }
    std::cout << "fraction=" << fmt(1.0 - kept.observed_fraction()) << '\n';
    return 0;
}

// ---- spectrum --------------------------------------------------------------

CLI::App* add_spectrum(CLI::App& app, InputOpts& o) {
    CLI::App* sub = app.add_subcommand(
        "spectrum", "Write the singular values (holes read as zero) as index,value CSV");
    add_io_flags(sub, o);
    return sub;
}

int run_spectrum(const InputOpts& o) {
    const LoadedInput in = load_input(o);
    write_spectrum_csv(o.output, apply_mask(in.matrix, in.omega));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Masked matrix approximation and completion"};
    app.require_subcommand(1);

    ApproxOpts approx_opts;
    CompleteOpts complete_opts;
    CorruptOpts corrupt_opts;
    InputOpts spectrum_opts;
    CLI::App* approx = add_approx(app, approx_opts);
    CLI::App* complete_cmd = add_complete(app, complete_opts);
    CLI::App* corrupt = add_corrupt(app, corrupt_opts);
    CLI::App* spectrum = add_spectrum(app, spectrum_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the parse failure
        return code == 0 ? 0 : 64;
    }

    try {
        if (approx->parsed()) return run_approx(approx_opts);
        if (complete_cmd->parsed()) return run_complete(complete_opts);
        if (corrupt->parsed()) return run_corrupt(corrupt_opts);
        if (spectrum->parsed()) return run_spectrum(spectrum_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
