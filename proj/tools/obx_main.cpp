// obx: analyze linear DAE pencils, march the multi-derivative integrator,
// and run one-step order studies from netlists, JSON systems, or builtins.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "obx/coefficients.hpp"
#include "obx/dae.hpp"
#include "obx/errors.hpp"
#include "obx/format.hpp"
#include "obx/integrator.hpp"
#include "obx/json_io.hpp"
#include "obx/netlist.hpp"
#include "obx/order_lab.hpp"
#include "obx/pencil.hpp"
#include "obx/steady_state.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStudyFailed = 1;
constexpr int kExitError = 2;

struct InputSelection {
    std::string netlist_path;
    std::string json_path;
    std::string builtin_kind;
    std::uint64_t seed = 42;
};

void add_input_options(CLI::App* cmd, InputSelection& input) {
    auto* netlist = cmd->add_option("--netlist", input.netlist_path, "netlist file");
    auto* json = cmd->add_option("--json", input.json_path, "system JSON file");
    auto* builtin = cmd->add_option(
        "--builtin", input.builtin_kind,
        "builtin benchmark: ode|index1|index2|index3|algebraic1|algebraic2|algebraic3");
    cmd->add_option("--seed", input.seed, "seed for builtin conjugation (default 42)");
    netlist->excludes(json)->excludes(builtin);
    json->excludes(builtin);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw obx::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

obx::LinearDae load_input(const InputSelection& input) {
    const int given = int(!input.netlist_path.empty()) + int(!input.json_path.empty()) +
                      int(!input.builtin_kind.empty());
    if (given != 1)
        throw obx::Error("exactly one of --netlist, --json, --builtin is required");
    if (!input.netlist_path.empty())
        return obx::stamp(obx::parse_netlist(read_file(input.netlist_path)));
    if (!input.json_path.empty())
        return obx::dae_from_json(nlohmann::json::parse(read_file(input.json_path)));
    return obx::builtin_system(obx::builtin_kind_from_string(input.builtin_kind),
                               input.seed)
        .dae;
}

obx::PencilOptions pencil_options_from_env() {
    obx::PencilOptions options;
    if (const char* tol = std::getenv("OBX_RANK_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(tol, &end);
        if (end == tol || *end != '\0' || !(v > 0.0))
            throw obx::Error("OBX_RANK_TOL must be a positive number");
        options.rank_tol = v;
    }
    return options;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw obx::Error("cannot write '" + path + "'");
    out << content;
}

int cmd_analyze(const InputSelection& input, bool with_ac, const std::string& out_path) {
    const obx::LinearDae dae = load_input(input);
    const obx::PencilOptions options = pencil_options_from_env();

    if (!obx::is_regular(dae.C, dae.G)) {
        std::cerr << "error: pencil is singular\n";
        return kExitError;
    }
    const obx::WeierstrassDecomposition w = obx::weierstrass(dae.C, dae.G, options);

    const double scale = obx::linalg::frobenius_norm(dae.C) +
                         obx::linalg::frobenius_norm(dae.G);
    std::cout << "regular: yes\n"
              << "N: " << dae.dim() << "\n"
              << "r: " << w.r << "\n"
              << "s: " << w.s << "\n"
              << "index_k: " << w.index_k << "\n"
              << "lambda0: " << obx::format_double(w.lambda0) << "\n"
              << "reconstruction_residual: "
              << obx::format_double(w.reconstruction_residual) << "\n"
              << "residual_tolerance: " << obx::format_double(1e-10 * scale) << "\n";

    if (with_ac) {
        const obx::PhasorSolution phasor = obx::ac_solve(dae);
        std::cout << "ac: " << obx::phasor_to_json(dae, phasor).dump() << "\n";
    }
    if (!out_path.empty())
        write_text_file(out_path, obx::decomposition_to_json(w).dump(2) + "\n");
    return kExitOk;
}

int cmd_march(const InputSelection& input, int l, int m, double h, int steps,
              const std::string& out_path, bool derivatives) {
    if (steps < 1) throw obx::Error("--steps must be >= 1");
    if (!(h > 0.0)) throw obx::Error("--h must be > 0");
    const obx::LinearDae dae = load_input(input);
    const obx::ObreshkovScheme scheme = obx::make_scheme(l, m);

    const obx::PhasorSolution phasor = obx::ac_solve(dae);
    const obx::StepState initial =
        obx::initial_state_from_steady_state(dae, phasor, scheme, h);
    const std::vector<obx::StepState> trajectory =
        obx::march(dae, scheme, initial, h, steps);

    std::ostringstream csv;
    obx::write_trajectory_csv(csv, trajectory, derivatives);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    return kExitOk;
}

int cmd_order_study(const InputSelection& input, int l, int m,
                    const obx::StudyOptions& study_options,
                    const std::string& csv_path, const std::string& json_path) {
    const obx::LinearDae dae = load_input(input);
    const obx::ObreshkovScheme scheme = obx::make_scheme(l, m);
    const obx::PencilOptions pencil_options = pencil_options_from_env();

    const obx::OrderStudyReport report =
        obx::run_study(dae, scheme, study_options, pencil_options);

    std::ostringstream csv;
    obx::write_study_csv(csv, report);
    if (!csv_path.empty()) write_text_file(csv_path, csv.str());

    const std::string json_text = obx::study_to_json(report).dump(2) + "\n";
    if (!json_path.empty()) write_text_file(json_path, json_text);

    for (const obx::DerivativeFit& fit : report.fits) {
        std::cout << "i=" << fit.i << " predicted=" << fit.predicted;
        if (fit.floored)
            std::cout << " slope=n/a (error at roundoff floor)";
        else
            std::cout << " slope=" << obx::format_double(fit.slope);
        std::cout << " pass=" << (fit.pass ? "yes" : "no") << "\n";
    }
    std::cout << (report.all_pass ? "PASS" : "FAIL") << "\n";
    return report.all_pass ? kExitOk : kExitStudyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Obreshkov multi-derivative integrator lab for linear DAEs"};
    // long-only flags; frees -h for the march/study step-size option
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    InputSelection analyze_input, march_input, study_input;

    auto* analyze = app.add_subcommand("analyze", "pencil structure and AC solution");
    add_input_options(analyze, analyze_input);
    bool with_ac = false;
    std::string analyze_out;
    analyze->add_flag("--ac", with_ac, "also solve and print the AC phasor");
    analyze->add_option("--out", analyze_out, "write decomposition JSON here");

    auto* march_cmd = app.add_subcommand("march", "fixed-step transient run");
    add_input_options(march_cmd, march_input);
    int march_l = 1, march_m = 1, march_steps = 0;
    double march_h = 0.0;
    bool march_derivatives = false;
    std::string march_out;
    march_cmd->add_option("--l", march_l, "past-side derivative count")->required();
    march_cmd->add_option("--m", march_m, "current-side derivative count")->required();
    march_cmd->add_option("--h", march_h, "step size (s)")->required();
    march_cmd->add_option("--steps", march_steps, "number of steps")->required();
    march_cmd->add_option("--out", march_out, "trajectory CSV path (default stdout)");
    march_cmd->add_flag("--derivatives", march_derivatives,
                        "include scaled derivative columns");

    auto* study = app.add_subcommand("order-study", "one-step order-of-convergence study");
    add_input_options(study, study_input);
    int study_l = 1, study_m = 1;
    obx::StudyOptions study_options;
    std::string study_csv, study_json;
    study->add_option("--l", study_l, "past-side derivative count")->required();
    study->add_option("--m", study_m, "current-side derivative count")->required();
    study->add_option("--h-min", study_options.h_min, "smallest step (default 1e-3 * period)");
    study->add_option("--h-max", study_options.h_max, "largest step (default 1e-2 * period)");
    study->add_option("--points", study_options.points, "number of h samples (default 10)");
    study->add_option("--csv", study_csv, "write per-sample CSV here");
    study->add_option("--report", study_json, "write report JSON here");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmd_analyze(analyze_input, with_ac, analyze_out);
        if (march_cmd->parsed())
            return cmd_march(march_input, march_l, march_m, march_h, march_steps,
                             march_out, march_derivatives);
        return cmd_order_study(study_input, study_l, study_m, study_options, study_csv,
                               study_json);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
