#include "cli.hpp"

#include "config.hpp"
#include "output.hpp"
#include "verify.hpp"

#include "optocool/errors.hpp"
#include "optocool/steady_state.hpp"
#include "optocool/sweeps.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace optocool::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw UsageError("invalid number '" + std::string(text) + "' in " + std::string(what));
    }
    return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> values;
    while (true) {
        const auto comma = text.find(',');
        values.push_back(parse_double(text.substr(0, comma), what));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return values;
}

complex parse_complex(std::string_view text) {
    const auto values = parse_list(text, "--target-a");
    if (values.size() != 2) throw UsageError("--target-a expects RE,IM");
    return {values[0], values[1]};
}

SweepAxis parse_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw UsageError("--axis expects name=v1,v2,...");
    const auto name = text.substr(0, eq);
    const auto parameter = parse_sweep_parameter(name);
    if (!parameter) throw UsageError("unknown sweep parameter '" + std::string(name) + "'");
    return {*parameter, parse_list(text.substr(eq + 1), "--axis")};
}

unsigned default_workers() {
    if (const char* env = std::getenv("OPTOCOOL_THREADS")) {
        unsigned n = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc{} && ptr == s.data() + s.size() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void write_output(const std::string& path, std::ostream& out,
                  const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    writer(file);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-time cooling of dispersively and dissipatively coupled optomechanics",
                 "optocool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path = "-";
    std::string target_a_text;
    std::string preset_name;
    std::string observable_name;
    std::vector<std::string> axis_texts;
    unsigned workers = default_workers();
    std::size_t resolution = 0;

    auto* simulate = app.add_subcommand("simulate", "Propagate one run and write a trajectory CSV");
    simulate->add_option("-c,--config", config_path, "Run configuration file")->required();
    simulate->add_option("-o,--output", output_path, "Output CSV ('-' for stdout)");

    auto* steady = app.add_subcommand("steady", "Constant-drive steady state and its decomposition");
    steady->add_option("-c,--config", config_path, "Run configuration file")->required();
    steady->add_option("--target-a", target_a_text, "Steady intracavity amplitude RE,IM")->required();
    steady->add_option("-o,--output", output_path, "Output JSON ('-' for stdout)");

    auto* sweep = app.add_subcommand("sweep", "Evaluate a 1-D or 2-D parameter grid");
    auto* preset_opt = sweep->add_option("--preset", preset_name, "Figure preset name");
    auto* config_opt = sweep->add_option("-c,--config", config_path, "Base run configuration");
    sweep->add_option("--axis", axis_texts, "Axis as name=v1,v2,... (repeat for 2-D)");
    sweep->add_option("--observable", observable_name,
                      "phonon_at_t_end | steady_total | steady_sigma_eq | steady_s_bac");
    sweep->add_option("--target-a", target_a_text, "Steady intracavity amplitude RE,IM");
    sweep->add_option("--resolution", resolution, "Points per range axis of a preset");
    sweep->add_option("-j,--jobs", workers, "Worker threads (default $OPTOCOOL_THREADS)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("-o,--output", output_path, "Output CSV ('-' for stdout)");
    preset_opt->excludes(config_opt);

    auto* verify = app.add_subcommand("verify", "Run the oracle and invariant checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out;
        std::ostringstream cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (*simulate) {
            const auto cfg = parse_config(read_file(config_path));
            const auto traj = propagate(cfg.params, cfg.drive, cfg.mf0, cfg.controls);
            write_output(output_path, out, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
        } else if (*steady) {
            const auto cfg = parse_config(read_file(config_path));
            const auto result = solve_steady_state(cfg.params, parse_complex(target_a_text));
            write_output(output_path, out,
                         [&](std::ostream& os) { os << steady_result_json(result).dump(2) << '\n'; });
        } else if (*sweep) {
            SweepSpec spec;
            if (!preset_name.empty()) {
                const auto preset = parse_figure_preset(preset_name);
                if (!preset) throw UsageError("unknown preset '" + preset_name + "'");
                spec = figure_preset(*preset, resolution);
                if (!axis_texts.empty()) throw UsageError("--axis cannot be combined with --preset");
            } else if (!config_path.empty()) {
                const auto cfg = parse_config(read_file(config_path));
                spec.base = {cfg.params, cfg.drive, cfg.mf0, cfg.controls, std::nullopt, false, {}};
                if (axis_texts.empty() || axis_texts.size() > 2) {
                    throw UsageError("sweep -c needs one or two --axis options");
                }
                for (const auto& text : axis_texts) spec.axes.push_back(parse_axis(text));
            } else {
                throw UsageError("sweep needs --preset or -c");
            }
            if (!observable_name.empty()) {
                const auto observable = parse_observable(observable_name);
                if (!observable) throw UsageError("unknown observable '" + observable_name + "'");
                spec.observable = *observable;
            }
            if (!target_a_text.empty()) spec.base.target_a = parse_complex(target_a_text);
            spec.validate();
            const auto grid = run_sweep(spec, workers);
            write_output(output_path, out, [&](std::ostream& os) { write_sweep_csv(os, grid); });
        } else if (*verify) {
            bool all = true;
            for (const auto& r : run_verification()) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                all = all && r.passed;
            }
            return all ? kExitSuccess : kExitNumerical;
        }
    } catch (const UsageError& e) {
        err << "error: UsageError: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.kind()) ? kExitNumerical : kExitUsage;
    }
    return kExitSuccess;
}

}  // namespace optocool::cli
