// Command line front end: simulated A/B experiments, headless replay of
// recorded pointer traces, and steering difficulty tables.

#include "wem/kernels.hpp"
#include "wem/menu_io.hpp"
#include "wem/report.hpp"
#include "wem/simulator.hpp"
#include "wem/steering.hpp"
#include "wem/svg.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wing Expansion Menu engine"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a counterbalanced simulated A/B experiment");
    std::string factor = "alpha";
    std::string out_dir = "wem_out";
    std::string formula = "literal";
    wem::ExperimentOptions opt;
    opt.cursor.jitter_sigma = 3.0;
    double overshoot = -1.0;
    int threads = 1;
    sim->add_option("--factor", factor, "alpha (0 vs 1) or epsilon (1 vs 0)")
        ->check(CLI::IsMember({"alpha", "epsilon"}));
    sim->add_option("--depth", opt.depth, "Menu depth")->capture_default_str();
    sim->add_option("--branching", opt.branching, "Items per submenu")->capture_default_str();
    sim->add_option("--trials", opt.n_trials, "Paired trials (even)")->capture_default_str();
    sim->add_option("--tasks", opt.task_count, "Distinct target tasks")->capture_default_str();
    sim->add_option("--seed", opt.seed, "Experiment seed")->capture_default_str();
    sim->add_option("--alpha", opt.menu.alpha, "Alpha when epsilon is the factor")
        ->capture_default_str();
    sim->add_option("--epsilon", opt.menu.epsilon, "Epsilon when alpha is the factor")
        ->capture_default_str();
    sim->add_option("--tau", opt.menu.hover_delay_ms, "Hover delay in ms")->capture_default_str();
    sim->add_option("--jitter", opt.cursor.jitter_sigma, "Lateral cursor noise sigma (px)")
        ->capture_default_str();
    sim->add_option("--step-ms", opt.cursor.step_ms, "Simulation step (ms)")->capture_default_str();
    sim->add_option("--speed", opt.cursor.speed, "Maximum cursor speed (px/ms)")
        ->capture_default_str();
    sim->add_option("--overshoot", overshoot,
                    "Per-level overshoot probability (default: 0 for alpha, 0.3 for epsilon)");
    sim->add_option("--formula-mode", formula, "literal | single_alpha")
        ->check(CLI::IsMember({"literal", "single_alpha"}));
    sim->add_option("--threads", threads, "Worker threads (1 = serial, 0 = all)")
        ->capture_default_str();
    sim->add_option("--out", out_dir, "Output directory")->capture_default_str();

    // replay
    auto* rep = app.add_subcommand("replay", "Replay a recorded pointer trace through the engine");
    std::string menu_path;
    std::string input_path;
    std::string events_out;
    std::string svg_out;
    rep->add_option("--menu", menu_path, "Menu definition (JSON)")->required();
    rep->add_option("--input", input_path, "Pointer trace (JSON lines)")->required();
    rep->add_option("--out", events_out, "Event log output (default stdout)");
    rep->add_option("--svg", svg_out, "Render the final state to this SVG file");

    // difficulty
    auto* dif = app.add_subcommand("difficulty", "Steering index of difficulty per leaf target");
    std::string dif_menu;
    int dif_depth = 3;
    int dif_branching = 6;
    double eta_profile = 1.0;
    double dif_alpha = 1.0;
    double dif_epsilon = 0.0;
    dif->add_option("--menu", dif_menu, "Menu definition (otherwise a generated task menu)");
    dif->add_option("--depth", dif_depth)->capture_default_str();
    dif->add_option("--branching", dif_branching)->capture_default_str();
    dif->add_option("--alpha", dif_alpha)->capture_default_str();
    dif->add_option("--epsilon", dif_epsilon)->capture_default_str();
    dif->add_option("--eta-profile", eta_profile)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            opt.factor = wem::factor_from_string(factor);
            opt.menu.formula_mode = wem::formula_mode_from_string(formula);
            opt.menu = opt.menu.sanitized();
            opt.cursor.overshoot_probability =
                overshoot >= 0.0 ? overshoot : (opt.factor == wem::Factor::epsilon ? 0.3 : 0.0);
            const auto result = wem::ab_experiment(opt, threads);
            wem::write_experiment(result, out_dir);
            const auto& s = result.summary;
            std::cout << fmt::format(
                "{}: base {} mean {:.1f} ms (sd {:.1f}), test {} mean {:.1f} ms (sd {:.1f}), "
                "improvement {:.2f}%\n",
                factor, wem::condition_label(factor, s.base), s.base_stats.mean_ms,
                s.base_stats.stddev_ms, wem::condition_label(factor, s.test), s.test_stats.mean_ms,
                s.test_stats.stddev_ms, s.improvement_percent);
        } else if (rep->parsed()) {
            const auto def = wem::load_menu_definition(menu_path);
            wem::Menu menu = def.menu();
            const auto inputs = wem::parse_input_trace(read_file(input_path));
            const auto events = wem::replay(menu, inputs);
            write_or_print(events_out, wem::format_event_log(menu.tree(), events));
            if (!svg_out.empty()) {
                write_or_print(svg_out, wem::render_snapshot(menu));
            }
        } else if (dif->parsed()) {
            wem::MenuConfig cfg;
            wem::MenuTree tree;
            if (!dif_menu.empty()) {
                const auto def = wem::load_menu_definition(dif_menu);
                cfg = def.config;
                tree = def.tree();
            } else {
                tree = wem::generate_task_menu(dif_depth, dif_branching, cfg);
            }
            cfg.alpha = dif_alpha;
            cfg.epsilon = dif_epsilon;
            wem::MenuConfig flat = cfg;
            flat.alpha = 0.0;
            std::vector<wem::NodeIndex> leaves;
            for (wem::NodeIndex i = 0; i < tree.size(); ++i) {
                if (tree.node(i).is_leaf()) {
                    leaves.push_back(i);
                }
            }
            const auto wing = wem::kernels::difficulty_parallel(tree, cfg, leaves, eta_profile);
            const auto rect = wem::kernels::difficulty_parallel(tree, flat, leaves, eta_profile);
            std::cout << "target,depth,id_wem,id_rect\n";
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                const auto& n = tree.node(leaves[i]);
                std::cout << fmt::format("{},{},{:.6f},{:.6f}\n", n.id, n.depth, wing[i], rect[i]);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
