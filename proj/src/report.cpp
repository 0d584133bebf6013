#include "wem/report.hpp"

#include "wem/menu_io.hpp"
#include "wem/svg.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace wem {

using ordered_json = nlohmann::ordered_json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

ordered_json condition_json(const Condition& c) {
    return ordered_json{{"alpha", c.alpha}, {"epsilon", c.epsilon}};
}

ordered_json stats_json(const ConditionStats& s) {
    return ordered_json{{"n", s.n},
                        {"successes", s.successes},
                        {"mean_ms", s.mean_ms},
                        {"stddev_ms", s.stddev_ms}};
}

} // namespace

std::string trials_csv(const ExperimentResult& result) {
    const std::string_view factor = to_string(result.options.factor);
    std::string out = trials_csv_header;
    out += '\n';
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const TrialLog& t = result.trials[i];
        out += fmt::format("{},{},{},{},{},{},{}\n", t.seed, t.task_label,
                           condition_label(factor, t.condition), t.duration_ms, t.path_exits,
                           t.reopened_submenus, t.success ? 1 : 0);
    }
    return out;
}

std::string summary_json(const ExperimentResult& result) {
    const ExperimentOptions& o = result.options;
    const ExperimentSummary& s = result.summary;
    ordered_json j;
    j["factor"] = std::string(to_string(s.factor));
    j["base"] = condition_json(s.base);
    j["test"] = condition_json(s.test);
    j["options"] = ordered_json{{"depth", o.depth},
                                {"branching", o.branching},
                                {"trials", o.n_trials},
                                {"tasks", o.task_count},
                                {"seed", o.seed},
                                {"hover_delay_tau", o.menu.hover_delay_ms},
                                {"item_width", o.menu.item_width},
                                {"item_height", o.menu.item_height},
                                {"formula_mode", std::string(to_string(o.menu.formula_mode))},
                                {"speed", o.cursor.speed},
                                {"jitter_sigma", o.cursor.jitter_sigma},
                                {"step_ms", o.cursor.step_ms},
                                {"steering_ms_per_unit", o.cursor.steering_ms_per_unit},
                                {"aim_eta", o.cursor.aim_eta},
                                {"overshoot_probability", o.cursor.overshoot_probability}};
    j["base_stats"] = stats_json(s.base_stats);
    j["test_stats"] = stats_json(s.test_stats);
    j["improvement_percent"] = s.improvement_percent;
    ordered_json tasks = ordered_json::array();
    for (const auto& t : s.per_task) {
        tasks.push_back(ordered_json{{"task", t.task},
                                     {"n", t.n},
                                     {"base_mean_ms", t.base_mean_ms},
                                     {"test_mean_ms", t.test_mean_ms}});
    }
    j["per_task"] = std::move(tasks);
    return j.dump(2) + "\n";
}

Menu snapshot_state(const TaskSpec& task, const MenuConfig& config, double eta) {
    Menu menu(*task.menu, config);
    const auto chain = task.menu->path_to(task.target);
    Millis t = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        menu.select(task.menu->node(chain[i]).base.center(), t);
    }
    if (chain.size() >= 2) {
        const Rect& parent = task.menu->node(chain[chain.size() - 2]).base;
        menu.update_cursor({parent.x + eta * parent.width, parent.center().y}, t);
    }
    return menu;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "summary.json", summary_json(result));
    write_file(dir / "trials.csv", trials_csv(result));
    if (result.jobs.empty()) {
        return;
    }
    const TaskSpec& task = result.jobs.front().task;
    MenuConfig base = result.options.menu;
    base.alpha = result.summary.base.alpha;
    base.epsilon = result.summary.base.epsilon;
    MenuConfig test = base;
    test.alpha = result.summary.test.alpha;
    test.epsilon = result.summary.test.epsilon;
    write_file(dir / "snapshot_base.svg", render_snapshot(snapshot_state(task, base)));
    write_file(dir / "snapshot_test.svg", render_snapshot(snapshot_state(task, test)));
}

} // namespace wem
