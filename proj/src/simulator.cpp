#include "wem/simulator.hpp"

#include "wem/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wem {

namespace {

ItemSpec uniform_subtree(int remaining_depth, int branching) {
    ItemSpec item;
    if (remaining_depth > 0) {
        item.children.reserve(static_cast<std::size_t>(branching));
        for (int k = 0; k < branching; ++k) {
            item.children.push_back(uniform_subtree(remaining_depth - 1, branching));
        }
    }
    return item;
}

enum class Phase { traverse, overshoot, back, dwell, correct, cross, descend };

// Consecutive off-target steps tolerated while waiting at an item before
// the simulated user starts correcting.
constexpr int dwell_patience_steps = 3;

} // namespace

MenuTree generate_task_menu(int depth, int branching, const MenuConfig& config) {
    if (depth < 1 || depth > max_task_depth) {
        throw std::invalid_argument(fmt::format("depth must be in 1..{}", max_task_depth));
    }
    if (branching < 2 || branching > max_task_branching) {
        throw std::invalid_argument(fmt::format("branching must be in 2..{}", max_task_branching));
    }
    std::size_t nodes = 0;
    std::size_t level = 1;
    for (int d = 0; d < depth; ++d) {
        level *= static_cast<std::size_t>(branching);
        nodes += level;
    }
    if (nodes > max_task_nodes) {
        throw std::invalid_argument(
            fmt::format("menu of {} nodes exceeds the limit of {}", nodes, max_task_nodes));
    }
    const ItemSpec root = uniform_subtree(depth, branching);
    return MenuTree::build(root.children, config.item_width, config.item_height);
}

std::vector<TaskSpec> generate_tasks(std::shared_ptr<const MenuTree> menu, int count,
                                     std::uint64_t seed) {
    if (!menu || menu->size() == 0) {
        throw std::invalid_argument("task menu is empty");
    }
    if (count < 1) {
        throw std::invalid_argument("task count must be >= 1");
    }
    int deepest = 0;
    for (const auto& n : menu->nodes()) {
        deepest = std::max(deepest, n.depth);
    }
    std::vector<NodeIndex> leaves;
    for (NodeIndex i = 0; i < menu->size(); ++i) {
        if (menu->node(i).depth == deepest && menu->node(i).is_leaf()) {
            leaves.push_back(i);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
    std::vector<TaskSpec> tasks;
    tasks.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const NodeIndex target = leaves[pick(rng)];
        tasks.push_back({menu, target, menu->node(target).label});
    }
    return tasks;
}

std::string condition_label(std::string_view factor, const Condition& c) {
    return fmt::format("{}={}", factor, factor == "epsilon" ? c.epsilon : c.alpha);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialLog run_trial(const TaskSpec& task, const MenuConfig& config, const CursorModel& cursor) {
    if (!task.menu) {
        throw std::invalid_argument("task has no menu");
    }
    if (!(cursor.speed > 0.0) || !(cursor.step_ms > 0.0) || !(cursor.steering_ms_per_unit > 0.0)) {
        throw std::invalid_argument("cursor speed, step and steering constant must be > 0");
    }
    if (cursor.jitter_sigma < 0.0 || cursor.max_steps < 1) {
        throw std::invalid_argument("invalid cursor model");
    }

    Menu menu(*task.menu, config);
    const MenuTree& tree = menu.tree();
    if (task.target >= tree.size() || !tree.node(task.target).is_leaf()) {
        throw std::invalid_argument("task target must be a leaf of the task menu");
    }
    const std::vector<NodeIndex> chain = tree.path_to(task.target);
    const std::size_t last_level = chain.size() - 1;

    TrialLog log;
    log.task_label = task.target_label;
    log.seed = cursor.seed;
    log.condition = {menu.config().alpha, menu.config().epsilon};

    // Separate streams keep per-level decisions identical across conditions
    // even when the two runs take different numbers of steps.
    std::mt19937_64 noise_rng(mix_seed(cursor.seed, 0));
    std::mt19937_64 plan_rng(mix_seed(cursor.seed, 1));
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<bool> overshoot(chain.size());
    for (std::size_t l = 0; l < chain.size(); ++l) {
        overshoot[l] = coin(plan_rng) < cursor.overshoot_probability &&
                       tree.node(chain[l]).sibling_index > 0;
    }

    auto node_at = [&](std::size_t level) -> const MenuNode& { return tree.node(chain[level]); };
    auto at_eta = [&](std::size_t level, double eta, double dy = 0.0) {
        const Rect& b = node_at(level).base;
        return Point{b.x + eta * b.width, b.center().y + dy};
    };
    auto waypoint = [&](std::size_t level, Phase phase) -> Point {
        const Rect& b = node_at(level).base;
        switch (phase) {
        case Phase::traverse:
        case Phase::dwell:
            return at_eta(level, cursor.aim_eta);
        case Phase::overshoot:
            return at_eta(level, cursor.overshoot_eta, -b.height);
        case Phase::back:
            return at_eta(level, cursor.overshoot_eta);
        case Phase::correct:
            return at_eta(level, cursor.entry_eta);
        case Phase::cross:
            return {b.x + b.width * (1.0 + cursor.entry_eta), b.center().y};
        case Phase::descend:
            return {b.x + b.width * (1.0 + cursor.entry_eta), node_at(level + 1).base.center().y};
        }
        return {};
    };
    auto on_track = [&](std::size_t level, Phase phase) {
        const auto h = menu.hovered();
        if (!h) {
            return false;
        }
        const NodeIndex a = chain[level];
        const auto& parent = tree.node(*h).parent;
        switch (phase) {
        case Phase::cross:
            return *h == a || parent == a;
        case Phase::descend:
            return parent == a;
        default:
            return *h == a;
        }
    };

    std::vector<bool> ever_opened(tree.size(), false);
    Millis t = 0.0;
    auto absorb = [&](const std::vector<MenuEvent>& events) {
        for (const auto& e : events) {
            if (e.kind == EventKind::opened) {
                if (ever_opened[e.node]) {
                    ++log.reopened_submenus;
                }
                ever_opened[e.node] = true;
            }
        }
        log.events.insert(log.events.end(), events.begin(), events.end());
    };

    Point nominal = at_eta(0, cursor.entry_eta);
    Point heading{1.0, 0.0};
    log.trace.push_back({t, nominal});
    absorb(menu.update_cursor(nominal, t));

    std::size_t level = 0;
    Phase phase = overshoot[0] ? Phase::overshoot : Phase::traverse;
    bool was_on_track = on_track(level, phase);
    int off_steps = 0;

    for (int step = 1; step <= cursor.max_steps; ++step) {
        t = static_cast<double>(step) * cursor.step_ms;

        // steering-limited speed from the tunnel the cursor is in
        const MenuNode& current = node_at(level);
        double tunnel = current.base.height;
        if (phase == Phase::descend) {
            tunnel = current.base.width;
        } else if (menu.hovered() == chain[level]) {
            tunnel = vertical_extent_at(menu.state(chain[level]).outline,
                                        std::clamp(nominal.x - current.base.x, 0.0,
                                                   current.base.width));
        }
        const double reach =
            std::min(cursor.speed, tunnel / cursor.steering_ms_per_unit) * cursor.step_ms;

        const Point goal = waypoint(level, phase);
        const Point d = goal - nominal;
        const double dist = std::hypot(d.x, d.y);
        bool arrived = false;
        if (dist <= reach) {
            nominal = goal;
            arrived = true;
        } else {
            heading = (1.0 / dist) * d;
            nominal = nominal + (reach / dist) * d;
        }
        if (dist > 0.0 && arrived) {
            heading = (1.0 / dist) * d;
        }

        Point pos = nominal;
        const double n = noise(noise_rng);
        if (cursor.jitter_sigma > 0.0) {
            pos = pos + (cursor.jitter_sigma * n) * Point{-heading.y, heading.x};
        }
        log.trace.push_back({t, pos});
        absorb(menu.update_cursor(pos, t));

        const bool ok = on_track(level, phase);
        if (was_on_track && !ok) {
            ++log.path_exits;
        }
        was_on_track = ok;

        // every ancestor must still be open, and the current item too once
        // the cursor heads into its submenu
        const std::size_t required =
            level + ((phase == Phase::cross || phase == Phase::descend) ? 1 : 0);
        std::optional<std::size_t> lost;
        for (std::size_t j = 0; j < required; ++j) {
            if (!menu.state(chain[j]).open) {
                lost = j;
                break;
            }
        }
        if (lost) {
            level = *lost;
            phase = Phase::traverse;
            was_on_track = on_track(level, phase);
            continue;
        }

        const bool on_item = menu.hovered() == chain[level];
        switch (phase) {
        case Phase::traverse:
            if (arrived) {
                phase = Phase::dwell;
                off_steps = 0;
            }
            break;
        case Phase::overshoot:
            if (arrived) {
                phase = Phase::back;
            }
            break;
        case Phase::back:
            if (arrived) {
                phase = on_item ? Phase::traverse : Phase::correct;
            }
            break;
        case Phase::correct:
            if (on_item || arrived) {
                phase = Phase::traverse;
            }
            break;
        case Phase::dwell:
            if (!on_item) {
                if (++off_steps >= dwell_patience_steps) {
                    phase = Phase::correct;
                }
                break;
            }
            off_steps = 0;
            if (level == last_level) {
                const auto events = menu.select(pos, t);
                absorb(events);
                const bool hit = std::any_of(events.begin(), events.end(), [&](const MenuEvent& e) {
                    return e.kind == EventKind::selected && e.node == task.target;
                });
                if (hit) {
                    log.success = true;
                    log.duration_ms = t;
                    return log;
                }
                level = 0;
                phase = Phase::traverse;
            } else if (menu.state(chain[level]).open) {
                phase = Phase::cross;
            }
            break;
        case Phase::cross:
            if (arrived) {
                phase = Phase::descend;
            }
            break;
        case Phase::descend:
            if (arrived) {
                ++level;
                phase = overshoot[level] ? Phase::overshoot : Phase::traverse;
            }
            break;
        }
        was_on_track = on_track(level, phase);
    }

    log.duration_ms = t;
    log.success = false;
    return log;
}

std::string_view to_string(Factor f) { return f == Factor::alpha ? "alpha" : "epsilon"; }

Factor factor_from_string(std::string_view s) {
    if (s == "alpha") {
        return Factor::alpha;
    }
    if (s == "epsilon") {
        return Factor::epsilon;
    }
    throw std::invalid_argument(fmt::format("invalid factor '{}' (expected alpha|epsilon)", s));
}

Condition base_condition(const ExperimentOptions& o) {
    const MenuConfig c = o.menu.sanitized();
    return o.factor == Factor::alpha ? Condition{0.0, c.epsilon} : Condition{c.alpha, 1.0};
}

Condition test_condition(const ExperimentOptions& o) {
    const MenuConfig c = o.menu.sanitized();
    return o.factor == Factor::alpha ? Condition{1.0, c.epsilon} : Condition{c.alpha, 0.0};
}

std::vector<TrialJob> plan_experiment(const ExperimentOptions& o) {
    if (o.n_trials <= 0 || o.n_trials % 2 != 0) {
        throw std::invalid_argument("n_trials must be positive and even");
    }
    if (o.task_count < 1) {
        throw std::invalid_argument("task_count must be >= 1");
    }
    auto tree = std::make_shared<const MenuTree>(generate_task_menu(o.depth, o.branching, o.menu));
    const auto tasks = generate_tasks(tree, o.task_count, mix_seed(o.seed, 0x7a5c));

    auto config_for = [&](const Condition& c) {
        MenuConfig m = o.menu;
        m.alpha = c.alpha;
        m.epsilon = c.epsilon;
        return m;
    };
    const MenuConfig base = config_for(base_condition(o));
    const MenuConfig test = config_for(test_condition(o));

    std::vector<TrialJob> jobs;
    jobs.reserve(static_cast<std::size_t>(o.n_trials) * 2);
    for (int j = 0; j < o.n_trials; ++j) {
        CursorModel cursor = o.cursor;
        cursor.seed = mix_seed(o.seed, static_cast<std::uint64_t>(j) + 1);
        const TaskSpec& task = tasks[static_cast<std::size_t>(j % o.task_count)];
        const TrialJob base_job{task, base, cursor, false, j};
        const TrialJob test_job{task, test, cursor, true, j};
        if (j % 2 == 0) {
            jobs.push_back(test_job);
            jobs.push_back(base_job);
        } else {
            jobs.push_back(base_job);
            jobs.push_back(test_job);
        }
    }
    return jobs;
}

ExperimentSummary summarize(const ExperimentOptions& o, std::span<const TrialJob> jobs,
                            std::span<const TrialLog> trials) {
    if (jobs.size() != trials.size()) {
        throw std::invalid_argument("jobs and trials differ in length");
    }
    ExperimentSummary s;
    s.factor = o.factor;
    s.base = base_condition(o);
    s.test = test_condition(o);

    const auto count = static_cast<std::size_t>(o.task_count);
    s.per_task.resize(count);
    std::vector<double> base_sum(count, 0.0);
    std::vector<double> test_sum(count, 0.0);
    std::vector<double> base_all;
    std::vector<double> test_all;

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const std::size_t k = static_cast<std::size_t>(jobs[i].pair) % count;
        s.per_task[k].task = jobs[i].task.target_label;
        const double d = trials[i].duration_ms;
        if (jobs[i].is_test) {
            test_all.push_back(d);
            test_sum[k] += d;
            ++s.per_task[k].n;
            s.test_stats.successes += trials[i].success ? 1 : 0;
        } else {
            base_all.push_back(d);
            base_sum[k] += d;
            s.base_stats.successes += trials[i].success ? 1 : 0;
        }
    }
    for (std::size_t k = 0; k < count; ++k) {
        const auto n = static_cast<double>(s.per_task[k].n);
        if (n > 0) {
            s.per_task[k].base_mean_ms = base_sum[k] / n;
            s.per_task[k].test_mean_ms = test_sum[k] / n;
        }
    }

    auto stats = [](const std::vector<double>& v, ConditionStats& out) {
        out.n = v.size();
        if (v.empty()) {
            return;
        }
        double sum = 0.0;
        for (double x : v) {
            sum += x;
        }
        out.mean_ms = sum / static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) {
                ss += (x - out.mean_ms) * (x - out.mean_ms);
            }
            out.stddev_ms = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
    };
    stats(base_all, s.base_stats);
    stats(test_all, s.test_stats);
    if (s.base_stats.mean_ms > 0.0) {
        s.improvement_percent =
            (s.base_stats.mean_ms - s.test_stats.mean_ms) / s.base_stats.mean_ms * 100.0;
    }
    return s;
}

ExperimentResult ab_experiment(const ExperimentOptions& options, int threads) {
    ExperimentResult r;
    r.options = options;
    r.jobs = plan_experiment(options);
    r.trials = threads == 1 ? kernels::run_trials_serial(r.jobs)
                            : kernels::run_trials_parallel(r.jobs, threads);
    r.summary = summarize(options, r.jobs, r.trials);
    return r;
}

} // namespace wem
