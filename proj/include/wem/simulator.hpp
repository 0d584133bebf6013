#pragma once

#include "wem/menu.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wem {

inline constexpr int max_task_depth = 6;
inline constexpr int max_task_branching = 12;
inline constexpr std::size_t max_task_nodes = 200000;

/// Uniform tree of `depth` levels with `branching` items per submenu;
/// labels and ids are 1-based index paths ("3.5.1.6"). Throws
/// std::invalid_argument outside depth 1..6, branching 2..12 or more than
/// 200000 nodes.
MenuTree generate_task_menu(int depth, int branching, const MenuConfig& config = {});

struct TaskSpec {
    std::shared_ptr<const MenuTree> menu;
    NodeIndex target = 0;
    std::string target_label;
};

/// `count` tasks targeting leaves drawn uniformly (with replacement) from
/// the deepest level. Deterministic for a seed.
std::vector<TaskSpec> generate_tasks(std::shared_ptr<const MenuTree> menu, int count,
                                     std::uint64_t seed);

/// Synthetic pointer. Movement speed follows the steering law: the cursor
/// advances at min(speed, W / steering_ms_per_unit) where W is the width of
/// the tunnel it is currently in. Gaussian noise is applied perpendicular
/// to the heading on every step.
struct CursorModel {
    double speed = 1.0;                 // px/ms, upper bound
    double jitter_sigma = 0.0;          // px
    Millis step_ms = 10.0;
    std::uint64_t seed = 0;
    double steering_ms_per_unit = 100.0;
    double aim_eta = 0.8;               // where each item is ridden to
    double entry_eta = 0.1;             // where submenu columns are entered
    double overshoot_probability = 0.0; // per level: first drift into the item above
    double overshoot_eta = 0.6;
    int max_steps = 5000;
};

struct Condition {
    double alpha = 1.0;
    double epsilon = 0.0;

    friend bool operator==(const Condition&, const Condition&) = default;
};

std::string condition_label(std::string_view factor, const Condition& c);

struct TracePoint {
    Millis t_ms;
    Point position;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct TrialLog {
    std::string task_label;
    std::uint64_t seed = 0;
    Condition condition;
    Millis duration_ms = 0.0;
    int path_exits = 0;
    int reopened_submenus = 0;
    bool success = false;
    std::vector<TracePoint> trace;
    std::vector<MenuEvent> events;

    friend bool operator==(const TrialLog&, const TrialLog&) = default;
};

/// One selection task under `config` (alpha and epsilon taken from it).
/// Simulated time advances by `cursor.step_ms` per step; the trial aborts
/// with success = false after `cursor.max_steps` steps.
TrialLog run_trial(const TaskSpec& task, const MenuConfig& config, const CursorModel& cursor);

enum class Factor { alpha, epsilon };

std::string_view to_string(Factor f);
Factor factor_from_string(std::string_view s);

struct ExperimentOptions {
    Factor factor = Factor::alpha;
    int depth = 3;
    int branching = 6;
    int n_trials = 400;   // paired trials, must be even
    int task_count = 16;
    std::uint64_t seed = 1;
    MenuConfig menu;      // alpha/epsilon of the factor not under test are kept
    CursorModel cursor;   // seed is overridden per pair
};

/// Base and test conditions: alpha 0 vs 1, or epsilon 1 (straight) vs 0.
Condition base_condition(const ExperimentOptions& o);
Condition test_condition(const ExperimentOptions& o);

struct ConditionStats {
    std::size_t n = 0;
    std::size_t successes = 0;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
};

struct TaskStats {
    std::string task;
    std::size_t n = 0; // pairs
    double base_mean_ms = 0.0;
    double test_mean_ms = 0.0;
};

struct ExperimentSummary {
    Factor factor = Factor::alpha;
    Condition base;
    Condition test;
    ConditionStats base_stats;
    ConditionStats test_stats;
    double improvement_percent = 0.0; // (base - test) / base * 100
    std::vector<TaskStats> per_task;
};

/// Work item for the trial kernels.
struct TrialJob {
    TaskSpec task;
    MenuConfig config;
    CursorModel cursor;
    bool is_test = false;
    int pair = 0;
};

struct ExperimentResult {
    ExperimentOptions options;
    ExperimentSummary summary;
    std::vector<TrialJob> jobs;  // run order
    std::vector<TrialLog> trials; // parallel to jobs
};

/// Counterbalanced paired design: pair j uses task j mod task_count and one
/// seed for both conditions; even pairs (group A) run the test condition
/// first, odd pairs (group B) the base condition first.
std::vector<TrialJob> plan_experiment(const ExperimentOptions& options);

ExperimentSummary summarize(const ExperimentOptions& options, std::span<const TrialJob> jobs,
                            std::span<const TrialLog> trials);

/// threads == 1 runs the serial kernel; otherwise the OpenMP kernel with
/// `threads` workers (0 = runtime default). Output does not depend on it.
ExperimentResult ab_experiment(const ExperimentOptions& options, int threads = 1);

/// Stable 64-bit mix used to derive per-pair seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

} // namespace wem
