#include "oracles.hpp"

#include "wem/kernels.hpp"
#include "wem/steering.hpp"

#include <doctest.h>

using namespace wem;

TEST_CASE("parallel kernels match the serial references") {
    ExperimentOptions o;
    o.n_trials = 16;
    o.cursor.jitter_sigma = 3.0;
    const auto jobs = plan_experiment(o);
    const auto trials = kernels::run_trials_serial(jobs);

    const ItemOutline outline = compute_item_outline({100, 20, 0.8, 1, 0.4, 9});
    oracle::Rng rng(3);
    std::vector<Point> pts(5000);
    for (auto& p : pts) {
        p = {rng.uniform(-5, 105), rng.uniform(-30, 200)};
    }
    const auto inside = kernels::contains_batch_serial(outline, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(static_cast<bool>(inside[i]) == contains_point(outline, pts[i]));
    }

    const std::vector<double> grid{0, 0.25, 0.5, 0.75, 1};
    const ShapeParams base{100, 20, 0, 0, 0, 10};
    const auto areas = kernels::area_lattice_serial(base, grid, grid, grid, FormulaMode::literal);
    REQUIRE(areas.size() == 125);
    ShapeParams probe = base;
    probe.eta = 0.5;
    probe.alpha = 0.75;
    probe.epsilon = 0.25;
    CHECK(areas[(2 * 5 + 3) * 5 + 1] == outline_area(compute_item_outline(probe)));

    const MenuTree tree = generate_task_menu(3, 4);
    std::vector<NodeIndex> targets(tree.size());
    for (NodeIndex i = 0; i < tree.size(); ++i) {
        targets[i] = i;
    }
    MenuConfig cfg;
    const auto ids = kernels::difficulty_serial(tree, cfg, targets);
    CHECK(ids[5] == index_of_difficulty(tunnel_for_target(tree, cfg, NodeIndex{5})));

    for (int threads : {1, 2, 4}) {
        CAPTURE(threads);
        CHECK(kernels::run_trials_parallel(jobs, threads) == trials);
        CHECK(kernels::contains_batch_parallel(outline, pts, default_flatten_tolerance, threads) == inside);
        CHECK(kernels::area_lattice_parallel(base, grid, grid, grid, FormulaMode::literal, threads) == areas);
        CHECK(kernels::difficulty_parallel(tree, cfg, targets, 1.0, 1.0, threads) == ids);
    }
}

TEST_CASE("errors inside parallel regions reach the caller") {
    std::vector<TrialJob> jobs = plan_experiment(ExperimentOptions{.n_trials = 4});
    jobs[3].cursor.speed = -1;
    CHECK_THROWS_AS(kernels::run_trials_serial(jobs), std::invalid_argument);
    CHECK_THROWS_AS(kernels::run_trials_parallel(jobs, 2), std::invalid_argument);
    const std::vector<Point> pts{{1, 1}};
    CHECK_THROWS_AS(kernels::contains_batch_parallel(compute_item_outline({100, 20, 0, 0, 0, 0}), pts, -1.0, 2),
                    std::invalid_argument);
}
