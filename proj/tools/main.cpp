#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "codedconv/analytics.hpp"
#include "codedconv/engine.hpp"
#include "codedconv/planner.hpp"
#include "codedconv/straggler_sim.hpp"
#include "config.hpp"

namespace {

using namespace codedconv;
using cli::ExperimentConfig;
using nlohmann::ordered_json;

ExecutionPlan build_plan(const ProblemSpec& spec, const Strategy& strategy) {
    switch (strategy.kind) {
        case StrategyKind::uncoded: return plan_uncoded(spec);
        case StrategyKind::replication: return plan_replication(spec, strategy.r);
        case StrategyKind::coded: return plan_coded(spec, strategy.s);
    }
    throw std::invalid_argument("unknown strategy kind");
}

std::ostream& open_out(std::ofstream& file, const std::string& out_path) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file " + out_path);
    return file;
}

std::string fmt(double v, const char* spec_fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec_fmt, v);
    return buf;
}

int cmd_plan(const ExperimentConfig& cfg, const std::string& out_path) {
    ordered_json report;
    report["n1"] = cfg.spec.n1;
    report["n2"] = cfg.spec.n2;
    report["p"] = cfg.spec.p;
    report["strategies"] = ordered_json::array();
    for (const auto& strategy : cfg.strategies) {
        const ExecutionPlan plan = build_plan(cfg.spec, strategy);
        const std::string label = cli::strategy_label(strategy);
        std::cout << label << ": s=" << plan.piece_len << ", groups="
                  << plan.groups.size() << " x " << plan.groups.front().members.size()
                  << " tasks (quorum " << plan.groups.front().quorum
                  << "), worst_k=" << plan.worst_k;
        ordered_json sj;
        sj["strategy"] = label;
        sj["kind"] = to_string(plan.strategy.kind);
        sj["s"] = plan.piece_len;
        sj["r"] = plan.strategy.r;
        sj["num_groups"] = plan.groups.size();
        sj["group_size"] = plan.groups.front().members.size();
        sj["quorum"] = plan.groups.front().quorum;
        sj["worst_k"] = plan.worst_k;
        if (cfg.spec.p <= 8) {
            const long brute = brute_force_worst_case_k(plan);
            std::cout << " (brute-force K=" << brute
                      << (brute == plan.worst_k ? ", verified)" : ", MISMATCH)");
            sj["brute_force_k"] = brute;
            sj["verified"] = brute == plan.worst_k;
        }
        std::cout << "\n";
        report["strategies"].push_back(sj);
    }
    std::ofstream file;
    open_out(file, out_path) << report.dump(2) << "\n";
    return 0;
}

int cmd_verify(const ExperimentConfig& cfg, std::uint64_t seed, bool corrupt_decode) {
    if (cfg.spec.n1 * cfg.spec.n2 > (1L << 24)) {
        std::cerr << "verify: n1*n2 too large for the direct oracle (limit 2^24)\n";
        return 2;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RealVector a(static_cast<std::size_t>(cfg.spec.n1));
    RealVector x(static_cast<std::size_t>(cfg.spec.n2));
    for (auto& v : a) v = unif(rng);
    for (auto& v : x) v = unif(rng);
    const RealVector truth = convolve_direct(a, x);
    double truth_max = 0.0;
    for (double v : truth) truth_max = std::max(truth_max, std::abs(v));

    ExecuteOptions options;
    options.corrupt_decode = corrupt_decode;
    bool ok = true;
    for (const auto& strategy : cfg.strategies) {
        const ExecutionPlan plan = build_plan(cfg.spec, strategy);
        double worst_dev = 0.0;
        int failing_order = -1;
        for (int trial = 0; trial < 20; ++trial) {
            CompletionOrder order = CompletionOrder::identity(plan.tasks.size());
            std::shuffle(order.order.begin(), order.order.end(), rng);
            const ExecutionResult result = execute(plan, a, x, order, options);
            double dev = 0.0;
            for (std::size_t i = 0; i < truth.size(); ++i) {
                dev = std::max(dev, std::abs(result.output[i] - truth[i]));
            }
            dev /= truth_max;
            if (dev > worst_dev) {
                worst_dev = dev;
                if (dev > 1e-8) failing_order = trial;
            }
        }
        const bool pass = worst_dev <= 1e-8;
        ok = ok && pass;
        std::cout << cli::strategy_label(strategy) << ": "
                  << (pass ? "pass" : "FAIL") << ", max relative deviation "
                  << fmt(worst_dev, "%.3e");
        if (!pass) std::cout << " (first failing order index " << failing_order << ")";
        std::cout << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_path) {
    if (cfg.deadlines.empty()) {
        throw std::invalid_argument("simulate: config must provide deadlines");
    }
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "strategy,s,r,deadline,trials,failures,survival,log10_survival\n";
    std::uint64_t stream = cfg.seed;
    for (const auto& strategy : cfg.strategies) {
        const ExecutionPlan plan = build_plan(cfg.spec, strategy);
        const auto tail = monte_carlo_tail(plan, cfg.model, cfg.deadlines,
                                           cfg.trials, stream);
        stream += 0x9e3779b97f4a7c15ULL;
        const std::string r_col = strategy.kind == StrategyKind::replication
                                      ? std::to_string(strategy.r)
                                      : "";
        for (const auto& [deadline, survival] : tail) {
            const long failures = std::lround(survival * static_cast<double>(cfg.trials));
            out << cli::strategy_label(strategy) << "," << plan.piece_len << ","
                << r_col << "," << fmt(deadline) << "," << cfg.trials << ","
                << failures << "," << fmt(survival);
            out << ",";
            if (survival > 0.0) out << fmt(std::log10(survival));
            out << "\n";
        }
    }
    return 0;
}

// rows of (deadline, survival) per strategy label from a simulate CSV.
std::map<std::string, std::vector<std::pair<double, double>>> read_sim_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("analyze: cannot open " + path);
    std::map<std::string, std::vector<std::pair<double, double>>> by_strategy;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() < 7) continue;
        by_strategy[cols[0]].emplace_back(std::stod(cols[3]), std::stod(cols[6]));
    }
    return by_strategy;
}

int cmd_analyze(const ExperimentConfig& cfg, const std::string& sim_csv,
                const std::string& out_path) {
    ordered_json report;
    report["n1"] = cfg.spec.n1;
    report["n2"] = cfg.spec.n2;
    report["p"] = cfg.spec.p;
    report["mu"] = cfg.model.mu;
    report["alpha"] = cfg.model.alpha;
    report["c"] = cfg.model.cost.c;

    std::map<std::string, std::vector<std::pair<double, double>>> sim;
    if (!sim_csv.empty()) sim = read_sim_csv(sim_csv);

    report["strategies"] = ordered_json::array();
    for (const auto& strategy : cfg.strategies) {
        const ExecutionPlan plan = build_plan(cfg.spec, strategy);
        ExponentReport exponent;
        if (strategy.kind == StrategyKind::replication) {
            exponent = epsilon_replication(cfg.spec, strategy.r, cfg.model);
        } else {
            exponent = epsilon(cfg.spec, static_cast<double>(plan.piece_len), cfg.model);
        }
        const std::string label = cli::strategy_label(strategy);
        ordered_json sj;
        sj["strategy"] = label;
        sj["s"] = plan.piece_len;
        sj["worst_k"] = plan.worst_k;
        sj["epsilon"] = exponent.epsilon;
        sj["epsilon_is_upper_bound"] = exponent.is_upper_bound;
        if (sim.count(label)) {
            const double slope = fit_tail_slope(sim.at(label), cfg.model.alpha);
            sj["fitted_slope"] = slope;
            sj["fitted_over_theory"] = slope / exponent.epsilon;
        }
        report["strategies"].push_back(sj);
        if (strategy.kind == StrategyKind::coded) {
            ordered_json cj;
            cj["s"] = plan.piece_len;
            cj["value"] = complexity_ratio(cfg.spec, plan.piece_len, cfg.model);
            report["complexity_ratio"] = cj;
        }
    }

    try {
        const auto [ratio, bound] = theorem5_ratio(cfg.spec, cfg.model);
        report["theorem5"] = {{"ratio", ratio}, {"lower_bound", bound},
                              {"holds", ratio > bound}};
    } catch (const std::invalid_argument& e) {
        report["theorem5"] = {{"error", e.what()}};
    }

    const double threshold = alpha_threshold(cfg.spec, cfg.model.cost);
    report["alpha_threshold"] = threshold;
    report["regime"] =
        cfg.model.alpha < threshold ? "coded-favorable" : "uncoded-favorable";

    try {
        const long s_best = best_s(cfg.spec, cfg.model);
        report["best_s"] = s_best;
        report["best_s_epsilon"] =
            epsilon(cfg.spec, static_cast<double>(s_best), cfg.model).epsilon;
        if (!report.contains("complexity_ratio")) {
            report["complexity_ratio"] = {
                {"s", s_best}, {"value", complexity_ratio(cfg.spec, s_best, cfg.model)}};
        }
    } catch (const std::exception& e) {
        report["best_s_error"] = e.what();
    }

    std::ofstream file;
    open_out(file, out_path) << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coded distributed convolution planner, verifier and simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string sim_csv;
    std::uint64_t seed_override = 0;
    long trials_override = 0;
    bool corrupt_decode = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--seed", seed_override, "override config seed");
        sub->add_option("--trials", trials_override, "override config trials");
        sub->add_option("--out", out_path, "write output to file instead of stdout");
    };
    CLI::App* plan = app.add_subcommand("plan", "print plan summaries and worst-case K");
    CLI::App* verify =
        app.add_subcommand("verify", "run every strategy end to end against the direct oracle");
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo deadline-failure tail (CSV)");
    CLI::App* analyze = app.add_subcommand("analyze", "exponent formulas and slope comparisons (JSON)");
    for (CLI::App* sub : {plan, verify, simulate, analyze}) add_common(sub);
    verify->add_flag("--corrupt-decode", corrupt_decode,
                     "test hook: corrupt the decode matrix (expected to fail)")
        ->group("");
    analyze->add_option("--sim", sim_csv, "simulate CSV to fit empirical slopes from");

    CLI11_PARSE(app, argc, argv);

    try {
        codedconv::cli::ExperimentConfig cfg = codedconv::cli::load_config(config_path);
        if (seed_override != 0) cfg.seed = seed_override;
        if (trials_override != 0) cfg.trials = trials_override;
        if (app.got_subcommand(plan)) return cmd_plan(cfg, out_path);
        if (app.got_subcommand(verify)) return cmd_verify(cfg, cfg.seed, corrupt_decode);
        if (app.got_subcommand(simulate)) return cmd_simulate(cfg, out_path);
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg, sim_csv, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
