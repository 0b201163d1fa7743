#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace codedconv::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) {
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
    }
}

Strategy parse_strategy(const json& j) {
    reject_unknown(j, {"kind", "r", "s"}, "strategies[]");
    const std::string kind = j.at("kind").get<std::string>();
    Strategy strat;
    if (kind == "uncoded") {
        strat.kind = StrategyKind::uncoded;
    } else if (kind == "replication") {
        strat.kind = StrategyKind::replication;
        strat.r = j.at("r").get<long>();
    } else if (kind == "coded") {
        strat.kind = StrategyKind::coded;
        strat.s = j.at("s").get<long>();
    } else {
        throw std::invalid_argument("config: unknown strategy kind '" + kind + "'");
    }
    return strat;
}

TimeModel parse_model(const json& j) {
    reject_unknown(j, {"mu", "alpha", "c", "log_base"}, "model");
    TimeModel model;
    if (j.contains("mu")) model.mu = j.at("mu").get<double>();
    if (j.contains("alpha")) model.alpha = j.at("alpha").get<double>();
    if (j.contains("c")) model.cost.c = j.at("c").get<double>();
    if (j.contains("log_base")) {
        const auto& b = j.at("log_base");
        if (b.is_string()) {
            const std::string s = b.get<std::string>();
            if (s != "e") {
                throw std::invalid_argument("config: log_base must be 2 or \"e\"");
            }
            model.cost.log_base = std::exp(1.0);
        } else {
            if (b.get<double>() != 2.0) {
                throw std::invalid_argument("config: log_base must be 2 or \"e\"");
            }
            model.cost.log_base = 2.0;
        }
    }
    if (model.mu <= 0.0 || model.alpha <= 0.0 || model.cost.c <= 0.0) {
        throw std::invalid_argument("config: mu, alpha, c must be positive");
    }
    return model;
}

std::vector<double> parse_deadlines(const json& j) {
    if (j.is_array()) {
        return j.get<std::vector<double>>();
    }
    reject_unknown(j, {"min", "max", "count", "spacing"}, "deadlines");
    const double lo = j.at("min").get<double>();
    const double hi = j.at("max").get<double>();
    const long count = j.at("count").get<long>();
    const std::string spacing =
        j.contains("spacing") ? j.at("spacing").get<std::string>() : "linear";
    if (count < 1 || lo <= 0.0 || hi < lo) {
        throw std::invalid_argument("config: bad deadline grid");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0
                                    : static_cast<double>(i) / static_cast<double>(count - 1);
        if (spacing == "linear") {
            out.push_back(lo + f * (hi - lo));
        } else if (spacing == "log") {
            out.push_back(lo * std::pow(hi / lo, f));
        } else {
            throw std::invalid_argument("config: spacing must be linear or log");
        }
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    const json j = json::parse(json_text);
    reject_unknown(j, {"n1", "n2", "p", "strategies", "model", "deadlines", "trials", "seed"},
                   "config");
    ExperimentConfig cfg;
    cfg.spec.n1 = j.at("n1").get<long>();
    cfg.spec.n2 = j.at("n2").get<long>();
    cfg.spec.p = j.at("p").get<long>();
    validate(cfg.spec);
    for (const auto& sj : j.at("strategies")) {
        cfg.strategies.push_back(parse_strategy(sj));
    }
    if (cfg.strategies.empty()) {
        throw std::invalid_argument("config: strategies must be non-empty");
    }
    if (j.contains("model")) cfg.model = parse_model(j.at("model"));
    if (j.contains("deadlines")) cfg.deadlines = parse_deadlines(j.at("deadlines"));
    if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string strategy_label(const Strategy& strategy) {
    switch (strategy.kind) {
        case StrategyKind::uncoded: return "uncoded";
        case StrategyKind::replication:
            return "replication_r" + std::to_string(strategy.r);
        case StrategyKind::coded: return "coded_s" + std::to_string(strategy.s);
    }
    return "?";
}

}  // namespace codedconv::cli
