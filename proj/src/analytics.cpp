#include "codedconv/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace codedconv {

namespace {

double tau_of(double s, const CostModel& cost) {
    return 2.0 * cost.c * s * cost.log(2.0 * s);
}

double uncoded_point(const ProblemSpec& spec) {
    return std::sqrt(static_cast<double>(spec.n1) * spec.n2 / spec.p);
}

void check_s_range(const ProblemSpec& spec, double s) {
    const double lo = uncoded_point(spec);
    const double hi = static_cast<double>(std::min(spec.n1, spec.n2));
    if (s < lo * (1.0 - 1e-12) || s > hi * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "epsilon: s must lie in [sqrt(n1*n2/p), min(n1, n2)]");
    }
}

// Worst-case completions coefficient p - K + 1 = p*s/n2 - n1/s + 1.
double exponent_coefficient(const ProblemSpec& spec, double s) {
    return static_cast<double>(spec.p) * s / spec.n2 -
           static_cast<double>(spec.n1) / s + 1.0;
}

}  // namespace

ExponentReport epsilon(const ProblemSpec& spec, double s, const TimeModel& model) {
    validate(spec);
    check_s_range(spec, s);
    const double coef = exponent_coefficient(spec, s);
    const double tau = tau_of(s, model.cost);
    ExponentReport rep;
    rep.epsilon = -coef * std::pow(model.mu, model.alpha) / std::pow(tau, model.alpha);
    rep.s = std::lround(s);
    rep.worst_k = std::lround(static_cast<double>(spec.p) - coef + 1.0);
    rep.is_upper_bound = s > uncoded_point(spec) * (1.0 + 1e-12);
    return rep;
}

ExponentReport epsilon_replication(const ProblemSpec& spec, long r,
                                   const TimeModel& model) {
    validate(spec);
    if (r < 1 || spec.p % r != 0) {
        throw std::invalid_argument("epsilon_replication: r must divide p");
    }
    const double s = std::sqrt(static_cast<double>(spec.n1) * spec.n2 *
                               static_cast<double>(r) / spec.p);
    const double tau = tau_of(s, model.cost);
    ExponentReport rep;
    rep.epsilon = -static_cast<double>(r) * std::pow(model.mu, model.alpha) /
                  std::pow(tau, model.alpha);
    rep.s = std::lround(s);
    rep.worst_k = spec.p - r + 1;
    rep.is_upper_bound = false;  // exact for replication
    return rep;
}

std::pair<double, double> theorem5_ratio(const ProblemSpec& spec,
                                         const TimeModel& model) {
    const double s0 = uncoded_point(spec);
    if (2.0 * s0 > static_cast<double>(std::min(spec.n1, spec.n2))) {
        throw std::invalid_argument("theorem5_ratio: 2*sqrt(n1*n2/p) out of range");
    }
    const double ratio = std::abs(epsilon(spec, 2.0 * s0, model).epsilon) /
                         std::abs(epsilon(spec, s0, model).epsilon);
    const double bound = 3.0 *
                         std::sqrt(static_cast<double>(spec.p) * spec.n1 / spec.n2) /
                         (2.0 * std::pow(4.0, model.alpha));
    return {ratio, bound};
}

double heuristic_E(const ProblemSpec& spec, double s, const TimeModel& model) {
    validate(spec);
    check_s_range(spec, s);
    const double coef = exponent_coefficient(spec, s);
    const double d = 2.0 * s * model.cost.log(2.0 * s);
    if (coef <= 0.0 || d <= 0.0) {
        throw std::invalid_argument("heuristic_E: log argument must be positive");
    }
    return std::log(coef) - model.alpha * std::log(d) +
           model.alpha * (std::log(model.mu) - std::log(model.cost.c));
}

double heuristic_E_prime(const ProblemSpec& spec, double s, const TimeModel& model) {
    validate(spec);
    check_s_range(spec, s);
    const double coef = exponent_coefficient(spec, s);
    if (coef <= 0.0) {
        throw std::invalid_argument("heuristic_E_prime: log argument must be positive");
    }
    const double coef_prime = static_cast<double>(spec.p) / spec.n2 +
                              static_cast<double>(spec.n1) / (s * s);
    return coef_prime / coef - model.alpha / s -
           model.alpha / (s * std::log(2.0 * s));
}

double alpha_threshold(const ProblemSpec& spec, const CostModel& model) {
    validate(spec);
    const double s0 = uncoded_point(spec);
    return 2.0 * std::sqrt(static_cast<double>(spec.p) * spec.n1 / spec.n2) /
           (1.0 + 1.0 / model.log(2.0 * s0));
}

std::vector<long> feasible_coded_s(const ProblemSpec& spec) {
    validate(spec);
    std::vector<long> out;
    const long hi = std::min(spec.n1, spec.n2);
    for (long s = 1; s <= hi; ++s) {
        if (spec.n1 % s != 0 || spec.n2 % s != 0) continue;
        if (s * s * spec.p < spec.n1 * spec.n2) continue;  // coded regime only
        if ((spec.p * s) % spec.n2 != 0) continue;
        if (spec.p * s / spec.n2 < spec.n1 / s) continue;
        out.push_back(s);
    }
    return out;
}

long best_s(const ProblemSpec& spec, const TimeModel& model) {
    const std::vector<long> feasible = feasible_coded_s(spec);
    if (feasible.empty()) {
        throw std::runtime_error(
            "best_s: no integer s >= sqrt(n1*n2/p) divides n1 and n2 with "
            "n2 | p*s and p*s/n2 >= n1/s");
    }
    long best = feasible.front();
    double best_mag = std::abs(epsilon(spec, static_cast<double>(best), model).epsilon);
    for (long s : feasible) {
        const double mag = std::abs(epsilon(spec, static_cast<double>(s), model).epsilon);
        if (mag > best_mag) {
            best = s;
            best_mag = mag;
        }
    }
    return best;
}

double complexity_ratio(const ProblemSpec& spec, long s, const TimeModel& model) {
    validate(spec);
    check_s_range(spec, static_cast<double>(s));
    const auto& cost = model.cost;
    const double sd = static_cast<double>(s);
    const double n = static_cast<double>(spec.p) * sd / spec.n2;
    const double k = static_cast<double>(spec.n1) / sd;
    const double groups_total = static_cast<double>(spec.n1) * spec.n2 / (sd * sd);
    const double encode = sd * n * cost.log(n) * cost.log(n);
    const double decode = 2.0 * sd * groups_total * cost.log(k) * cost.log(k);
    const double add = 2.0 * sd * groups_total;
    const double per_processor = 2.0 * cost.c * sd * cost.log(2.0 * sd);
    return (encode + decode + add) / per_processor;
}

double fit_tail_slope(const std::vector<std::pair<double, double>>& points,
                      double alpha, double tail_fraction) {
    std::vector<std::pair<double, double>> usable;
    for (const auto& [t, survival] : points) {
        if (survival > 0.0 && survival < 1.0) usable.emplace_back(t, survival);
    }
    if (usable.size() < 5) {
        throw std::invalid_argument(
            "fit_tail_slope: need at least 5 points with survival in (0,1)");
    }
    std::sort(usable.begin(), usable.end());
    const auto keep = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(tail_fraction * usable.size())));
    usable.erase(usable.begin(),
                 usable.begin() + static_cast<std::ptrdiff_t>(usable.size() - keep));

    // Least squares of ln(survival) on t^alpha.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [t, survival] : usable) {
        const double zx = std::pow(t, alpha);
        const double zy = std::log(survival);
        sx += zx;
        sy += zy;
        sxx += zx * zx;
        sxy += zx * zy;
    }
    const double n = static_cast<double>(usable.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace codedconv
