#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace msl {

// Finitely many constant pieces on [breakpoints.front(), breakpoints.back()),
// zero outside. Piece k carries `components` values.
struct StepFunction {
    std::vector<double> breakpoints;  // strictly increasing, size pieces+1
    std::vector<double> levels;       // pieces x components, row-major
    int components = 1;

    StepFunction() = default;
    StepFunction(std::vector<double> bps, std::vector<double> lvl, int comps = 1)
        : breakpoints(std::move(bps)), levels(std::move(lvl)), components(comps) {
        validate();
    }

    static StepFunction indicator(double a, double b, double level = 1.0) {
        return StepFunction({a, b}, {level}, 1);
    }
    static StepFunction zero() { return StepFunction({0.0, 1.0}, {0.0}, 1); }

    int pieces() const { return static_cast<int>(breakpoints.size()) - 1; }
    double level(int piece, int comp = 0) const {
        return levels[static_cast<std::size_t>(piece) * components + comp];
    }

    double value_at(double t, int comp = 0) const {
        if (t < breakpoints.front() || t >= breakpoints.back()) return 0.0;
        for (int k = 0; k < pieces(); ++k)
            if (t < breakpoints[k + 1]) return level(k, comp);
        return 0.0;
    }

    void validate() const {
        if (breakpoints.size() < 2)
            throw std::invalid_argument("StepFunction: need at least one piece");
        if (components < 1) throw std::invalid_argument("StepFunction: components must be >= 1");
        if (breakpoints.front() < 0.0)
            throw std::invalid_argument("StepFunction: breakpoints must be nonnegative");
        for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
            if (!(breakpoints[k] < breakpoints[k + 1]))
                throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
        if (levels.size() != static_cast<std::size_t>(pieces()) * components)
            throw std::invalid_argument("StepFunction: levels size must be pieces * components");
        for (double v : levels)
            if (!std::isfinite(v)) throw std::invalid_argument("StepFunction: levels must be finite");
    }
};

}  // namespace msl
