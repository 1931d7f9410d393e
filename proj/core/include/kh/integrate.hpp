#pragma once

#include <limits>

#include "kh/cell.hpp"
#include "kh/gauge.hpp"
#include "kh/integrand.hpp"

namespace kh {

struct IntegralResult {
    double value = 0.0;
    double error_estimate = std::numeric_limits<double>::infinity();
    long divisions_used = 0;       // fine divisions built across the run
    double finest_cell = std::numeric_limits<double>::infinity();
    long cells_used = 0;           // tagged cells summed across the run
    int iterations = 0;
    long gauge_clamps = 0;         // floor-clamp events (what was actually enforced)
    bool converged = false;
};

// Iteration cap hit. Carries the best stabilized value seen.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, IntegralResult best)
        : Error(what), best_(best) {}
    const IntegralResult& best() const { return best_; }

private:
    IntegralResult best_;
};

struct IntegrateOptions {
    int max_iterations = 18;
    int depth_cap = kDefaultDepthCap;
    TagPolicy policy = TagPolicy::midpoint_first;
    // Division the stop rule cross-checks against; must differ from policy.
    TagPolicy cross_policy = TagPolicy::midpoint_staggered;
};

// Riemann sum over a materialized family: sum of f(tag) * |J| in lo-sorted
// order with compensated summation. Throws NonFiniteSample if the
// representative is not finite at a tag.
double riemann_sum(const PFamily& p, const Integrand& f);

// Synthesizes the fineness gauge for one refinement level eps. Constant away
// from declared points; shaped near them (linear for plain singular points,
// wavelength-graded for declared chirps); crushed at exception points so their
// terms stay below the budget. Integrands with a custom profile use it as-is.
Gauge default_gauge(const Integrand& f, const Cell& i, double eps);

// Kurzweil-Henstock integral by gauge refinement: eps_k = tol * 2^-k, one
// dyadic midpoint-first sum per level, stopping when the level-to-level delta
// and an independently partitioned cross-check sum both land within tol.
IntegralResult kh_integrate(const Integrand& f, const Cell& i, double tol,
                            const IntegrateOptions& opts = {});

// Sum of |f(x) * |J| - F_ref(J)| over the family: the quantity the
// Saks-Henstock theorem makes small for fine families. Diagnostic.
double saks_henstock_indicator(const Integrand& f, const PFamily& p,
                               const AdditiveCellFn& f_ref);

}  // namespace kh
