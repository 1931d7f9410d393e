#pragma once

#include <iosfwd>
#include <vector>

#include "kh/integrate.hpp"

namespace kh {

// Indefinite integral sampled on a strictly increasing grid spanning a cell,
// with values[0] = 0.
struct SampledCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double refinement_tol = 0.0;

    Cell cell() const { return Cell(grid.front(), grid.back()); }
    std::size_t size() const { return grid.size(); }

    // Piecewise-linear read; diagnostics only, the curve itself is the data.
    double interpolate(double x) const;

    double max_abs() const;
    std::size_t argmax_abs() const;
};

struct GridSpec {
    int points = 129;                  // uniform points including endpoints
    std::vector<double> include;       // extra must-have grid points

    static GridSpec uniform(int n) { return GridSpec{n, {}}; }
};

// Panel-wise prefix integration: values[k] = integral over [lo, grid[k]].
// Declared points of f always become grid points. Panels touching a declared
// point get a fixed share of the budget, the rest is split across the smooth
// panels, so the worst-case prefix error stays below tol.
SampledCurve indefinite_integral(const Integrand& f, const Cell& i, const GridSpec& spec,
                                 double tol, int threads = 1);

// Alexiewicz norm: stabilized maximum of |indefinite integral| under local
// grid tripling around the running argmax.
double alexiewicz_norm(const Integrand& f, const Cell& i, double tol, int threads = 1);

struct DerivativeSample {
    double x = 0.0;
    double f_value = 0.0;
    std::vector<double> quotients;  // one per h in the schedule
    double final_error = 0.0;       // |last quotient - f(x)|
    bool converged = false;
};

struct DerivativeCheckReport {
    std::vector<DerivativeSample> samples;
    double converged_fraction = 0.0;
    double check_tol = 0.0;
};

// Remark-style a.e. differentiation probe: symmetric difference quotients of
// the indefinite integral, each computed by locally refined integration over
// [x-h, x+h], compared against f(x).
DerivativeCheckReport ae_derivative_check(const Integrand& f, const SampledCurve& curve,
                                          const std::vector<double>& sample_points,
                                          const std::vector<double>& h_schedule,
                                          double check_tol = 1e-4);

// Columns: x,F
void write_csv(const SampledCurve& curve, std::ostream& os);

}  // namespace kh
