#include "kh/indefinite.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

#include "kh/num.hpp"

namespace kh {

namespace {

std::vector<double> build_grid(const Integrand& f, const Cell& i, const GridSpec& spec) {
    const int n = std::max(spec.points, 2);
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + spec.include.size() + 4);
    for (int j = 0; j < n; ++j) {
        grid.push_back(i.lo + (i.hi - i.lo) * j / (n - 1));
    }
    grid.front() = i.lo;
    grid.back() = i.hi;
    auto add_interior = [&](double x) {
        if (x > i.lo && x < i.hi) grid.push_back(x);
    };
    for (double x : spec.include) add_interior(x);
    for (double x : f.seed_points()) add_interior(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

struct PanelTable {
    std::vector<double> x;         // n+1 grid points
    std::vector<double> integral;  // n panel integrals
    std::vector<double> tol;       // n panel budgets
};

// Budget split: panels touching a declared point share half the error budget,
// smooth panels share the other half.
std::vector<double> panel_budgets(const std::vector<double>& grid,
                                  const std::vector<double>& declared, double tol) {
    const std::size_t n = grid.size() - 1;
    std::vector<bool> touches(n, false);
    std::size_t n_declared = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (double s : declared) {
            if (grid[k] == s || grid[k + 1] == s) {
                touches[k] = true;
                break;
            }
        }
        if (touches[k]) ++n_declared;
    }
    const std::size_t n_smooth = n - n_declared;
    std::vector<double> budget(n);
    for (std::size_t k = 0; k < n; ++k) {
        budget[k] = touches[k] ? tol / (4.0 * static_cast<double>(std::max<std::size_t>(n_declared, 1)))
                               : tol / (4.0 * static_cast<double>(std::max<std::size_t>(n_smooth, 1)));
    }
    return budget;
}

void integrate_panels(const Integrand& f, PanelTable& t, std::size_t first, std::size_t count,
                      int threads) {
    std::exception_ptr err;
    std::mutex err_mu;
    parallel_for(count, threads, [&](std::size_t j) {
        const std::size_t k = first + j;
        try {
            t.integral[k] =
                kh_integrate(f, Cell(t.x[k], t.x[k + 1]), t.tol[k]).value;
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
        }
    });
    if (err) std::rethrow_exception(err);
}

std::vector<double> prefix_values(const PanelTable& t) {
    std::vector<double> values(t.x.size());
    values[0] = 0.0;
    CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < t.x.size(); ++k) {
        acc.add(t.integral[k]);
        values[k + 1] = acc.value();
    }
    return values;
}

PanelTable build_table(const Integrand& f, const Cell& i, const GridSpec& spec, double tol,
                       int threads) {
    PanelTable t;
    t.x = build_grid(f, i, spec);
    const std::size_t n = t.x.size() - 1;
    t.integral.assign(n, 0.0);
    t.tol = panel_budgets(t.x, f.seed_points(), tol);
    integrate_panels(f, t, 0, n, threads);
    return t;
}

// Split panel k in three; children inherit half the parent budget each.
void refine_panel(const Integrand& f, PanelTable& t, std::size_t k, int threads) {
    const double a = t.x[k], b = t.x[k + 1];
    const double w = b - a;
    const double m1 = a + w / 3.0;
    const double m2 = a + 2.0 * w / 3.0;
    if (!(a < m1 && m1 < m2 && m2 < b)) return;  // resolution floor
    const double child_tol = t.tol[k] / 2.0;
    t.x.insert(t.x.begin() + static_cast<std::ptrdiff_t>(k) + 1, {m1, m2});
    t.integral.insert(t.integral.begin() + static_cast<std::ptrdiff_t>(k), {0.0, 0.0});
    t.tol[k] = child_tol;
    t.tol.insert(t.tol.begin() + static_cast<std::ptrdiff_t>(k), {child_tol, child_tol});
    integrate_panels(f, t, k, 3, threads);
}

}  // namespace

double SampledCurve::interpolate(double x) const {
    if (!(x >= grid.front() && x <= grid.back())) {
        throw DomainError("interpolation point outside the curve's cell");
    }
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    if (it == grid.begin()) return values.front();
    if (it == grid.end()) return values.back();
    const std::size_t k = static_cast<std::size_t>(it - grid.begin());
    const double w = (x - grid[k - 1]) / (grid[k] - grid[k - 1]);
    return values[k - 1] + w * (values[k] - values[k - 1]);
}

double SampledCurve::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::size_t SampledCurve::argmax_abs() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (std::abs(values[k]) > std::abs(values[best])) best = k;
    }
    return best;
}

SampledCurve indefinite_integral(const Integrand& f, const Cell& i, const GridSpec& spec,
                                 double tol, int threads) {
    if (!(tol > 0.0)) throw DomainError("indefinite_integral needs tol > 0");
    PanelTable t = build_table(f, i, spec, tol, threads);
    SampledCurve c;
    c.grid = t.x;
    c.values = prefix_values(t);
    c.refinement_tol = tol;
    return c;
}

double alexiewicz_norm(const Integrand& f, const Cell& i, double tol, int threads) {
    if (!(tol > 0.0)) throw DomainError("alexiewicz_norm needs tol > 0");
    PanelTable t = build_table(f, i, GridSpec::uniform(65), tol, threads);

    auto current_max = [&](std::size_t& argmax) {
        const auto values = prefix_values(t);
        double m = 0.0;
        argmax = 0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (std::abs(values[k]) > m) {
                m = std::abs(values[k]);
                argmax = k;
            }
        }
        return m;
    };

    std::size_t argmax = 0;
    double m = current_max(argmax);
    int stable = 0;
    for (int round = 0; round < 64 && stable < 2; ++round) {
        // triple the panels on both sides of the running argmax
        const std::size_t before = t.x.size();
        if (argmax + 1 < t.x.size()) refine_panel(f, t, argmax, threads);
        if (argmax > 0) refine_panel(f, t, argmax - 1, threads);
        if (t.x.size() == before) break;  // nothing refinable left
        const double m2 = current_max(argmax);
        stable = (std::abs(m2 - m) <= 0.25 * tol) ? stable + 1 : 0;
        m = m2;
    }
    return m;
}

DerivativeCheckReport ae_derivative_check(const Integrand& f, const SampledCurve& curve,
                                          const std::vector<double>& sample_points,
                                          const std::vector<double>& h_schedule,
                                          double check_tol) {
    const Cell domain = curve.cell();
    DerivativeCheckReport report;
    report.check_tol = check_tol;
    long converged = 0;
    for (double x : sample_points) {
        DerivativeSample s;
        s.x = x;
        s.f_value = f.value_at(x);
        double last = std::numeric_limits<double>::quiet_NaN();
        for (double h : h_schedule) {
            const double h_eff = std::min({h, x - domain.lo, domain.hi - x});
            if (!(h_eff > 0.0)) {
                s.quotients.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            try {
                const double qtol = std::max(check_tol * h_eff / 4.0, 1e-16);
                const auto r = kh_integrate(f, Cell(x - h_eff, x + h_eff), qtol);
                last = r.value / (2.0 * h_eff);
            } catch (const Error&) {
                last = std::numeric_limits<double>::quiet_NaN();
            }
            s.quotients.push_back(last);
        }
        s.final_error = std::abs(last - s.f_value);
        s.converged = std::isfinite(last) && s.final_error <= check_tol;
        if (s.converged) ++converged;
        report.samples.push_back(std::move(s));
    }
    report.converged_fraction =
        report.samples.empty() ? 0.0
                               : static_cast<double>(converged) /
                                     static_cast<double>(report.samples.size());
    return report;
}

void write_csv(const SampledCurve& curve, std::ostream& os) {
    os << "x,F\n";
    os.precision(17);
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
        os << curve.grid[k] << ',' << curve.values[k] << '\n';
    }
}

}  // namespace kh
