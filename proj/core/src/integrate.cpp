#include "kh/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "kh/num.hpp"

namespace kh {

namespace {

// Tuning constants for the synthesized gauge. Calibrated so that one level at
// eps lands the sum within roughly eps/3 of the integral on the test families,
// which lets the halving schedule stop after the first comparison.
constexpr double kBaseCap = 0.25;      // h_base <= cap * |I|
constexpr double kBaseFrac = 0.25;     // h_base = frac * sqrt(eps) * |I|
constexpr double kLinSlope = 1.5;      // linear shape: c = kLinSlope * sqrt(eps)
constexpr double kLinCap = 0.25;
constexpr double kPlainTrunc = 0.25;   // plain cell at the point ~ kPlainTrunc * eps^2
constexpr double kOscSamples = 2.5;    // samples per wavelength ~ kOscSamples / sqrt(eps)
constexpr double kOscTruncZero = 2.5;  // phase-zero pinned chirp cell ~ this * sqrt(eps)
constexpr double kOscTruncPlain = 0.5; // unpinned chirp cell ~ this * sqrt(eps)
constexpr double kCrushFrac = 1.0 / 16.0;
constexpr double kFloorFrac = 1e-15;
constexpr double kPi = 3.14159265358979323846;

double pow_int_third(double d, double k) {
    // d^(k + 1/3) for small non-negative integer-ish k; cheaper than std::pow
    // on the partition hot path.
    const int ki = static_cast<int>(k);
    if (static_cast<double>(ki) == k && ki >= 0 && ki <= 12) {
        double p = std::cbrt(d);
        for (int j = 0; j < ki; ++j) p *= d;
        return p;
    }
    return std::pow(d, k + 1.0 / 3.0);
}

struct ShapedPoint {
    double location;
    double at_scale;       // honored cell size when tagged at the point itself
    double lin_slope;      // plain shape: delta = lin_slope * dist
    double osc_coeff;      // chirp shape: delta = osc_coeff * dist^(k + 1/3)
    double osc_exponent;   // k; 0 = plain
};

struct GaugeRecipe {
    double h_base;
    double floor;
    bool resolution_limited = false;
    std::vector<ShapedPoint> points;
    std::vector<std::pair<double, double>> crushes;  // (location, scale)
    Integrand::Profile profile;
    double eps;

    double operator()(double x) const {
        for (const auto& c : crushes) {
            if (x == c.first) return c.second;
        }
        double d = h_base;
        if (profile) {
            d = std::min(d, profile(x, eps));
        } else {
            for (const auto& p : points) {
                const double dist = std::abs(x - p.location);
                if (dist == 0.0) {
                    // At the point itself the term vanishes by convention, so
                    // the honored scale may exceed h_base (phase-zero pinning).
                    return p.at_scale;
                }
                if (p.osc_exponent > 0.0) {
                    d = std::min(d, p.osc_coeff * pow_int_third(dist, p.osc_exponent));
                } else {
                    d = std::min(d, p.lin_slope * dist);
                }
            }
        }
        return d;
    }
};

struct SumStats {
    long cells = 0;
    double finest = std::numeric_limits<double>::infinity();
};

double fine_division_sum(const Cell& i, const Gauge& g, TagPolicy policy, int depth_cap,
                         const Integrand& f, SumStats& stats) {
    CompensatedSum acc;
    detail::walk_fine_division(i, g, policy, depth_cap, [&](double lo, double hi, double tag) {
        const double v = f.value_at(tag);
        if (!std::isfinite(v)) {
            throw NonFiniteSample("integrand not finite at undeclared point", tag);
        }
        acc.add(v * (hi - lo));
        ++stats.cells;
        stats.finest = std::min(stats.finest, hi - lo);
    });
    return acc.value();
}

}  // namespace

namespace {

// Distance d* <= target at which the chirp's phase equals trunc_phase mod pi,
// i.e. where the indefinite integral vanishes. Monotone-decreasing phase.
double phase_zero_below(const SingularPoint& s, double target) {
    const double theta_t = s.phase_at(target);
    if (!std::isfinite(theta_t)) return target;
    const double n = std::ceil((theta_t - s.trunc_phase) / kPi);
    const double theta = s.trunc_phase + std::max(n, 1.0) * kPi;
    if (!s.phase) {
        // power law inverts in closed form
        return std::pow(s.osc_scale / theta, 1.0 / s.osc_exponent);
    }
    double lo = target * 0x1p-50, hi = target;
    if (!(s.phase_at(lo) > theta)) return target;
    for (int it = 0; it < 200 && lo < hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (s.phase_at(mid) >= theta ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double riemann_sum(const PFamily& p, const Integrand& f) {
    CompensatedSum acc;
    for (std::size_t k : p.sorted_order()) {
        const auto& it = p[k];
        const double v = f.value_at(it.tag);
        if (!std::isfinite(v)) {
            throw NonFiniteSample("integrand not finite at undeclared point", it.tag);
        }
        acc.add(v * it.cell.length());
    }
    return acc.value();
}

Gauge default_gauge(const Integrand& f, const Cell& i, double eps) {
    if (!(eps > 0.0)) throw DomainError("default_gauge needs eps > 0");
    const double len = i.length();
    const double unit_eps = eps / len;  // budget per unit length
    const double floor = kFloorFrac * len;

    GaugeRecipe recipe;
    recipe.h_base = len * std::min(kBaseCap, kBaseFrac * std::sqrt(unit_eps));
    recipe.h_base = std::max(recipe.h_base, floor);
    recipe.floor = floor;
    recipe.eps = eps;
    recipe.profile = f.gauge_profile();

    const auto shaping = f.shaping_points();
    const std::size_t n_special = shaping.size() + f.null_exceptions().size();

    std::vector<double> seeds = f.seed_points();

    for (const auto& s : shaping) {
        ShapedPoint p{};
        p.location = s.location;
        if (s.osc_exponent > 0.0) {
            const double m1 = kOscSamples / std::sqrt(unit_eps);
            p.osc_exponent = s.osc_exponent;
            p.osc_coeff = kPi / (s.osc_exponent * s.osc_scale * m1);
            if (s.has_trunc_phase()) {
                // End the cell tagged at the point on a zero of the indefinite
                // integral; the cut must be a split seed so the cell boundary
                // lands there exactly.
                const double target =
                    std::min(kOscTruncZero * std::sqrt(eps * len), kBaseCap * len);
                p.at_scale = phase_zero_below(s, std::max(target, floor));
                if (p.at_scale < floor) recipe.resolution_limited = true;
                if (s.location + p.at_scale < i.hi) seeds.push_back(s.location + p.at_scale);
                if (s.location - p.at_scale > i.lo) seeds.push_back(s.location - p.at_scale);
                recipe.points.push_back(p);
                continue;
            }
            p.at_scale = kOscTruncPlain * std::sqrt(eps * len);
        } else {
            p.lin_slope = std::min(kLinCap, kLinSlope * std::sqrt(unit_eps));
            p.at_scale = kPlainTrunc * eps * eps / len;
        }
        if (p.at_scale < floor) {
            p.at_scale = floor;
            recipe.resolution_limited = true;
        }
        recipe.points.push_back(p);
    }

    for (const auto& e : f.null_exceptions()) {
        const double crush =
            std::max(floor, kCrushFrac * eps / ((1.0 + std::abs(e.second)) *
                                                static_cast<double>(std::max<std::size_t>(n_special, 1))));
        recipe.crushes.emplace_back(e.first, std::min(crush, recipe.h_base));
    }

    Gauge g(recipe, floor);
    g.set_resolution_limited(recipe.resolution_limited);

    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    g.set_split_seeds(std::move(seeds));
    return g;
}

IntegralResult kh_integrate(const Integrand& f, const Cell& i, double tol,
                            const IntegrateOptions& opts) {
    if (!(tol > 0.0)) throw DomainError("kh_integrate needs tol > 0");
    if (!f.cell().contains(i)) {
        throw DomainError("integration cell not contained in the integrand's cell");
    }

    IntegralResult best;
    IntegralResult res;
    double s_prev = 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    for (int k = 0; k < opts.max_iterations; ++k) {
        const double eps = std::ldexp(tol, -k);
        Gauge g = default_gauge(f, i, eps);

        SumStats stats;
        const double s = fine_division_sum(i, g, opts.policy, opts.depth_cap, f, stats);
        res.divisions_used += 1;
        res.cells_used += stats.cells;
        res.finest_cell = std::min(res.finest_cell, stats.finest);
        res.iterations = k + 1;

        const double d1 = (k == 0) ? inf : std::abs(s - s_prev);
        double est = d1;

        if (d1 < tol) {
            // Independent division with staggered cell boundaries; catches
            // tag-placement artifacts the level-to-level delta cannot see.
            SumStats stats2;
            const double s2 =
                fine_division_sum(i, g, opts.cross_policy, opts.depth_cap, f, stats2);
            res.divisions_used += 1;
            res.cells_used += stats2.cells;
            res.finest_cell = std::min(res.finest_cell, stats2.finest);
            const double d2 = std::abs(s - s2);
            est = std::max(d1, d2);
            if (d2 < tol && !g.resolution_limited()) {
                res.value = s;
                res.error_estimate = est;
                res.gauge_clamps = g.clamp_count();
                res.converged = true;
                return res;
            }
        }

        if (est < best.error_estimate) {
            best = res;
            best.value = s;
            best.error_estimate = est;
            best.gauge_clamps = g.clamp_count();
        }
        s_prev = s;
    }

    throw NoConvergence("kh_integrate: no stabilization within the iteration cap", best);
}

double saks_henstock_indicator(const Integrand& f, const PFamily& p,
                               const AdditiveCellFn& f_ref) {
    CompensatedSum acc;
    for (std::size_t k : p.sorted_order()) {
        const auto& it = p[k];
        acc.add(std::abs(f.value_at(it.tag) * it.cell.length() - cell_value(f_ref, it.cell)));
    }
    return acc.value();
}

}  // namespace kh
