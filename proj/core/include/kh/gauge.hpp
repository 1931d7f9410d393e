#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "kh/cell.hpp"
#include "kh/errors.hpp"

namespace kh {

// Strictly positive function controlling how small a tagged cell must be near
// its tag. Values below the floor are clamped up and counted, so a run can
// report what was actually enforced.
class Gauge {
public:
    Gauge(std::function<double(double)> delta, double floor)
        : delta_(std::move(delta)),
          floor_(floor),
          clamps_(std::make_shared<std::atomic<long>>(0)) {
        if (!(floor_ > 0.0)) throw DomainError("gauge floor must be positive");
    }

    double at(double x) const {
        const double d = delta_(x);
        if (std::isnan(d)) throw DomainError("gauge returned NaN");
        if (d < floor_) {
            clamps_->fetch_add(1, std::memory_order_relaxed);
            return floor_;
        }
        return d;
    }

    double floor() const { return floor_; }
    long clamp_count() const { return clamps_->load(std::memory_order_relaxed); }

    // Set when the synthesizer had to raise a requested at-point scale up to
    // the floor; results obtained under such a gauge cannot claim convergence.
    bool resolution_limited() const { return resolution_limited_; }
    void set_resolution_limited(bool v) { resolution_limited_ = v; }

    // Interior points the partitioner must place cell endpoints on (declared
    // singular and exception sets). Sorted ascending.
    const std::vector<double>& split_seeds() const { return seeds_; }
    void set_split_seeds(std::vector<double> s) { seeds_ = std::move(s); }

private:
    std::function<double(double)> delta_;
    double floor_;
    std::shared_ptr<std::atomic<long>> clamps_;
    std::vector<double> seeds_;
    bool resolution_limited_ = false;
};

// Candidate-tag order for accepting a cell, plus the arity of the initial
// split. The staggered policy exists to produce a division whose cell
// boundaries are independent of the plain dyadic one; kh_integrate uses it as
// the cross-check division.
enum class TagPolicy {
    midpoint_first,
    endpoint_first,
    midpoint_staggered,
};

inline const char* to_string(TagPolicy p) {
    switch (p) {
        case TagPolicy::midpoint_first: return "midpoint-first";
        case TagPolicy::endpoint_first: return "endpoint-first";
        case TagPolicy::midpoint_staggered: return "midpoint-staggered";
    }
    return "?";
}

inline constexpr int kDefaultDepthCap = 60;

// True iff every (J, x) satisfies J within [x - delta(x), x + delta(x)].
bool is_fine(const PFamily& p, const Gauge& g);

namespace detail {

// Endpoint gauge values are inherited from the parent so each node costs one
// fresh gauge evaluation (its midpoint).
template <class Emit>
void bisect_fine(double lo, double hi, double dlo, double dhi, const Gauge& g, TagPolicy policy,
                 int depth, int depth_cap, Emit&& emit) {
    const double len = hi - lo;
    const double mid = lo + 0.5 * len;
    const double dmid = g.at(mid);

    const bool mid_fits = mid - dmid <= lo && hi <= mid + dmid;
    const bool lo_fits = hi <= lo + dlo;
    const bool hi_fits = hi - dhi <= lo;

    if (policy == TagPolicy::endpoint_first) {
        if (lo_fits) return emit(lo, hi, lo);
        if (hi_fits) return emit(lo, hi, hi);
        if (mid_fits) return emit(lo, hi, mid);
    } else {
        if (mid_fits) return emit(lo, hi, mid);
        if (lo_fits) return emit(lo, hi, lo);
        if (hi_fits) return emit(lo, hi, hi);
    }

    if (depth >= depth_cap || !(lo < mid && mid < hi)) {
        throw DepthExceeded("bisection depth cap hit near x = " + std::to_string(mid) +
                            " (gauge below honored resolution)");
    }
    bisect_fine(lo, mid, dlo, dmid, g, policy, depth + 1, depth_cap, emit);
    bisect_fine(mid, hi, dmid, dhi, g, policy, depth + 1, depth_cap, emit);
}

template <class Emit>
void bisect_fine_root(double lo, double hi, const Gauge& g, TagPolicy policy, int depth_cap,
                      Emit&& emit) {
    bisect_fine(lo, hi, g.at(lo), g.at(hi), g, policy, 0, depth_cap, emit);
}

// Splits [lo, hi] at the gauge's interior seeds, then at the policy's initial
// arity, then runs dyadic bisection. Emits (cell_lo, cell_hi, tag) left to
// right, so output is lo-sorted by construction.
template <class Emit>
void walk_fine_division(const Cell& i, const Gauge& g, TagPolicy policy, int depth_cap,
                        Emit&& emit) {
    std::vector<double> cuts;
    cuts.push_back(i.lo);
    for (double s : g.split_seeds()) {
        if (s > cuts.back() && s < i.hi) cuts.push_back(s);
    }
    cuts.push_back(i.hi);

    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const double a = cuts[k - 1];
        const double b = cuts[k];
        if (policy == TagPolicy::midpoint_staggered) {
            const double len = b - a;
            const double m1 = a + len / 3.0;
            const double m2 = a + 2.0 * len / 3.0;
            if (a < m1 && m1 < m2 && m2 < b) {
                detail::bisect_fine_root(a, m1, g, policy, depth_cap, emit);
                detail::bisect_fine_root(m1, m2, g, policy, depth_cap, emit);
                detail::bisect_fine_root(m2, b, g, policy, depth_cap, emit);
                continue;
            }
        }
        detail::bisect_fine_root(a, b, g, policy, depth_cap, emit);
    }
}

}  // namespace detail

// Constructive Cousin's lemma: a delta-fine P-division of i, built by seeded
// recursive bisection with tags restricted to {lo, mid, hi} of each cell.
// Deterministic; throws DepthExceeded when the cap is hit.
PFamily cousin_division(const Cell& i, const Gauge& g, TagPolicy policy,
                        int depth_cap = kDefaultDepthCap);

}  // namespace kh
