#include "kh/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kh/errors.hpp"

namespace kh {

namespace {

// Sorted lo -> hi container with closed-interval disjointness probes.
class DisjointFamily {
public:
    bool fits(double lo, double hi) const {
        auto next = items_.lower_bound(lo);
        if (next != items_.end() && next->first <= hi) return false;
        if (next != items_.begin()) {
            auto prev = std::prev(next);
            if (prev->second >= lo) return false;
        }
        return true;
    }
    void insert(double lo, double hi) { items_.emplace(lo, hi); }

private:
    std::map<double, double> items_;
};

}  // namespace

std::vector<std::vector<CenteredInterval>> besicovitch_decompose(
    const std::vector<double>& points, const std::vector<double>& radii) {
    if (points.size() != radii.size()) {
        throw DomainError("besicovitch_decompose: points/radii size mismatch");
    }
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!std::isfinite(points[k]) || !(radii[k] > 0.0) || !std::isfinite(radii[k])) {
            throw DomainError("besicovitch_decompose: non-finite point or non-positive radius");
        }
    }

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (radii[a] != radii[b]) return radii[a] > radii[b];
        if (points[a] != points[b]) return points[a] < points[b];
        return a < b;
    });

    // covered-point bookkeeping over the center set
    std::vector<std::size_t> by_position(order.size());
    std::iota(by_position.begin(), by_position.end(), std::size_t{0});
    std::sort(by_position.begin(), by_position.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    std::vector<double> sorted_pts(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) sorted_pts[k] = points[by_position[k]];
    std::vector<bool> covered(points.size(), false);  // indexed like by_position

    auto is_covered = [&](double x) {
        auto it = std::lower_bound(sorted_pts.begin(), sorted_pts.end(), x);
        for (; it != sorted_pts.end() && *it == x; ++it) {
            if (covered[static_cast<std::size_t>(it - sorted_pts.begin())]) return true;
        }
        return false;
    };
    auto mark_range = [&](double lo, double hi) {
        auto first = std::lower_bound(sorted_pts.begin(), sorted_pts.end(), lo);
        auto last = std::upper_bound(sorted_pts.begin(), sorted_pts.end(), hi);
        for (auto it = first; it != last; ++it) {
            covered[static_cast<std::size_t>(it - sorted_pts.begin())] = true;
        }
    };

    std::vector<std::vector<CenteredInterval>> families;
    std::vector<DisjointFamily> index;

    for (std::size_t id : order) {
        if (is_covered(points[id])) continue;
        const CenteredInterval j{points[id], radii[id]};
        bool placed = false;
        for (std::size_t fam = 0; fam < families.size(); ++fam) {
            if (index[fam].fits(j.lo(), j.hi())) {
                index[fam].insert(j.lo(), j.hi());
                families[fam].push_back(j);
                placed = true;
                break;
            }
        }
        if (!placed) {
            if (families.size() == 5) {
                throw BudgetExceeded("besicovitch_decompose needed a sixth family");
            }
            families.emplace_back();
            index.emplace_back();
            index.back().insert(j.lo(), j.hi());
            families.back().push_back(j);
        }
        mark_range(j.lo(), j.hi());
    }
    return families;
}

std::vector<Cell> vitali_greedy_select(const std::vector<Cell>& cells) {
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double la = cells[a].length(), lb = cells[b].length();
        if (la != lb) return la > lb;
        if (cells[a].lo != cells[b].lo) return cells[a].lo < cells[b].lo;
        return a < b;
    });

    std::map<double, double> kept;  // lo -> hi, pairwise non-overlapping
    std::vector<Cell> out;
    for (std::size_t id : order) {
        const Cell& c = cells[id];
        auto next = kept.lower_bound(c.lo);
        bool ok = true;
        if (next != kept.end() && next->first < c.hi) ok = false;
        if (ok && next != kept.begin() && std::prev(next)->second > c.lo) ok = false;
        if (ok) {
            kept.emplace(c.lo, c.hi);
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace kh
