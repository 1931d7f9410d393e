#include "kh/gauge.hpp"

namespace kh {

bool is_fine(const PFamily& p, const Gauge& g) {
    for (const auto& it : p.items()) {
        const double d = g.at(it.tag);
        if (!(it.tag - d <= it.cell.lo && it.cell.hi <= it.tag + d)) return false;
    }
    return true;
}

PFamily cousin_division(const Cell& i, const Gauge& g, TagPolicy policy, int depth_cap) {
    std::vector<TaggedCell> items;
    detail::walk_fine_division(i, g, policy, depth_cap, [&](double lo, double hi, double tag) {
        items.emplace_back(Cell(lo, hi), tag);
    });
    return validate_pfamily(std::move(items));
}

}  // namespace kh
