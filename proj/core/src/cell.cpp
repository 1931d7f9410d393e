#include "kh/cell.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kh {

namespace {

std::string cell_str(double lo, double hi) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

}  // namespace

Cell::Cell(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw DomainError("degenerate or non-finite cell " + cell_str(lo_, hi_));
    }
}

double length(const Cell& c) { return c.length(); }

bool nonoverlapping(const Cell& a, const Cell& b) {
    return std::max(a.lo, b.lo) >= std::min(a.hi, b.hi);
}

TaggedCell::TaggedCell(Cell c, double t) : cell(c), tag(t) {
    if (!(cell.lo <= tag && tag <= cell.hi)) {
        throw TagError("tag " + std::to_string(tag) + " outside cell " +
                       cell_str(cell.lo, cell.hi));
    }
}

std::vector<std::size_t> PFamily::sorted_order() const {
    std::vector<std::size_t> idx(items_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return items_[a].cell.lo < items_[b].cell.lo;
    });
    return idx;
}

PFamily validate_pfamily(std::vector<TaggedCell> items) {
    // TaggedCell construction already enforced tag membership; re-check here so
    // families built from raw storage fail loudly too.
    for (const auto& it : items) {
        if (!(it.cell.lo <= it.tag && it.tag <= it.cell.hi)) {
            throw TagError("tag outside its cell in P-family");
        }
    }
    std::vector<std::size_t> idx(items.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (items[a].cell.lo != items[b].cell.lo) return items[a].cell.lo < items[b].cell.lo;
        return items[a].cell.hi < items[b].cell.hi;
    });
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Cell& prev = items[idx[k - 1]].cell;
        const Cell& cur = items[idx[k]].cell;
        if (!nonoverlapping(prev, cur)) {
            throw OverlapError("cells " + std::string("overlap with positive length: ") +
                               std::to_string(prev.lo) + ".." + std::to_string(prev.hi) +
                               " and " + std::to_string(cur.lo) + ".." + std::to_string(cur.hi));
        }
    }
    return PFamily(std::move(items));
}

bool is_pdivision(const PFamily& p, const Cell& i) {
    if (p.empty()) return false;
    const auto order = p.sorted_order();
    const auto& items = p.items();
    if (items[order.front()].cell.lo != i.lo) return false;
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (items[order[k - 1]].cell.hi != items[order[k]].cell.lo) return false;
    }
    return items[order.back()].cell.hi == i.hi;
}

AdditiveCellFn::AdditiveCellFn(std::function<double(double)> point_fn, Cell domain)
    : fn_(std::move(point_fn)), domain_(domain), offset_(fn_(domain.lo)) {}

double AdditiveCellFn::point_value(double x) const {
    if (!domain_.contains(x)) {
        throw DomainError("point outside additive-function domain");
    }
    return fn_(x) - offset_;
}

double cell_value(const AdditiveCellFn& f, const Cell& j) {
    if (!f.domain_.contains(j)) {
        throw DomainError("cell outside additive-function domain");
    }
    return f.fn_(j.hi) - f.fn_(j.lo);
}

}  // namespace kh
