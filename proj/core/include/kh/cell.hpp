#pragma once

#include <functional>
#include <vector>

#include "kh/errors.hpp"

namespace kh {

// Non-degenerate compact interval [lo, hi]. The universal domain object;
// everything downstream (tagged families, gauges, integrands) lives on cells.
struct Cell {
    double lo;
    double hi;

    Cell(double lo_, double hi_);

    double length() const { return hi - lo; }
    double midpoint() const { return lo + 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Cell& j) const { return lo <= j.lo && j.hi <= hi; }

    bool operator==(const Cell& o) const { return lo == o.lo && hi == o.hi; }
};

double length(const Cell& c);

// True iff the two cells intersect in at most one point.
bool nonoverlapping(const Cell& a, const Cell& b);

struct TaggedCell {
    Cell cell;
    double tag;  // must lie in cell

    TaggedCell(Cell c, double t);
};

// Finite tagged family of pairwise non-overlapping cells. Insertion order is
// kept; reductions that care about order sort by lo first.
class PFamily {
public:
    PFamily() = default;

    const std::vector<TaggedCell>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const TaggedCell& operator[](std::size_t i) const { return items_[i]; }

    // Indices of items in lo-sorted order (ties impossible: cells would overlap).
    std::vector<std::size_t> sorted_order() const;

    friend PFamily validate_pfamily(std::vector<TaggedCell> items);

private:
    explicit PFamily(std::vector<TaggedCell> items) : items_(std::move(items)) {}
    std::vector<TaggedCell> items_;
};

// Checks tags and pairwise non-overlap. Duplicated cells are rejected (a cell
// overlaps itself with positive length). Throws OverlapError / TagError.
PFamily validate_pfamily(std::vector<TaggedCell> items);

// True iff the family's cells chain exactly from i.lo to i.hi with matching
// endpoints. Exact comparisons: partitioners share split endpoints bit-for-bit.
bool is_pdivision(const PFamily& p, const Cell& i);

// Additive cell function represented by its point function, normalized so the
// value at the left endpoint of the domain is exactly zero.
class AdditiveCellFn {
public:
    AdditiveCellFn(std::function<double(double)> point_fn, Cell domain);

    const Cell& domain() const { return domain_; }

    // point_fn(x) - point_fn(domain.lo)
    double point_value(double x) const;

    friend double cell_value(const AdditiveCellFn& f, const Cell& j);

private:
    std::function<double(double)> fn_;
    Cell domain_;
    double offset_;
};

// point_fn(hi) - point_fn(lo); additive over non-overlapping unions.
// Throws DomainError if j is not contained in the domain.
double cell_value(const AdditiveCellFn& f, const Cell& j);

}  // namespace kh
