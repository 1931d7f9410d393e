#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "kh/cell.hpp"

namespace kh {

// Declared singular point of an integrand. The representative takes the value
// 0 there. osc_exponent > 0 declares a chirp accumulating at the point with
// phase ~ osc_scale * dist^-osc_exponent; the gauge synthesizer uses it to
// keep cells below the local wavelength.
struct SingularPoint {
    double location = 0.0;
    double osc_exponent = 0.0;
    double osc_scale = 1.0;

    // When set, the indefinite integral vanishes where phase(dist) is
    // congruent to trunc_phase mod pi. The synthesizer then pins the cell
    // tagged at the point so that it ends on such a zero, which removes the
    // truncation term and lets that cell be much longer.
    double trunc_phase = std::numeric_limits<double>::quiet_NaN();

    // Exact phase(dist), strictly decreasing in dist. Defaults to the power
    // law osc_scale * dist^-osc_exponent; transported integrands install the
    // composed closure.
    std::function<double(double)> phase;

    bool has_trunc_phase() const { return trunc_phase == trunc_phase; }
    double phase_at(double dist) const {
        if (phase) return phase(dist);
        return osc_scale * std::pow(dist, -osc_exponent);
    }
};

// Real function on a cell together with the finite sets that pin down which
// a.e.-representative is meant: declared singular points (value 0) and
// null exceptions (overridden values).
class Integrand {
public:
    // delta(x, eps): custom fineness profile, used instead of the synthesized
    // distance-based shape. Transported integrands carry composed profiles.
    using Profile = std::function<double(double, double)>;

    Integrand(std::function<double(double)> eval, Cell cell)
        : eval_(std::move(eval)), cell_(cell) {}

    static Integrand constant(double c, Cell cell) {
        return Integrand([c](double) { return c; }, cell);
    }

    const Cell& cell() const { return cell_; }

    // Evaluation with the representative conventions applied.
    double value_at(double x) const {
        for (const auto& e : exceptions_) {
            if (x == e.first) return e.second;
        }
        for (const auto& s : singular_) {
            if (x == s.location) return 0.0;
        }
        return eval_(x);
    }

    Integrand& add_singular(SingularPoint s) {
        singular_.push_back(s);
        return *this;
    }
    Integrand& add_exception(double point, double value) {
        exceptions_.emplace_back(point, value);
        return *this;
    }
    // Shapes the gauge / seeds the partitioner without any value convention.
    Integrand& add_profile_point(SingularPoint s) {
        profile_only_.push_back(s);
        return *this;
    }
    Integrand& set_gauge_profile(Profile p) {
        profile_ = std::move(p);
        return *this;
    }

    const std::vector<SingularPoint>& singular_points() const { return singular_; }
    const std::vector<std::pair<double, double>>& null_exceptions() const { return exceptions_; }
    const std::vector<SingularPoint>& profile_points() const { return profile_only_; }
    const Profile& gauge_profile() const { return profile_; }

    // Singular + profile points, the set the gauge shapes around.
    std::vector<SingularPoint> shaping_points() const;

    // Sorted locations of every declared point; the partitioner places cell
    // endpoints on these.
    std::vector<double> seed_points() const;

private:
    std::function<double(double)> eval_;
    Cell cell_;
    std::vector<SingularPoint> singular_;
    std::vector<std::pair<double, double>> exceptions_;
    std::vector<SingularPoint> profile_only_;
    Profile profile_;
};

// a*f + b*g on a common cell. Component conventions are baked into the
// evaluation; declared points carry over as profile/seed metadata only.
Integrand linear_combination(double a, const Integrand& f, double b, const Integrand& g);

Integrand scaled(double a, const Integrand& f);

}  // namespace kh
