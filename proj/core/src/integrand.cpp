#include "kh/integrand.hpp"

#include <algorithm>

#include "kh/errors.hpp"

namespace kh {

std::vector<SingularPoint> Integrand::shaping_points() const {
    std::vector<SingularPoint> out = singular_;
    out.insert(out.end(), profile_only_.begin(), profile_only_.end());
    return out;
}

std::vector<double> Integrand::seed_points() const {
    std::vector<double> pts;
    for (const auto& s : singular_) pts.push_back(s.location);
    for (const auto& s : profile_only_) pts.push_back(s.location);
    for (const auto& e : exceptions_) pts.push_back(e.first);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

void merge_metadata(Integrand& out, const Integrand& f) {
    for (const auto& s : f.singular_points()) out.add_profile_point(s);
    for (const auto& s : f.profile_points()) out.add_profile_point(s);
    for (const auto& e : f.null_exceptions()) {
        out.add_profile_point(SingularPoint{e.first, 0.0, 1.0});
    }
}

}  // namespace

Integrand linear_combination(double a, const Integrand& f, double b, const Integrand& g) {
    if (!(f.cell() == g.cell())) {
        throw DomainMismatch("linear combination of integrands on different cells");
    }
    Integrand out([a, f, b, g](double x) { return a * f.value_at(x) + b * g.value_at(x); },
                  f.cell());
    merge_metadata(out, f);
    merge_metadata(out, g);
    const auto& pf = f.gauge_profile();
    const auto& pg = g.gauge_profile();
    if (pf && pg) {
        out.set_gauge_profile([pf, pg](double x, double eps) {
            return std::min(pf(x, eps), pg(x, eps));
        });
    } else if (pf) {
        out.set_gauge_profile(pf);
    } else if (pg) {
        out.set_gauge_profile(pg);
    }
    return out;
}

Integrand scaled(double a, const Integrand& f) {
    Integrand out([a, f](double x) { return a * f.value_at(x); }, f.cell());
    merge_metadata(out, f);
    if (const auto& p = f.gauge_profile()) out.set_gauge_profile(p);
    return out;
}

}  // namespace kh
