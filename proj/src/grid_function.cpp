#include "rocketbvp/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace rocketbvp {

GridFunction GridFunction::zeros(double t0, double t1, std::size_t n) {
    return GridFunction{t0, t1, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

double c1_norm(const GridFunction& z) {
    double m = 0.0;
    for (double v : z.values) m = std::max(m, std::abs(v));
    for (double d : z.derivs) m = std::max(m, std::abs(d));
    return m;
}

void require_same_grid(const GridFunction& za, const GridFunction& zb) {
    if (za.size() != zb.size() || za.values.size() != za.derivs.size() ||
        zb.values.size() != zb.derivs.size() || za.t0 != zb.t0 || za.t1 != zb.t1) {
        throw std::invalid_argument("grid mismatch between grid functions");
    }
}

double c1_distance(const GridFunction& za, const GridFunction& zb) {
    require_same_grid(za, zb);
    double m = 0.0;
    for (std::size_t i = 0; i < za.size(); ++i) {
        m = std::max(m, std::abs(za.values[i] - zb.values[i]));
        m = std::max(m, std::abs(za.derivs[i] - zb.derivs[i]));
    }
    return m;
}

DiffMetrics compare(const GridFunction& za, const GridFunction& zb) {
    require_same_grid(za, zb);
    DiffMetrics out;
    double ssv = 0.0, ssd = 0.0;
    const std::size_t n = za.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dv = za.values[i] - zb.values[i];
        const double dd = za.derivs[i] - zb.derivs[i];
        out.sup_values = std::max(out.sup_values, std::abs(dv));
        out.sup_derivs = std::max(out.sup_derivs, std::abs(dd));
        ssv += dv * dv;
        ssd += dd * dd;
    }
    out.rms_values = std::sqrt(ssv / static_cast<double>(n));
    out.rms_derivs = std::sqrt(ssd / static_cast<double>(n));
    return out;
}

}  // namespace rocketbvp
