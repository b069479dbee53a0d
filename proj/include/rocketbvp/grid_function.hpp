#pragma once

#include <cstddef>
#include <vector>

namespace rocketbvp {

/// Candidate solution on a uniform time grid, carried in C1 form: values and
/// first-derivative samples are independent fields (the operator propagates
/// derivatives analytically, it never differentiates `values`).
struct GridFunction {
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> values;  ///< z_i [m]
    std::vector<double> derivs;  ///< zdot_i [m/s]

    std::size_t size() const { return values.size(); }
    double step() const { return (t1 - t0) / static_cast<double>(size() - 1); }
    double node(std::size_t i) const {
        return i + 1 == size() ? t1 : t0 + static_cast<double>(i) * step();
    }

    static GridFunction zeros(double t0, double t1, std::size_t n);
};

/// C1 norm: max over nodes of {|z_i|, |zdot_i|} (mixed m and m/s).
double c1_norm(const GridFunction& z);

/// C1 norm of the difference; throws std::invalid_argument on grid mismatch.
double c1_distance(const GridFunction& za, const GridFunction& zb);

struct DiffMetrics {
    double sup_values = 0.0;
    double sup_derivs = 0.0;
    double rms_values = 0.0;
    double rms_derivs = 0.0;
};

/// Nodewise sup and rms differences; throws std::invalid_argument on grid mismatch.
DiffMetrics compare(const GridFunction& za, const GridFunction& zb);

/// Throws std::invalid_argument unless both functions share grid and shape.
void require_same_grid(const GridFunction& za, const GridFunction& zb);

}  // namespace rocketbvp
