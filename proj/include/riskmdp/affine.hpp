#pragma once

#include <cstddef>
#include <vector>

namespace riskmdp {

/// Affine scalar map theta -> intercept + coeffs . theta on the box [0,1]^d.
///
/// Every parameter dependence in the model (risk level, discount, mixture
/// weights, cost directions) is affine, so box-wide inequalities reduce to
/// checks at the extreme vertex selected coefficient-by-coefficient.
struct AffineMap {
    double intercept = 0.0;
    std::vector<double> coeffs;

    double operator()(const std::vector<double>& theta) const {
        double v = intercept;
        for (std::size_t j = 0; j < coeffs.size() && j < theta.size(); ++j)
            v += coeffs[j] * theta[j];
        return v;
    }

    /// Minimum over [0,1]^d (attained at the vertex with theta_j = 1 iff coeff_j < 0).
    double min_on_box() const {
        double v = intercept;
        for (double c : coeffs)
            if (c < 0.0) v += c;
        return v;
    }

    /// Maximum over [0,1]^d.
    double max_on_box() const {
        double v = intercept;
        for (double c : coeffs)
            if (c > 0.0) v += c;
        return v;
    }

    /// Sum of |coeffs|; a Lipschitz constant w.r.t. the l1 metric on theta.
    double l1_coeff_norm() const {
        double v = 0.0;
        for (double c : coeffs) v += c < 0.0 ? -c : c;
        return v;
    }

    static AffineMap constant(double value, std::size_t dim) {
        return AffineMap{value, std::vector<double>(dim, 0.0)};
    }
};

/// Enumerate the 2^d vertices of [0,1]^d in lexicographic bit order.
inline std::vector<std::vector<double>> box_vertices(std::size_t dim) {
    std::vector<std::vector<double>> out;
    out.reserve(std::size_t(1) << dim);
    for (std::size_t mask = 0; mask < (std::size_t(1) << dim); ++mask) {
        std::vector<double> v(dim, 0.0);
        for (std::size_t j = 0; j < dim; ++j)
            if (mask & (std::size_t(1) << j)) v[j] = 1.0;
        out.push_back(std::move(v));
    }
    return out;
}

/// l1 distance, the metric used on the parameter box throughout.
inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double t = a[j] - b[j];
        d += t < 0.0 ? -t : t;
    }
    return d;
}

} // namespace riskmdp
