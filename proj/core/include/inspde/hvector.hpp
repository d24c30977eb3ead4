#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace inspde {

/// Element of the state space in spectral coordinates: x = sum_k coeffs[k] e_k.
/// The Euclidean norm of the coefficients is the Hilbert norm (Parseval).
struct HVector {
    std::vector<double> coeffs;

    HVector() = default;
    explicit HVector(std::size_t n, double fill = 0.0) : coeffs(n, fill) {}
    HVector(std::initializer_list<double> init) : coeffs(init) {}

    std::size_t size() const { return coeffs.size(); }
    double operator[](std::size_t k) const { return coeffs[k]; }
    double& operator[](std::size_t k) { return coeffs[k]; }

    double norm() const {
        double s = 0.0;
        for (double c : coeffs) s += c * c;
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (double c : coeffs)
            if (!std::isfinite(c)) return false;
        return true;
    }
};

inline HVector operator+(const HVector& a, const HVector& b) {
    HVector r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline HVector operator-(const HVector& a, const HVector& b) {
    HVector r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

inline HVector operator*(double s, const HVector& a) {
    HVector r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = s * a[k];
    return r;
}

inline HVector& operator+=(HVector& a, const HVector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

inline double distance(const HVector& a, const HVector& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace inspde
