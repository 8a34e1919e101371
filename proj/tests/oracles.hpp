#pragma once

// Independent reference computations used by the tests. They work on raw
// matrices and never call the library's bracket or coadjoint code.

#include "poincare/lie_core.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

using poincare::LieAlgebra;
using poincare::Mat;
using poincare::Vec;

// Jacobi-Lie bracket [X, Y](g) = DY(g) X(g) - DX(g) Y(g) of the right-invariant
// fields X(g) = hat(xi) g, Y(g) = hat(eta) g, with both Jacobians taken by
// central differences in the ambient matrix space; returned right-translated
// back to the algebra.
inline Vec field_bracket(const LieAlgebra& a, const Vec& xi, const Vec& eta, const Mat& g, double h = 1e-4) {
    auto X = [&](const Mat& q) { return Mat(a.hat(xi) * q); };
    auto Y = [&](const Mat& q) { return Mat(a.hat(eta) * q); };
    const Mat DYX = (Y(g + h * X(g)) - Y(g - h * X(g))) / (2 * h);
    const Mat DXY = (X(g + h * Y(g)) - X(g - h * Y(g))) / (2 * h);
    return a.vee((DYX - DXY) * g.inverse());
}

// <ad*_xi mu, e_k> = <mu, [xi, e_k]>, bracket read off the matrix oracle.
inline Vec coadjoint_by_pairing(const LieAlgebra& a, const Vec& xi, const Vec& mu, const Mat& g) {
    Vec r(a.dim());
    for (int k = 0; k < a.dim(); ++k) r[k] = mu.dot(field_bracket(a, xi, Vec::Unit(a.dim(), k), g));
    return r;
}

inline Mat rodrigues(const Eigen::Vector3d& w) {
    const double t = w.norm();
    Mat K(3, 3);
    K << 0, -w[2], w[1], w[2], 0, -w[0], -w[1], w[0], 0;
    if (t == 0) return Mat::Identity(3, 3);
    return Mat::Identity(3, 3) + std::sin(t) / t * K + (1 - std::cos(t)) / (t * t) * K * K;
}

// Five-point derivative of a vector-valued function of one variable.
template <class F>
inline Vec d5(F&& f, double h = 1e-3) {
    return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}

}  // namespace oracle
