#pragma once

#include "poincare/lie_core.hpp"

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

namespace poincare {

namespace detail {

// Fills C from entries [e_i, e_j] = v e_k (and the antisymmetric partner).
inline std::vector<double> structure_from(int n, std::initializer_list<std::tuple<int, int, int, double>> rel) {
    std::vector<double> C(n * n * n, 0.0);
    for (auto [i, j, k, v] : rel) {
        C[(k * n + i) * n + j] = v;
        C[(k * n + j) * n + i] = -v;
    }
    return C;
}

inline Mat unit(int m, int r, int c, double v = 1.0) {
    Mat E = Mat::Zero(m, m);
    E(r, c) = v;
    return E;
}

}  // namespace detail

inline LieAlgebra abelian(int n) {
    std::vector<Mat> basis;
    for (int i = 0; i < n; ++i) basis.push_back(detail::unit(n + 1, i, n));
    return LieAlgebra("abelian" + std::to_string(n), n, std::vector<double>(n * n * n, 0.0), basis);
}

inline LieAlgebra so3() {
    using detail::unit;
    std::vector<Mat> basis = {
        unit(3, 2, 1) - unit(3, 1, 2),
        unit(3, 0, 2) - unit(3, 2, 0),
        unit(3, 1, 0) - unit(3, 0, 1),
    };
    auto C = detail::structure_from(3, {{0, 1, 2, -1.0}, {1, 2, 0, -1.0}, {2, 0, 1, -1.0}});
    return LieAlgebra("so3", 3, C, basis, "orthogonal");
}

inline LieAlgebra h3() {
    using detail::unit;
    std::vector<Mat> basis = {unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)};
    auto C = detail::structure_from(3, {{0, 1, 2, -1.0}});
    return LieAlgebra("h3", 3, C, basis, "unimodular");
}

inline LieAlgebra se2() {
    using detail::unit;
    std::vector<Mat> basis = {unit(3, 1, 0) - unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2)};
    auto C = detail::structure_from(3, {{0, 1, 2, -1.0}, {0, 2, 1, 1.0}});
    return LieAlgebra("se2", 3, C, basis, "unimodular");
}

inline LieAlgebra sl2() {
    using detail::unit;
    std::vector<Mat> basis = {unit(2, 0, 0) - unit(2, 1, 1), unit(2, 0, 1), unit(2, 1, 0)};
    // h, x, y with matrix relations [H,X]=2X, [H,Y]=-2Y, [X,Y]=H
    std::vector<double> C(27, 0.0);
    auto set = [&](int i, int j, int k, double v) {
        C[(k * 3 + i) * 3 + j] = v;
        C[(k * 3 + j) * 3 + i] = -v;
    };
    set(0, 1, 1, -2.0);
    set(0, 2, 2, 2.0);
    set(1, 2, 0, -1.0);
    return LieAlgebra("sl2", 3, C, basis, "unimodular");
}

inline std::vector<std::string> shipped_algebra_names() {
    return {"abelian3", "so3", "h3", "se2", "sl2"};
}

inline LieAlgebra algebra_by_name(const std::string& name) {
    if (name == "so3") return so3();
    if (name == "h3") return h3();
    if (name == "se2") return se2();
    if (name == "sl2") return sl2();
    if (name.rfind("abelian", 0) == 0) {
        const std::string tail = name.substr(7);
        return abelian(tail.empty() ? 3 : std::stoi(tail));
    }
    throw std::invalid_argument("unknown algebra '" + name + "'");
}

}  // namespace poincare
