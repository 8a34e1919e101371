#pragma once

#include "poincare/lie_core.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace poincare {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline LieAlgebra algebra_from_json(const nlohmann::json& j) {
    try {
        const std::string name = j.at("name").get<std::string>();
        const int n = j.at("dim").get<int>();
        const auto& S = j.at("structure");
        if (!S.is_array() || static_cast<int>(S.size()) != n)
            throw config_error("structure must be a dim x dim x dim array");
        std::vector<double> C(n * n * n);
        for (int k = 0; k < n; ++k) {
            if (static_cast<int>(S[k].size()) != n) throw config_error("structure row has wrong length");
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(S[k][i].size()) != n) throw config_error("structure row has wrong length");
                for (int jj = 0; jj < n; ++jj) C[(k * n + i) * n + jj] = S[k][i][jj].get<double>();
            }
        }
        std::vector<Mat> basis;
        if (j.contains("basis") && !j["basis"].is_null()) {
            const int m = j.at("matrix_size").get<int>();
            for (const auto& B : j["basis"]) {
                Mat E(m, m);
                if (static_cast<int>(B.size()) != m) throw config_error("basis matrix has wrong size");
                for (int r = 0; r < m; ++r) {
                    if (static_cast<int>(B[r].size()) != m) throw config_error("basis matrix has wrong size");
                    for (int c = 0; c < m; ++c) E(r, c) = B[r][c].get<double>();
                }
                basis.push_back(E);
            }
        }
        const std::string constraint = j.value("constraint", std::string("none"));
        LieAlgebra a(name, n, C, basis, constraint);
        if (auto err = validate(a)) throw config_error("algebra '" + name + "' rejected: " + *err);
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed algebra file: ") + e.what());
    } catch (const dimension_error& e) {
        throw config_error(std::string("malformed algebra file: ") + e.what());
    }
}

inline nlohmann::json algebra_to_json(const LieAlgebra& a) {
    const int n = a.dim();
    nlohmann::json S = nlohmann::json::array();
    for (int k = 0; k < n; ++k) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int jj = 0; jj < n; ++jj) row.push_back(a.c(k, i, jj));
            rows.push_back(row);
        }
        S.push_back(rows);
    }
    nlohmann::json j{{"name", a.name()}, {"dim", n}, {"structure", S}};
    if (a.has_basis()) {
        nlohmann::json B = nlohmann::json::array();
        for (const auto& E : a.basis()) {
            nlohmann::json M = nlohmann::json::array();
            for (int r = 0; r < E.rows(); ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (int c = 0; c < E.cols(); ++c) row.push_back(E(r, c));
                M.push_back(row);
            }
            B.push_back(M);
        }
        j["basis"] = B;
        j["matrix_size"] = a.matrix_size();
    }
    j["constraint"] = a.constraint();
    return j;
}

inline LieAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open algebra file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("cannot parse '" + path + "': " + e.what());
    }
    return algebra_from_json(j);
}

}  // namespace poincare
