#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poincare {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-dimensional Lie algebra with structure constants of the right bracket,
// [e_i, e_j] = sum_k C[k][i][j] e_k, and an optional matrix basis (hat map).
class LieAlgebra {
public:
    LieAlgebra() = default;

    LieAlgebra(std::string name, int dim, std::vector<double> structure,
               std::vector<Mat> basis = {}, std::string constraint = "none")
        : name_(std::move(name)), n_(dim), C_(std::move(structure)),
          basis_(std::move(basis)), constraint_(std::move(constraint)) {
        if (n_ <= 0) throw dimension_error("algebra dimension must be positive");
        if (C_.size() != static_cast<size_t>(n_ * n_ * n_))
            throw dimension_error("structure tensor must have dim^3 entries");
        if (!basis_.empty()) {
            if (basis_.size() != static_cast<size_t>(n_))
                throw dimension_error("basis must have dim matrices");
            m_ = static_cast<int>(basis_[0].rows());
            B_.resize(m_ * m_, n_);
            for (int i = 0; i < n_; ++i) {
                if (basis_[i].rows() != m_ || basis_[i].cols() != m_)
                    throw dimension_error("basis matrices must be square of equal size");
                B_.col(i) = Eigen::Map<const Vec>(basis_[i].data(), m_ * m_);
            }
            pinv_ = B_.completeOrthogonalDecomposition().pseudoInverse();
        }
    }

    const std::string& name() const { return name_; }
    int dim() const { return n_; }
    int matrix_size() const { return m_; }
    bool has_basis() const { return !basis_.empty(); }
    const std::vector<Mat>& basis() const { return basis_; }
    const std::string& constraint() const { return constraint_; }
    const std::vector<double>& structure() const { return C_; }

    double c(int k, int i, int j) const { return C_[(k * n_ + i) * n_ + j]; }

    void require(const Vec& v, const char* what) const {
        if (v.size() != n_) {
            std::ostringstream os;
            os << what << ": expected length " << n_ << ", got " << v.size();
            throw dimension_error(os.str());
        }
    }

    void require_basis() const {
        if (basis_.empty()) throw std::logic_error("algebra '" + name_ + "' has no matrix basis");
    }

    Mat hat(const Vec& xi) const {
        require_basis();
        require(xi, "hat");
        Vec v = B_ * xi;
        return Eigen::Map<const Mat>(v.data(), m_, m_);
    }

    Vec vee(const Mat& M, double tol = 1e-9) const {
        require_basis();
        Eigen::Map<const Vec> v(M.data(), m_ * m_);
        Vec x = pinv_ * v;
        double res = (B_ * x - v).norm();
        if (res > tol * std::max(1.0, v.norm())) {
            std::ostringstream os;
            os << "matrix outside span of algebra '" << name_ << "' (residual " << res << ")";
            throw numeric_error(os.str());
        }
        return x;
    }

private:
    std::string name_;
    int n_ = 0;
    int m_ = 0;
    std::vector<double> C_;
    std::vector<Mat> basis_;
    std::string constraint_ = "none";
    Mat B_;
    Mat pinv_;
};

inline void same_dim(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size()) throw dimension_error(std::string(what) + ": dimension mismatch");
}

// Matrix of ad_xi: column j is [xi, e_j].
inline Mat ad_matrix(const LieAlgebra& a, const Vec& xi) {
    a.require(xi, "ad");
    const int n = a.dim();
    Mat A = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (xi[i] == 0.0) continue;
            for (int j = 0; j < n; ++j) A(k, j) += a.c(k, i, j) * xi[i];
        }
    return A;
}

inline Vec bracket(const LieAlgebra& a, const Vec& xi, const Vec& eta) {
    a.require(eta, "bracket");
    return ad_matrix(a, xi) * eta;
}

// <ad*_xi mu, eta> = <mu, [xi, eta]>
inline Vec ad_star(const LieAlgebra& a, const Vec& xi, const Vec& mu) {
    a.require(mu, "ad_star");
    return ad_matrix(a, xi).transpose() * mu;
}

inline double pairing(const Vec& mu, const Vec& xi) {
    same_dim(mu, xi, "pairing");
    return mu.dot(xi);
}

inline Mat group_inverse(const Mat& g) {
    Eigen::FullPivLU<Mat> lu(g);
    if (!lu.isInvertible()) throw numeric_error("group element is singular");
    return lu.inverse();
}

// Ad_g xi = vee(g^{-1} hat(xi) g); right representation Ad_{hg} = Ad_g Ad_h.
inline Mat Ad_matrix(const LieAlgebra& a, const Mat& g) {
    const Mat gi = group_inverse(g);
    Mat A(a.dim(), a.dim());
    for (int j = 0; j < a.dim(); ++j) A.col(j) = a.vee(gi * a.basis()[j] * g);
    return A;
}

inline Vec Ad(const LieAlgebra& a, const Mat& g, const Vec& xi) {
    a.require(xi, "Ad");
    return a.vee(group_inverse(g) * a.hat(xi) * g);
}

// <Ad*_g mu, xi> = <mu, Ad_{g^{-1}} xi>
inline Vec Ad_star(const LieAlgebra& a, const Mat& g, const Vec& mu) {
    a.require(mu, "Ad_star");
    return Ad_matrix(a, group_inverse(g)).transpose() * mu;
}

inline Mat exp(const LieAlgebra& a, const Vec& xi) {
    a.require(xi, "exp");
    if (xi.isZero(0.0)) return Mat::Identity(a.matrix_size(), a.matrix_size());
    return a.hat(xi).exp();
}

inline Mat identity(const LieAlgebra& a) {
    a.require_basis();
    return Mat::Identity(a.matrix_size(), a.matrix_size());
}

inline double fd_step(double scale = 1.0) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, scale);
}

// <d, eta> = d/de f(exp(e eta) g) at e = 0, central differences.
inline Vec right_derivative(const LieAlgebra& a, const std::function<double(const Mat&)>& f,
                            const Mat& g) {
    const int n = a.dim();
    const double h = fd_step(g.norm());
    Vec d(n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = h;
        const double fp = f(exp(a, e) * g);
        const double fm = f(exp(a, -e) * g);
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw numeric_error("right_derivative: non-finite function value");
        d[i] = (fp - fm) / (2 * h);
    }
    return d;
}

// Distance of g from the group manifold for algebras with a known constraint.
inline double group_residual(const LieAlgebra& a, const Mat& g) {
    const auto& c = a.constraint();
    if (c == "orthogonal") {
        const Mat I = Mat::Identity(g.rows(), g.cols());
        return (g.transpose() * g - I).norm();
    }
    if (c == "unimodular") return std::abs(g.determinant() - 1.0);
    return 0.0;
}

// Returns a diagnostic naming the first violated identity, or nullopt.
inline std::optional<std::string> validate(const LieAlgebra& a, double tol = 1e-12) {
    const int n = a.dim();
    std::ostringstream os;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(a.c(k, i, j) + a.c(k, j, i)) > tol) {
                    os << "antisymmetry violated: C[" << k << "][" << i << "][" << j << "]";
                    return os.str();
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double s = 0;
                    for (int m = 0; m < n; ++m)
                        s += a.c(m, i, j) * a.c(l, m, k) + a.c(m, j, k) * a.c(l, m, i) +
                             a.c(m, k, i) * a.c(l, m, j);
                    if (std::abs(s) > tol) {
                        os << "Jacobi identity violated at (i,j,k,l)=(" << i << "," << j << ","
                           << k << "," << l << "), residual " << s;
                        return os.str();
                    }
                }
    if (a.has_basis()) {
        const auto& E = a.basis();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Mat comm = E[i] * E[j] - E[j] * E[i];
                Mat fromC = Mat::Zero(comm.rows(), comm.cols());
                for (int k = 0; k < n; ++k) fromC += a.c(k, i, j) * E[k];
                if ((fromC + comm).norm() > tol * std::max(1.0, comm.norm())) {
                    os << "basis sign violated: [e" << i << ",e" << j
                       << "] is not minus the matrix commutator";
                    return os.str();
                }
            }
    }
    return std::nullopt;
}

}  // namespace poincare
