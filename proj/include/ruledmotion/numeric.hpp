#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ruledmotion/polynomial.hpp"

namespace ruledmotion {

// Roots of a real polynomial as eigenvalues of its companion matrix.
inline std::vector<std::complex<double>> poly_roots(const FPoly& p) {
    const int n = p.degree();
    if (n <= 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = p.lc();
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -p.coeff(i) / lead;
        if (i > 0) companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

struct LstsqResult {
    Eigen::VectorXd x;   // minimum-norm least-squares solution
    int rank = 0;
    double residual = 0; // ||A x - b||_inf
};

inline LstsqResult lstsq_min_norm(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                  double rank_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rank_tol);
    LstsqResult out;
    out.x = svd.solve(b);
    out.rank = static_cast<int>(svd.rank());
    out.residual = (A * out.x - b).lpNorm<Eigen::Infinity>();
    return out;
}

// Numerical stand-in for the exact square test: clusters the roots and checks
// that every cluster has even size and the leading coefficient is positive.
inline bool roots_have_even_multiplicities(const FPoly& p, double tol = 1e-6) {
    if (p.is_zero()) return false;
    if (p.lc() <= 0 && p.degree() % 2 == 0) return false;
    if (p.is_constant()) return p.lc() > 0;
    auto roots = poly_roots(p);
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        int count = 0;
        for (size_t j = i; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= tol * scale) {
                used[j] = true;
                ++count;
            }
        }
        if (count % 2 != 0) return false;
    }
    return true;
}

}  // namespace ruledmotion
