#ifndef REFLBOUND_LAPLACIAN_HPP
#define REFLBOUND_LAPLACIAN_HPP

// Low end of the Laplace-Beltrami spectrum on a closed triangulated surface,
// discretized with piecewise-linear elements: cotangent stiffness K against
// lumped (diagonal) mass M, K x = lambda M x.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "reflbound/errors.hpp"
#include "reflbound/inequality.hpp"
#include "reflbound/mesh.hpp"

namespace reflbound::spectral {

struct SpectralResult {
    std::vector<double> eigenvalues; ///< ascending; eigenvalues[0] is the constant mode
    double area = 0;
    double lambda1 = 0;              ///< first eigenvalue above the zero-mode threshold
    int multiplicity1 = 0;
    int zero_modes = 0;
    int iterations = 0;
    double max_residual = 0;
};

struct EigenOptions {
    double tol = 1e-10;              ///< residual ||A y - theta y|| for unit y, A = M^-1/2 K M^-1/2
    int max_iterations = 1000;
    int guard_vectors = 4;           ///< extra block columns beyond the wanted pairs
    double zero_mode_ratio = 1e-8;   ///< below ratio * (largest wanted eigenvalue) counts as zero
    double multiplicity_rel_tol = 1e-6;
    std::uint64_t seed = 0x5eed;
    double area_floor = default_area_floor;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Cotangent stiffness: K_ij = -(cot a_ij + cot b_ij) / 2 over the two
/// angles opposite edge ij, K_ii = -sum_j K_ij.
inline SparseMatrix cotangent_stiffness(const TriangleMesh& mesh)
{
    const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(mesh.triangles.size() * 12);
    for (const auto& t : mesh.triangles) {
        for (int corner = 0; corner < 3; ++corner) {
            const int o = t[corner];
            const int i = t[(corner + 1) % 3];
            const int j = t[(corner + 2) % 3];
            const Point u = mesh.vertices[i] - mesh.vertices[o];
            const Point v = mesh.vertices[j] - mesh.vertices[o];
            const double w = 0.5 * u.dot(v) / u.cross(v).norm();
            entries.emplace_back(i, j, -w);
            entries.emplace_back(j, i, -w);
            entries.emplace_back(i, i, w);
            entries.emplace_back(j, j, w);
        }
    }
    SparseMatrix k(n, n);
    k.setFromTriplets(entries.begin(), entries.end());
    return k;
}

/// Lumped mass: a third of the area of each incident triangle.
inline Eigen::VectorXd lumped_mass(const TriangleMesh& mesh)
{
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertices.size()));
    for (const auto& t : mesh.triangles) {
        const double a = triangle_area(mesh, t) / 3.0;
        for (int v : t) {
            m[v] += a;
        }
    }
    return m;
}

namespace detail {

inline void orthogonalize_against(Eigen::MatrixXd& block, const Eigen::VectorXd& unit)
{
    block -= unit * (unit.transpose() * block);
}

inline Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& block)
{
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
    return qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
}

} // namespace detail

/// First k generalized eigenvalues of (K, M) by block shift-invert
/// iteration on the symmetric form A = M^-1/2 K M^-1/2 with Rayleigh-Ritz
/// projection. The constant vector spans ker K and is deflated exactly.
inline SpectralResult laplace_spectrum(const TriangleMesh& mesh, int k,
                                       const EigenOptions& options = {})
{
    validate_mesh(mesh, options.area_floor);
    const auto n = static_cast<Eigen::Index>(mesh.vertices.size());
    if (k < 1 || k > n - 1) {
        throw domain_error("laplace_spectrum: k must be in [1, vertex count - 1]");
    }
    if (!(options.tol > 0)) {
        throw domain_error("laplace_spectrum: tolerance must be positive");
    }

    const SparseMatrix stiffness = cotangent_stiffness(mesh);
    const Eigen::VectorXd mass = lumped_mass(mesh);
    const Eigen::VectorXd inv_sqrt_mass = mass.cwiseSqrt().cwiseInverse();
    const SparseMatrix a = inv_sqrt_mass.asDiagonal() * stiffness * inv_sqrt_mass.asDiagonal();

    // Wanted nonzero pairs; at least one so lambda1 is always defined.
    const auto wanted = static_cast<Eigen::Index>(std::max(k - 1, 1));
    const Eigen::Index block = std::min<Eigen::Index>(n - 1, 2 * wanted + options.guard_vectors);

    // Negative shift keeps A - shift*I positive definite; scale it with the
    // mean diagonal so a rescaled mesh sees the same relative shift.
    const double shift = -1e-3 * a.diagonal().mean();
    SparseMatrix shifted = a;
    for (Eigen::Index i = 0; i < n; ++i) {
        shifted.coeffRef(i, i) -= shift;
    }
    Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
    if (solver.info() != Eigen::Success) {
        throw convergence_error("laplace_spectrum: factorization of the shifted operator failed");
    }

    Eigen::VectorXd constant = mass.cwiseSqrt();
    constant.normalize();

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd x(n, block);
    for (Eigen::Index j = 0; j < block; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, j) = gauss(rng);
        }
    }
    detail::orthogonalize_against(x, constant);
    x = detail::orthonormal_basis(x);

    Eigen::VectorXd theta;
    double max_residual = 0;
    int iteration = 0;
    for (;; ++iteration) {
        if (iteration >= options.max_iterations) {
            throw convergence_error("laplace_spectrum: residual " + std::to_string(max_residual) +
                                    " above tolerance after " +
                                    std::to_string(options.max_iterations) + " iterations");
        }
        Eigen::MatrixXd y = solver.solve(x);
        detail::orthogonalize_against(y, constant);
        y = detail::orthonormal_basis(y);
        detail::orthogonalize_against(y, constant);

        const Eigen::MatrixXd ay = a * y;
        Eigen::MatrixXd projected = y.transpose() * ay;
        projected = 0.5 * (projected + projected.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(projected);
        theta = ritz.eigenvalues();
        x = y * ritz.eigenvectors();
        const Eigen::MatrixXd ax = ay * ritz.eigenvectors();

        max_residual = 0;
        for (Eigen::Index j = 0; j < wanted; ++j) {
            const double r = (ax.col(j) - theta[j] * x.col(j)).norm();
            max_residual = std::max(max_residual, r);
        }
        if (max_residual < options.tol) {
            break;
        }
    }

    SpectralResult result;
    result.area = mass.sum();
    result.iterations = iteration + 1;
    result.max_residual = max_residual;

    std::vector<double> all;
    all.push_back(constant.dot(a * constant));
    for (Eigen::Index j = 0; j < wanted; ++j) {
        all.push_back(theta[j]);
    }
    std::sort(all.begin(), all.end());

    const double threshold = options.zero_mode_ratio * all.back();
    const auto first_nonzero = std::find_if(all.begin(), all.end(),
                                            [&](double v) { return v >= threshold; });
    if (first_nonzero == all.end() || !(*first_nonzero > 0)) {
        throw convergence_error("laplace_spectrum: no nonzero eigenvalue found");
    }
    result.zero_modes = static_cast<int>(first_nonzero - all.begin());
    result.lambda1 = *first_nonzero;
    all.resize(static_cast<std::size_t>(k));
    result.eigenvalues = std::move(all);
    result.multiplicity1 = static_cast<int>(std::count_if(
        result.eigenvalues.begin(), result.eigenvalues.end(), [&](double v) {
            return std::abs(v - result.lambda1) <= options.multiplicity_rel_tol * result.lambda1;
        }));
    return result;
}

struct SaturationCheck {
    InequalityCheck<double> check;
    SpectralResult spectrum;
    int depth = 0;
    std::size_t n_vertices = 0;
    double tol = 0;
    bool within_tolerance = false; ///< slack >= -tol
};

/// Runs the inequality on a discretized round sphere. The continuum slack
/// is exactly zero (lambda1 = 2, Vol = Vc = 4 pi); the discrete slack is
/// accepted down to -tol.
inline SaturationCheck verify_sphere_saturation(int depth, double tol, double conf_vol,
                                                int k = 5, const EigenOptions& options = {})
{
    SaturationCheck out;
    const TriangleMesh mesh = build_icosphere(depth);
    out.depth = depth;
    out.n_vertices = mesh.vertices.size();
    out.tol = tol;
    out.spectrum = laplace_spectrum(mesh, k, options);
    out.check = li_yau_slack(out.spectrum.lambda1, mesh_area(mesh), 2, conf_vol);
    out.within_tolerance = out.check.slack >= -tol;
    return out;
}

inline SaturationCheck verify_sphere_saturation(int depth, double tol)
{
    return verify_sphere_saturation(depth, tol, 4.0 * std::numbers::pi);
}

} // namespace reflbound::spectral

#endif // REFLBOUND_LAPLACIAN_HPP
