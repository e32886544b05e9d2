#pragma once

#include <cstddef>
#include <vector>

namespace slcyl {

/// Deterministic low-discrepancy points on S^{n-1} in R^n. For n = 3 this is
/// the spherical Fibonacci lattice; otherwise an R_d Kronecker sequence pushed
/// through the Gaussian inverse CDF and normalised.
std::vector<std::vector<double>> sphere_points(std::size_t n, std::size_t count);

/// Orthonormal basis of the tangent space of S^{n-1} at sigma.
std::vector<std::vector<double>> sphere_tangent_basis(const std::vector<double>& sigma);

/// normalize(sigma + sum_j s_j e_j) with e_j the tangent basis at sigma.
std::vector<double> sphere_chart(const std::vector<double>& sigma,
                                 const std::vector<std::vector<double>>& basis,
                                 const double* s);

double norm2(const std::vector<double>& v);
std::vector<double> normalized(std::vector<double> v);

}  // namespace slcyl
