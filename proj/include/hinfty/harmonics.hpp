#pragma once

#include <functional>
#include <vector>

#include "hinfty/quadspace.hpp"

namespace hinfty {

/// Dimension p_k of the degree-k harmonics on S^{n-1}.
long long dim_hk(int n, int k);
/// Binomial coefficient as a double-free integer (small arguments only).
long long binom(int n, int k);

/// Nodes and weights on [-1,1] for the normalized weight (1-x^2)^{(n-3)/2}.
struct ZonalRule {
    Vec x;
    Vec w;
    /// theta = arccos x, filled by composite theta rules only.
    Vec theta;
    /// Polynomial exactness degree (0 for composite rules).
    int exact_degree = 0;
};

/// Gauss rule with `order` nodes; exact up to degree 2*order-1.
ZonalRule zonal_quadrature(int n, int order);

/// Composite Gauss-Legendre rule in theta = arccos x, graded towards
/// theta = 0 down to the scale theta_c. Meant for integrands concentrated
/// near x = 1, like Poisson kernels far from the basepoint.
ZonalRule zonal_theta_rule(int n, double theta_c, int nodes_per_panel = 24, double panel = 0.05);

/// Orthonormal zonal functions Z_0..Z_K built from the three-term recurrence
/// x Z_k = b_{k+1} Z_{k+1} + b_k Z_{k-1}.
class ZonalBasis {
public:
    ZonalBasis(int n, int K);

    int n() const { return n_; }
    int K() const { return K_; }
    /// Recurrence coefficient b_k, k >= 1.
    double beta(int k) const { return beta_[k]; }

    /// Values Z_0(x)..Z_K(x).
    Vec eval(double x) const;
    /// Rows: nodes, columns: degrees.
    Mat eval(const Vec& x) const;

private:
    int n_;
    int K_;
    std::vector<double> beta_;
};

/// Recurrence coefficient b_k of the zonal basis for dimension n.
double zonal_beta(int n, int k);

struct ZonalCoeffs {
    int n = 2;
    int K = 0;
    Vec a;
};

struct ZonalProjection {
    ZonalCoeffs coeffs;
    /// ||f||^2 - sum a_k^2 under the same rule.
    double parseval_defect = 0.0;
};

/// a_k = <f, Z_k>. Throws when a Gauss rule of order < 2K is requested.
ZonalProjection zonal_project(const std::function<double(double)>& f, const ZonalBasis& basis, int order);
/// Projection with an explicit rule (composite rules skip the order guard).
ZonalProjection zonal_project(const std::function<double(double)>& f, const ZonalBasis& basis,
                              const ZonalRule& rule);

double synthesize(const ZonalCoeffs& c, double x);

/// Quadrature on S^{n-1} for n in {2,3} with normalized weights.
struct SphereGrid {
    int n = 2;
    /// One node per row.
    Mat nodes;
    Vec w;
    int exact_degree = 0;
};

/// Grid exact for polynomials of degree <= degree.
SphereGrid sphere_grid(int n, int degree);

/// Real orthonormal basis of the harmonics of degree <= K on S^{n-1}, n in {2,3}.
/// Ordering: block k occupies [offset(k), offset(k) + p_k); inside a block the
/// zonal (or cosine) function about e_1 comes first.
class SphBasis {
public:
    SphBasis(int n, int K);

    int n() const { return n_; }
    int K() const { return K_; }
    int size() const { return size_; }
    int offset(int k) const { return offset_[k]; }
    int block_size(int k) const { return offset_[k + 1] - offset_[k]; }
    int degree_of(int index) const { return degree_[index]; }

    Vec eval(const Vec& b) const;
    /// Rows: points, columns: basis functions.
    Mat eval(const Mat& points) const;

    /// Coefficients of the zonal function sum a_k Z_k(<c, .>) centred at c.
    Vec rotate_zonal(const Vec& a, const Vec& c) const;

private:
    int n_;
    int K_;
    int size_;
    std::vector<int> offset_;
    std::vector<int> degree_;
};

} // namespace hinfty
