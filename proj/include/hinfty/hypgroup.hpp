#pragma once

#include <random>

#include "hinfty/quadspace.hpp"

namespace hinfty {

/// g_{lambda,v,A}: stabilizer of the boundary point [xi_1].
struct ParabolicElement {
    double lambda = 1.0;
    Vec v;
    Mat A;
};

/// Change of basis between (e_1,...,e_{n+1}) and (xi_1, xi_2, e_3, ...).
/// The matrix is symmetric and its own inverse.
Mat xi_frame(int n);
/// Matrix written in the xi-basis, converted to canonical coordinates.
Mat from_xi_basis(const Mat& x);
Mat to_xi_basis(const Mat& m);

/// J M^T J.
Mat iso_inverse(const Mat& m);

Isometry g_par(int n, double lambda, const Vec& v, const Mat& A);
Isometry g_par(const ParabolicElement& p);
/// g_{e^u,0,Id}: translation by u along the e_2 axis.
Isometry g_geo(int n, double u);
Isometry sigma(int n);
/// Element of the stabilizer K of o = (1,0,...,0) acting by Q on R^n.
Isometry k_element(const Mat& q);

/// Product in P, matching matrix multiplication.
ParabolicElement compose(const ParabolicElement& a, const ParabolicElement& b);

/// x -> scale * A x + shift, the image of g_{lambda,v,A} in Sim(R^{n-1}).
struct SimilarityMap {
    double scale;
    Mat A;
    Vec shift;
    Vec operator()(const Vec& x) const { return scale * (A * x) + shift; }
};
SimilarityMap to_similarity(const ParabolicElement& p);

struct SigmaRelation {
    Vec w;
    double eta;
    Vec u;
    Mat A;
    double residual;
};

/// sigma g_{l,v} sigma g_{m,w} g_{l,v} sigma = g_{eta,u,A} with w solving
/// w/l + v = -2 J1 v / (l m |v|^2).
SigmaRelation sigma_relation(int n, double lambda, double mu, const Vec& v);

struct IwasawaResult {
    Isometry k;
    double lambda;
    Vec v;
    double residual;
};
/// g = k g_{lambda,v,Id}, k in K.
IwasawaResult iwasawa(const Isometry& g);

struct PolarResult {
    Isometry k;
    double u;
    Isometry kprime;
    double residual;
};
/// g = k g_u k', k and k' in K, u >= 0. k sends e_2 to the direction of g.o.
PolarResult polar(const Isometry& g);

/// |Jac(g)(b)| = (B(o,b)/B(g^{-1}o,b))^{n-1}.
double jacobian(const Mat& g, const BoundaryRay& b);
/// Poisson kernel (B(o,b)/B(g o,b))^{n-1} = |Jac(g^{-1})(b)|.
double poisson_kernel(const Mat& g, const BoundaryRay& b);

/// Action on S^{n-1} = boundary in Klein coordinates.
Vec act_boundary(const Mat& g, const Vec& b);

/// Haar-distributed orthogonal matrix.
Mat random_orthogonal(int dim, std::mt19937_64& rng);
/// Random word in the generators g_par and sigma.
Isometry random_element(int n, int words, std::mt19937_64& rng);

} // namespace hinfty
