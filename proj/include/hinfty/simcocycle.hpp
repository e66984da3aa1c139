#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hinfty/quadspace.hpp"

namespace hinfty {

using cplx = std::complex<double>;
using Field = std::function<cplx(const Vec&)>;

/// S_{lambda,v,A}: x -> lambda A x + v on R^l.
struct Similarity {
    double lambda = 1.0;
    Vec v;
    Mat A;

    static Similarity identity(int l);
    static Similarity make(double lambda, const Vec& v, const Mat& A);
    int dim() const { return static_cast<int>(v.size()); }
    Vec operator()(const Vec& x) const { return lambda * (A * x) + v; }
};

/// Composition S1 S2 (apply S2 first).
Similarity compose(const Similarity& s1, const Similarity& s2);

/// Quadrature for integrals over R^l restricted to r_min <= |y| <= r_max:
/// composite Gauss-Legendre in log r times an angular rule on S^{l-1}.
struct RadialGrid {
    int l = 1;
    double r_min = 1e-4;
    double r_max = 1e4;
    Vec r;
    /// Weights for int g(r) r^{l-1} dr.
    Vec wr;
    /// Unit directions, one per row.
    Mat dirs;
    /// Angular weights summing to |S^{l-1}|.
    Vec wa;
    /// Number of angle samples per circle (l = 2, 3) used by interpolation.
    int nphi = 0;

    Eigen::Index size() const { return r.size() * dirs.rows(); }
    Vec point(Eigen::Index i) const;
    double weight(Eigen::Index i) const;
};

RadialGrid make_radial_grid(int l, double r_min = 1e-4, double r_max = 1e4, int panels_per_decade = 4,
                            int angular = 32);

double sphere_area(int l);

std::vector<cplx> sample(const Field& f, const RadialGrid& g);
double norm_sq(const Field& f, const RadialGrid& g);

/// Values on a grid, read back by interpolation: 4-point Lagrange in log r and,
/// for l = 2, periodic 4-point Lagrange in the angle. l in {1, 2}.
Field tabulated(const RadialGrid& g, std::vector<cplx> values);

/// (pi_0(S) f)(y) = lambda^{l/2} e^{i<y,v>} f(lambda A^{-1} y).
Field pi0_apply(int l, const Similarity& s, Field f);

/// (e^{i<y,v>} - 1) / |y|^{t + l/2}.
cplx ctilde(int l, double t, const Similarity& s, const Vec& y);
Field ctilde_field(int l, double t, const Similarity& s);

/// sup over grid of |c(S1 S2) - c(S1) - lambda_1^t pi_0(S1) c(S2)|.
double cocycle_residual(int l, double t, const Similarity& s1, const Similarity& s2, const RadialGrid& g);

/// alpha_t(S) x = lambda^t pi_0(S) x + c(S).
Field affine_apply(int l, double t, const Similarity& s, Field x);
/// sup over grid of |alpha(S1 S2) x - alpha(S1) alpha(S2) x|.
double affine_residual(int l, double t, const Similarity& s1, const Similarity& s2, const Field& x,
                       const RadialGrid& g);

/// sup over grid of |conj(c(S)(-y)) - c(S)(y)|: c is fixed by the real structure.
double involution_defect(int l, double t, const Similarity& s, const RadialGrid& g);

struct CnormResult {
    double value = 0.0;
    /// Quadrature part over [r_min, r_max].
    double window = 0.0;
    double tail_small = 0.0;
    double tail_large = 0.0;
    /// Bound on the neglected oscillatory part beyond r_max.
    double tail_bound = 0.0;
};

/// ||c(S_{1,v,Id})||^2 = int |e^{i<y,v>} - 1|^2 / |y|^{2t+l} dy, t in (0,1).
CnormResult cnorm_sq(int l, double t, const Vec& v, double r_min = 1e-4, double r_max = 1e4);
/// The same integrand over r_min <= |y| <= r_max only; any t > 0.
double cnorm_sq_window(int l, double t, const Vec& v, double r_min, double r_max);

/// Least-squares slope of log cnorm_sq against log |v| along the direction of v.
double cnorm_power_slope(int l, double t, const std::vector<double>& scales);

/// int over r_min <= |y| <= r_max of |y|^{-2t-l}, the squared norm of the
/// formal primitive 1/|y|^{t+l/2}, by RadialGrid quadrature.
double primitive_norm_sq_window(int l, double t, double r_min, double r_max);

} // namespace hinfty
