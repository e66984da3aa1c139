#include "hinfty/simcocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hinfty/harmonics.hpp"

namespace hinfty {

namespace {

void check_l(int l)
{
    require(l >= 1, "similarity dimension must be >= 1");
}

/// e^{i theta} - 1 without cancellation for small theta.
cplx expm1i(double theta)
{
    const double s = std::sin(0.5 * theta);
    return {-2.0 * s * s, std::sin(theta)};
}

Vec gl_nodes(int m, Vec& w)
{
    const ZonalRule r = zonal_quadrature(3, m);
    w = 2.0 * r.w;
    return r.x;
}

/// 4-point Lagrange weights at x for nodes xs[0..3].
void lagrange4(const double* xs, double x, double* out)
{
    for (int i = 0; i < 4; ++i) {
        double v = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i)
                v *= (x - xs[j]) / (xs[i] - xs[j]);
        out[i] = v;
    }
}

/// 1 - (angular average of cos(rho <w, e>)) over S^{l-1}.
double one_minus_avg(int l, double rho)
{
    switch (l) {
    case 1: {
        const double s = std::sin(0.5 * rho);
        return 2.0 * s * s;
    }
    case 2:
        if (rho < 1e-2) {
            const double r2 = rho * rho;
            return r2 / 4.0 - r2 * r2 / 64.0 + r2 * r2 * r2 / 2304.0;
        }
        return 1.0 - std::cyl_bessel_j(0.0, rho);
    case 3:
        if (rho < 1e-2) {
            const double r2 = rho * rho;
            return r2 / 6.0 - r2 * r2 / 120.0 + r2 * r2 * r2 / 5040.0;
        }
        return 1.0 - std::sin(rho) / rho;
    default:
        throw ConfigError("cnorm_sq: radial reduction implemented for l <= 3");
    }
}

} // namespace

Similarity Similarity::identity(int l)
{
    check_l(l);
    return {1.0, Vec::Zero(l), Mat::Identity(l, l)};
}

Similarity Similarity::make(double lambda, const Vec& v, const Mat& A)
{
    const int l = static_cast<int>(v.size());
    check_l(l);
    require(lambda > 0, "Similarity: lambda must be positive");
    require(A.rows() == l && A.cols() == l, "Similarity: A must be l x l");
    require((A.transpose() * A - Mat::Identity(l, l)).cwiseAbs().maxCoeff() < 1e-12, "Similarity: A must be orthogonal");
    return {lambda, v, A};
}

Similarity compose(const Similarity& s1, const Similarity& s2)
{
    require(s1.dim() == s2.dim(), "compose: dimension mismatch");
    return {s1.lambda * s2.lambda, s1.lambda * (s1.A * s2.v) + s1.v, s1.A * s2.A};
}

double sphere_area(int l)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * l) / std::tgamma(0.5 * l);
}

Vec RadialGrid::point(Eigen::Index i) const
{
    const Eigen::Index na = dirs.rows();
    return r[i / na] * dirs.row(i % na).transpose();
}

double RadialGrid::weight(Eigen::Index i) const
{
    const Eigen::Index na = dirs.rows();
    return wr[i / na] * wa[i % na];
}

RadialGrid make_radial_grid(int l, double r_min, double r_max, int panels_per_decade, int angular)
{
    require(l >= 1 && l <= 3, "RadialGrid: angular quadrature implemented for l in {1,2,3}");
    require(r_min > 0 && r_max > r_min, "RadialGrid: need 0 < r_min < r_max");
    require(panels_per_decade >= 1 && angular >= 4, "RadialGrid: resolution too small");
    RadialGrid g;
    g.l = l;
    g.r_min = r_min;
    g.r_max = r_max;
    Vec glw;
    const Vec glx = gl_nodes(8, glw);
    const double lo = std::log(r_min), hi = std::log(r_max);
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / std::log(10.0) * panels_per_decade)));
    const double h = (hi - lo) / panels;
    g.r.resize(panels * 8);
    g.wr.resize(panels * 8);
    for (int p = 0; p < panels; ++p)
        for (int i = 0; i < 8; ++i) {
            const double s = lo + h * (p + 0.5 + 0.5 * glx[i]);
            const double r = std::exp(s);
            g.r[p * 8 + i] = r;
            // dr r^{l-1} = r^l ds.
            g.wr[p * 8 + i] = 0.5 * h * glw[i] * std::pow(r, l);
        }
    if (l == 1) {
        g.dirs.resize(2, 1);
        g.dirs << 1.0, -1.0;
        g.wa = Vec::Ones(2);
        return g;
    }
    g.nphi = angular;
    if (l == 2) {
        g.dirs.resize(angular, 2);
        g.wa = Vec::Constant(angular, 2.0 * std::numbers::pi / angular);
        for (int j = 0; j < angular; ++j) {
            const double a = 2.0 * std::numbers::pi * j / angular;
            g.dirs(j, 0) = std::cos(a);
            g.dirs(j, 1) = std::sin(a);
        }
        return g;
    }
    const int nth = angular / 2;
    const ZonalRule leg = zonal_quadrature(3, nth);
    g.dirs.resize(nth * angular, 3);
    g.wa.resize(nth * angular);
    for (int i = 0; i < nth; ++i) {
        const double x = leg.x[i], s = std::sqrt(1.0 - x * x);
        for (int j = 0; j < angular; ++j) {
            const double a = 2.0 * std::numbers::pi * j / angular;
            g.dirs.row(i * angular + j) << s * std::cos(a), s * std::sin(a), x;
            g.wa[i * angular + j] = 4.0 * std::numbers::pi * leg.w[i] / angular;
        }
    }
    return g;
}

std::vector<cplx> sample(const Field& f, const RadialGrid& g)
{
    std::vector<cplx> out(static_cast<size_t>(g.size()));
    for (Eigen::Index i = 0; i < g.size(); ++i)
        out[static_cast<size_t>(i)] = f(g.point(i));
    return out;
}

double norm_sq(const Field& f, const RadialGrid& g)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i)
        s += g.weight(i) * std::norm(f(g.point(i)));
    return s;
}

Field tabulated(const RadialGrid& g, std::vector<cplx> values)
{
    require(g.l <= 2, "tabulated: interpolation implemented for l in {1,2}");
    require(static_cast<Eigen::Index>(values.size()) == g.size(), "tabulated: value count mismatch");
    std::vector<double> logr(static_cast<size_t>(g.r.size()));
    for (Eigen::Index i = 0; i < g.r.size(); ++i)
        logr[static_cast<size_t>(i)] = std::log(g.r[i]);
    const Eigen::Index na = g.dirs.rows();
    return [g, logr, values = std::move(values), na](const Vec& y) -> cplx {
        const double r = y.norm();
        if (r < g.r.minCoeff() || r > g.r.maxCoeff())
            throw ConfigError("tabulated field: point outside the radial grid");
        const double s = std::log(r);
        const auto it = std::lower_bound(logr.begin(), logr.end(), s);
        Eigen::Index k = std::clamp<Eigen::Index>(it - logr.begin() - 2, 0, static_cast<Eigen::Index>(logr.size()) - 4);
        double wrad[4];
        lagrange4(&logr[static_cast<size_t>(k)], s, wrad);
        auto at = [&](Eigen::Index ir, Eigen::Index ia) { return values[static_cast<size_t>(ir * na + ia)]; };
        cplx out = 0.0;
        if (g.l == 1) {
            const Eigen::Index ia = y[0] >= 0 ? 0 : 1;
            for (int i = 0; i < 4; ++i)
                out += wrad[i] * at(k + i, ia);
            return out;
        }
        const double step = 2.0 * std::numbers::pi / static_cast<double>(na);
        double phi = std::atan2(y[1], y[0]);
        if (phi < 0)
            phi += 2.0 * std::numbers::pi;
        const auto j0 = static_cast<Eigen::Index>(std::floor(phi / step)) - 1;
        const double xs[4] = {0.0, 1.0, 2.0, 3.0};
        double wang[4];
        lagrange4(xs, phi / step - static_cast<double>(j0), wang);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out += wrad[i] * wang[j] * at(k + i, ((j0 + j) % na + na) % na);
        return out;
    };
}

Field pi0_apply(int l, const Similarity& s, Field f)
{
    require(s.dim() == l, "pi0_apply: dimension mismatch");
    const double scale = std::pow(s.lambda, 0.5 * l);
    return [s, scale, f = std::move(f)](const Vec& y) -> cplx {
        const Vec z = s.lambda * (s.A.transpose() * y);
        return scale * std::polar(1.0, y.dot(s.v)) * f(z);
    };
}

cplx ctilde(int l, double t, const Similarity& s, const Vec& y)
{
    require(s.dim() == l && y.size() == l, "ctilde: dimension mismatch");
    if (!(t > 0 && t < 1))
        throw ConfigError("ctilde: t must lie in (0,1)");
    const double r = y.norm();
    if (!(r > 0))
        throw ConfigError("ctilde: y must be nonzero");
    return expm1i(y.dot(s.v)) / std::pow(r, t + 0.5 * l);
}

Field ctilde_field(int l, double t, const Similarity& s)
{
    return [l, t, s](const Vec& y) { return ctilde(l, t, s, y); };
}

double cocycle_residual(int l, double t, const Similarity& s1, const Similarity& s2, const RadialGrid& g)
{
    const Field c12 = ctilde_field(l, t, compose(s1, s2));
    const Field c1 = ctilde_field(l, t, s1);
    const Field c2 = pi0_apply(l, s1, ctilde_field(l, t, s2));
    const double lt = std::pow(s1.lambda, t);
    double m = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const Vec y = g.point(i);
        m = std::max(m, std::abs(c12(y) - c1(y) - lt * c2(y)));
    }
    return m;
}

Field affine_apply(int l, double t, const Similarity& s, Field x)
{
    const Field px = pi0_apply(l, s, std::move(x));
    const Field c = ctilde_field(l, t, s);
    const double lt = std::pow(s.lambda, t);
    return [px, c, lt](const Vec& y) { return lt * px(y) + c(y); };
}

double affine_residual(int l, double t, const Similarity& s1, const Similarity& s2, const Field& x,
                       const RadialGrid& g)
{
    const Field lhs = affine_apply(l, t, compose(s1, s2), x);
    const Field rhs = affine_apply(l, t, s1, affine_apply(l, t, s2, x));
    double m = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const Vec y = g.point(i);
        m = std::max(m, std::abs(lhs(y) - rhs(y)));
    }
    return m;
}

double involution_defect(int l, double t, const Similarity& s, const RadialGrid& g)
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const Vec y = g.point(i);
        m = std::max(m, std::abs(std::conj(ctilde(l, t, s, Vec(-y))) - ctilde(l, t, s, y)));
    }
    return m;
}

double cnorm_sq_window(int l, double t, const Vec& v, double r_min, double r_max)
{
    require(static_cast<int>(v.size()) == l, "cnorm_sq: dimension mismatch");
    require(t > 0, "cnorm_sq: t must be positive");
    require(r_min > 0 && r_max > r_min, "cnorm_sq: need 0 < r_min < r_max");
    const double nv = v.norm();
    if (!(nv > 0))
        throw ConfigError("cnorm_sq: v must be nonzero");
    Vec glw;
    const Vec glx = gl_nodes(16, glw);
    // Panels: geometric growth, capped at half an oscillation period.
    const double grow = std::pow(10.0, 1.0 / 8.0);
    const double wmax = std::numbers::pi / nv;
    double s = 0.0;
    double a = r_min;
    while (a < r_max) {
        const double b = std::min(r_max, std::min(a * grow, a + wmax));
        double ps = 0.0;
        for (Eigen::Index i = 0; i < glx.size(); ++i) {
            const double r = 0.5 * (a + b) + 0.5 * (b - a) * glx[i];
            ps += glw[i] * one_minus_avg(l, r * nv) * std::pow(r, -2.0 * t - 1.0);
        }
        s += 0.5 * (b - a) * ps;
        a = b;
    }
    return 2.0 * sphere_area(l) * s;
}

CnormResult cnorm_sq(int l, double t, const Vec& v, double r_min, double r_max)
{
    if (!(t > 0 && t < 1))
        throw InvariantError("cnorm_sq: integral diverges for t outside (0,1)");
    CnormResult c;
    c.window = cnorm_sq_window(l, t, v, r_min, r_max);
    const double area = sphere_area(l);
    c.tail_small = v.squaredNorm() * area / l * std::pow(r_min, 2.0 - 2.0 * t) / (2.0 - 2.0 * t);
    c.tail_large = area * std::pow(r_max, -2.0 * t) / t;
    c.tail_bound = 2.0 * area * std::pow(r_max, -2.0 * t - 1.0) / v.norm();
    c.value = c.window + c.tail_small + c.tail_large;
    return c;
}

double cnorm_power_slope(int l, double t, const std::vector<double>& scales)
{
    require(scales.size() >= 2, "cnorm_power_slope: need at least two scales");
    std::vector<double> x, y;
    Vec dir = Vec::Zero(l);
    dir[0] = 1.0;
    for (double a : scales) {
        x.push_back(std::log(a));
        y.push_back(std::log(cnorm_sq(l, t, Vec(a * dir)).value));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double primitive_norm_sq_window(int l, double t, double r_min, double r_max)
{
    const RadialGrid g = make_radial_grid(l, r_min, r_max, 4, 8);
    double s = 0.0;
    for (Eigen::Index i = 0; i < g.r.size(); ++i)
        s += g.wr[i] * std::pow(g.r[i], -2.0 * t - l);
    return s * g.wa.sum();
}

} // namespace hinfty
