#include "hinfty/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hinfty/hypgroup.hpp"

namespace hinfty {

namespace {

/// cosh u - cos(theta) sinh u without cancellation.
double stable_base(double u, double theta)
{
    const double s = std::sin(0.5 * theta);
    return std::exp(-u) + 2.0 * s * s * std::sinh(u);
}

ZonalRule rule_for(int n, double u)
{
    return zonal_theta_rule(n, 2.0 * std::exp(-std::abs(u)));
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double nx = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= nx;
    my /= nx;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

} // namespace

EmbedParams EmbedParams::make(int n, double t, int K)
{
    require(t > 0 && t < 1, "EmbedParams: t must lie in (0,1)");
    return {SeriesParams::from_t(n, t), K, 0};
}

double pairing_Iu(const SeriesParams& p, double u)
{
    require(u >= 0, "pairing_Iu: u must be >= 0");
    if (u == 0)
        return 1.0;
    const ZonalRule r = rule_for(p.n, u);
    const double e = p.n - 1 + p.t;
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.x.size(); ++i)
        s += r.w[i] * std::pow(stable_base(u, r.theta[i]), -e);
    if (!std::isfinite(s))
        throw InvariantError("pairing_Iu: non-finite quadrature");
    return s;
}

Vec orbit_coeffs(const SeriesParams& p, double u, int K)
{
    const ZonalRule r = rule_for(p.n, u);
    const double e = p.n - 1 + p.t;
    Vec f(r.x.size());
    for (Eigen::Index i = 0; i < r.x.size(); ++i) {
        const double base = u >= 0 ? stable_base(u, r.theta[i]) : stable_base(-u, std::numbers::pi - r.theta[i]);
        f[i] = r.w[i] * std::pow(base, -e);
    }
    return ZonalBasis(p.n, K).eval(r.x).transpose() * f;
}

double embed_dist(const SeriesParams& p, const Mat& g)
{
    const PolarResult pr = polar(classify(QuadSpace::hyperbolic(p.n), g));
    return safe_acosh(pairing_Iu(p, pr.u));
}

double split_route_Iu(const SeriesParams& p, double u, int K)
{
    const Vec a = orbit_coeffs(p, 0.5 * u, K);
    const WeightVector w = weights(p, K);
    double s = 0.0;
    for (int k = 0; k <= K; ++k)
        s += w.lam[k] * (k % 2 ? -1.0 : 1.0) * a[k] * a[k];
    return s;
}

double bt_norm_orbit(const SeriesParams& p, double u, int K)
{
    const Vec a = orbit_coeffs(p, u, K);
    return form_bt(weights(p, K), a, a);
}

double speed(const SeriesParams& p)
{
    require(p.t > 0 && p.t <= 1, "speed: t must lie in (0,1]");
    return std::sqrt(p.t * (p.t + p.n - 1) / p.n);
}

double speed_fit(const SeriesParams& p)
{
    // d(u)/u is even in u, so each Richardson level removes a power of u^2.
    const double h[3] = {1e-2, 5e-3, 2.5e-3};
    double s[3];
    for (int i = 0; i < 3; ++i)
        s[i] = safe_acosh(pairing_Iu(p, h[i])) / h[i];
    const double r1a = (4.0 * s[1] - s[0]) / 3.0;
    const double r1b = (4.0 * s[2] - s[1]) / 3.0;
    return (16.0 * r1b - r1a) / 15.0;
}

double curvature(const SeriesParams& p)
{
    require(p.t > 0 && p.t <= 1, "curvature: t must lie in (0,1]");
    return -p.n / (p.t * (p.t + p.n - 1));
}

QiReport qi_defect(const SeriesParams& p, const std::vector<double>& u_grid)
{
    require(!u_grid.empty(), "qi_defect: empty grid");
    QiReport r;
    r.u = u_grid;
    r.kappa_emp = std::numeric_limits<double>::infinity();
    for (double u : u_grid) {
        require(u >= 0 && u <= 40, "qi_defect: grid must lie in [0,40]");
        const double iu = pairing_Iu(p, u);
        const double d = safe_acosh(iu) - p.t * u;
        r.defect.push_back(d);
        r.max_defect = std::max(r.max_defect, std::abs(d));
        r.kappa_emp = std::min(r.kappa_emp, iu * std::exp(-p.t * u));
        if (iu > std::exp(p.t * u) * (1.0 + 1e-9))
            r.upper_bound_ok = false;
    }
    const double lk = std::log(r.kappa_emp);
    for (double d : r.defect)
        if (d < lk - 1e-12 || d > std::log(2.0) + 1e-12)
            r.in_band = false;
    const double umax = *std::max_element(u_grid.begin(), u_grid.end());
    std::vector<double> tx, ty;
    for (size_t i = 0; i < u_grid.size(); ++i)
        if (u_grid[i] >= 0.75 * umax) {
            tx.push_back(u_grid[i]);
            ty.push_back(r.defect[i]);
        }
    if (tx.size() >= 2)
        r.tail_slope = lsq_slope(tx, ty);
    return r;
}

BoundaryDirection zonal_ray_limit(const SeriesParams& p, int K, double u_max, double tol)
{
    require(u_max >= 3, "boundary_direction: u_max must be >= 3");
    Vec r[3];
    for (int i = 0; i < 3; ++i) {
        const Vec a = orbit_coeffs(p, u_max - 2 + i, K);
        r[i] = a / a[0];
    }
    BoundaryDirection bd;
    bd.coeffs.n = p.n;
    bd.coeffs.K = K;
    bd.coeffs.a.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        const double d1 = r[1][k] - r[0][k];
        const double d2 = r[2][k] - r[1][k];
        const double den = d2 - d1;
        double lim = r[2][k];
        // Aitken only when the differences are geometric, not round-off.
        if (std::abs(den) > 1e-14 * std::abs(r[2][k]) && d1 * d2 > 0 && std::abs(d2) < std::abs(d1))
            lim = r[2][k] - d2 * d2 / den;
        bd.coeffs.a[k] = lim;
        const double scale = std::sqrt(static_cast<double>(dim_hk(p.n, k)));
        bd.last_change = std::max(bd.last_change, std::abs(d2) / scale);
    }
    bd.coeffs.a[0] = 1.0;
    bd.converged = bd.last_change < tol;
    const WeightVector w = weights(p, K);
    double num = 0, den = 0;
    for (int k = 0; k <= K; ++k) {
        num += w.lam[k] * bd.coeffs.a[k] * bd.coeffs.a[k];
        den += std::abs(w.lam[k]) * bd.coeffs.a[k] * bd.coeffs.a[k];
    }
    bd.isotropy_defect = num / den;
    return bd;
}

BoundaryDirection boundary_direction(const SeriesParams& p, int K, double u_max, double tol)
{
    require(p.t > 0 && p.t < 1, "boundary_direction: t must lie in (0,1)");
    BoundaryDirection bd = zonal_ray_limit(p, K, u_max, tol);
    if (!bd.converged)
        throw InvariantError("boundary_direction: ratios did not converge at u_max = " + std::to_string(u_max));
    return bd;
}

L2Report l2_divergence_diag(const ZonalCoeffs& dir, const WeightVector& w, const std::vector<int>& K_list,
                            double tol)
{
    require(K_list.size() >= 2, "l2_divergence_diag: need at least two truncations");
    require(std::is_sorted(K_list.begin(), K_list.end()), "l2_divergence_diag: K_list must be increasing");
    require(K_list.back() <= dir.K && K_list.back() <= w.K, "l2_divergence_diag: truncation beyond data");
    L2Report r;
    r.K = K_list;
    for (int K : K_list) {
        double sp = 0, sw = 0;
        for (int k = 0; k <= K; ++k) {
            const double a2 = dir.a[k] * dir.a[k];
            sp += a2;
            sw += std::abs(w.lam[k]) * a2;
        }
        r.s_plain.push_back(sp);
        r.s_weighted.push_back(sw);
    }
    r.plain_increasing = true;
    for (size_t i = 1; i < r.s_plain.size(); ++i)
        if (!(r.s_plain[i] > r.s_plain[i - 1] * (1.0 + 1e-12)))
            r.plain_increasing = false;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < K_list.size(); ++i) {
        lx.push_back(std::log(static_cast<double>(std::max(K_list[i], 1))));
        ly.push_back(std::log(r.s_plain[i]));
    }
    r.exponent = lsq_slope(lx, ly);
    r.weighted_tail = r.s_weighted.back() - r.s_weighted.front();
    r.verdict = r.plain_increasing && r.exponent > 0 && r.weighted_tail < tol;
    return r;
}

KlSlope kl_slope(int n, const Mat& g)
{
    const double u = safe_acosh(g(0, 0));
    KlSlope k;
    if (u < 1e-12) {
        k.degenerate = true;
        return k;
    }
    const ZonalRule r = rule_for(n, u);
    for (Eigen::Index i = 0; i < r.x.size(); ++i)
        k.value += r.w[i] * std::log(stable_base(u, r.theta[i]));
    return k;
}

double kl_fit(int n, const Mat& g, const std::vector<double>& t_list)
{
    require(t_list.size() >= 2, "kl_fit: need at least two values of t");
    const double u = safe_acosh(g(0, 0));
    Mat a(t_list.size(), 2);
    Vec y(t_list.size());
    for (size_t i = 0; i < t_list.size(); ++i) {
        const double t = t_list[i];
        a(i, 0) = t;
        a(i, 1) = t * t;
        y[i] = pairing_Iu(SeriesParams::from_t(n, t), u) - 1.0;
    }
    const Vec c = a.colPivHouseholderQr().solve(y);
    return c[0];
}

double renorm_ratio(const SeriesParams& p, const Mat& g)
{
    return embed_dist(p, g) / std::sqrt(p.t);
}

} // namespace hinfty
