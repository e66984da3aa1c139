#include "hinfty/harmonics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace hinfty {

long long binom(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

long long dim_hk(int n, int k)
{
    require(n >= 2 && k >= 0, "dim_hk: need n >= 2, k >= 0");
    if (k == 0)
        return 1;
    if (k == 1)
        return n;
    return binom(n + k - 1, n - 1) - binom(n + k - 3, n - 1);
}

double zonal_beta(int n, int k)
{
    if (n == 2)
        return k == 1 ? 1.0 / std::sqrt(2.0) : 0.5;
    const double kk = k;
    return std::sqrt(kk * (kk + n - 3) / ((2 * kk + n - 2) * (2 * kk + n - 4)));
}

ZonalBasis::ZonalBasis(int n, int K) : n_(n), K_(K), beta_(K + 2, 0.0)
{
    require(n >= 2, "ZonalBasis: n must be >= 2");
    require(K >= 0, "ZonalBasis: K must be >= 0");
    for (int k = 1; k <= K + 1; ++k)
        beta_[k] = zonal_beta(n, k);
}

Vec ZonalBasis::eval(double x) const
{
    Vec z(K_ + 1);
    z[0] = 1.0;
    if (K_ >= 1)
        z[1] = x / beta_[1];
    for (int k = 1; k < K_; ++k)
        z[k + 1] = (x * z[k] - beta_[k] * z[k - 1]) / beta_[k + 1];
    return z;
}

Mat ZonalBasis::eval(const Vec& x) const
{
    Mat out(x.size(), K_ + 1);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out.row(i) = eval(x[i]).transpose();
    return out;
}

ZonalRule zonal_quadrature(int n, int order)
{
    require(n >= 2, "zonal_quadrature: n must be >= 2");
    require(order >= 1, "zonal_quadrature: order must be >= 1");
    ZonalRule r;
    r.exact_degree = 2 * order - 1;
    if (order == 1) {
        r.x = Vec::Zero(1);
        r.w = Vec::Ones(1);
        return r;
    }
    Vec diag = Vec::Zero(order);
    Vec sub(order - 1);
    for (int k = 1; k < order; ++k)
        sub[k - 1] = zonal_beta(n, k);
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    r.x = es.eigenvalues();
    r.w = es.eigenvectors().row(0).transpose().array().square();
    // Symmetrize: the weight is even.
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double xm = 0.5 * (r.x[j] - r.x[i]);
        const double wm = 0.5 * (r.w[i] + r.w[j]);
        r.x[i] = -xm;
        r.x[j] = xm;
        r.w[i] = r.w[j] = wm;
    }
    if (order % 2 == 1)
        r.x[order / 2] = 0.0;
    r.w /= r.w.sum();
    return r;
}

namespace {

struct GL {
    Vec x, w;
};

GL gauss_legendre(int m)
{
    const ZonalRule r = zonal_quadrature(3, m);
    return {r.x, 2.0 * r.w};
}

} // namespace

ZonalRule zonal_theta_rule(int n, double theta_c, int nodes_per_panel, double panel)
{
    require(n >= 2, "zonal_theta_rule: n must be >= 2");
    require(theta_c > 0 && panel > 0, "zonal_theta_rule: scales must be positive");
    std::vector<double> edges{0.0};
    double a = std::min(theta_c, panel);
    while (a < panel) {
        edges.push_back(a);
        a *= 2.0;
    }
    edges.push_back(panel);
    const int uniform = static_cast<int>(std::ceil((std::numbers::pi - panel) / panel));
    const double h = (std::numbers::pi - panel) / uniform;
    for (int i = 1; i <= uniform; ++i)
        edges.push_back(panel + i * h);
    edges.back() = std::numbers::pi;

    const GL gl = gauss_legendre(nodes_per_panel);
    const int np = static_cast<int>(edges.size()) - 1;
    ZonalRule r;
    r.x.resize(np * nodes_per_panel);
    r.w.resize(np * nodes_per_panel);
    r.theta.resize(np * nodes_per_panel);
    for (int p = 0; p < np; ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        for (int i = 0; i < nodes_per_panel; ++i) {
            const double th = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.x[i];
            r.x[p * nodes_per_panel + i] = std::cos(th);
            r.theta[p * nodes_per_panel + i] = th;
            r.w[p * nodes_per_panel + i] = 0.5 * (hi - lo) * gl.w[i] * std::pow(std::sin(th), n - 2);
        }
    }
    // Normalizing constant int_0^pi sin^{n-2} = sqrt(pi) Gamma((n-1)/2) / Gamma(n/2).
    const double total = std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * (n - 1)) - std::lgamma(0.5 * n));
    r.w /= total;
    return r;
}

ZonalProjection zonal_project(const std::function<double(double)>& f, const ZonalBasis& basis, int order)
{
    if (order < 2 * basis.K())
        throw ConfigError("zonal_project: quadrature order below 2K (aliasing guard)");
    return zonal_project(f, basis, zonal_quadrature(basis.n(), order));
}

ZonalProjection zonal_project(const std::function<double(double)>& f, const ZonalBasis& basis,
                              const ZonalRule& rule)
{
    Vec fx(rule.x.size());
    for (Eigen::Index i = 0; i < rule.x.size(); ++i)
        fx[i] = f(rule.x[i]);
    ZonalProjection p;
    p.coeffs.n = basis.n();
    p.coeffs.K = basis.K();
    p.coeffs.a = basis.eval(rule.x).transpose() * rule.w.cwiseProduct(fx);
    p.parseval_defect = rule.w.dot(fx.cwiseProduct(fx)) - p.coeffs.a.squaredNorm();
    return p;
}

double synthesize(const ZonalCoeffs& c, double x)
{
    return ZonalBasis(c.n, c.K).eval(x).dot(c.a);
}

SphereGrid sphere_grid(int n, int degree)
{
    require(n == 2 || n == 3, "sphere_grid: n must be 2 or 3");
    require(degree >= 0, "sphere_grid: degree must be >= 0");
    SphereGrid g;
    g.n = n;
    g.exact_degree = degree;
    const int nphi = degree + 1;
    if (n == 2) {
        g.nodes.resize(nphi, 2);
        g.w = Vec::Constant(nphi, 1.0 / nphi);
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / nphi;
            g.nodes(j, 0) = std::cos(phi);
            g.nodes(j, 1) = std::sin(phi);
        }
        return g;
    }
    const int nth = degree / 2 + 1;
    const ZonalRule leg = zonal_quadrature(3, nth);
    g.nodes.resize(nth * nphi, 3);
    g.w.resize(nth * nphi);
    for (int i = 0; i < nth; ++i) {
        const double x = leg.x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / nphi;
            const int r = i * nphi + j;
            g.nodes(r, 0) = x;
            g.nodes(r, 1) = s * std::cos(phi);
            g.nodes(r, 2) = s * std::sin(phi);
            g.w[r] = leg.w[i] / nphi;
        }
    }
    return g;
}

SphBasis::SphBasis(int n, int K) : n_(n), K_(K), size_(0)
{
    require(n == 2 || n == 3, "sph_basis: n must be 2 or 3");
    require(K >= 0, "sph_basis: K must be >= 0");
    offset_.push_back(0);
    for (int k = 0; k <= K; ++k) {
        const int p = static_cast<int>(dim_hk(n, k));
        for (int i = 0; i < p; ++i)
            degree_.push_back(k);
        offset_.push_back(offset_.back() + p);
    }
    size_ = offset_.back();
}

Vec SphBasis::eval(const Vec& b) const
{
    Vec y(size_);
    const double r2 = std::sqrt(2.0);
    y[0] = 1.0;
    if (n_ == 2) {
        const double th = std::atan2(b[1], b[0]);
        for (int k = 1; k <= K_; ++k) {
            y[offset_[k]] = r2 * std::cos(k * th);
            y[offset_[k] + 1] = r2 * std::sin(k * th);
        }
        return y;
    }
    const double x = std::clamp(b[0], -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    const double phi = std::atan2(b[2], b[1]);
    // Fully normalized associated Legendre functions, column by column in m.
    Mat P = Mat::Zero(K_ + 1, K_ + 1);
    P(0, 0) = 1.0;
    for (int m = 1; m <= K_; ++m)
        P(m, m) = std::sqrt((2.0 * m + 1) / (2.0 * m)) * s * P(m - 1, m - 1);
    for (int m = 0; m < K_; ++m)
        P(m + 1, m) = std::sqrt(2.0 * m + 3) * x * P(m, m);
    for (int m = 0; m <= K_; ++m) {
        for (int k = m + 2; k <= K_; ++k) {
            const double kk = k, mm = m;
            const double a = std::sqrt((4 * kk * kk - 1) / (kk * kk - mm * mm));
            const double bb = std::sqrt(((kk - 1) * (kk - 1) - mm * mm) / (4 * (kk - 1) * (kk - 1) - 1));
            P(k, m) = a * (x * P(k - 1, m) - bb * P(k - 2, m));
        }
    }
    for (int k = 0; k <= K_; ++k) {
        int idx = offset_[k];
        y[idx++] = P(k, 0);
        for (int m = 1; m <= k; ++m) {
            y[idx++] = r2 * P(k, m) * std::cos(m * phi);
            y[idx++] = r2 * P(k, m) * std::sin(m * phi);
        }
    }
    return y;
}

Mat SphBasis::eval(const Mat& points) const
{
    Mat out(points.rows(), size_);
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        out.row(i) = eval(Vec(points.row(i).transpose())).transpose();
    return out;
}

Vec SphBasis::rotate_zonal(const Vec& a, const Vec& c) const
{
    require(a.size() >= K_ + 1, "rotate_zonal: need K+1 zonal coefficients");
    // Addition theorem: Z_k(<c,x>) = sum_m Y_km(c) Y_km(x) / sqrt(p_k).
    const Vec yc = eval(Vec(c / c.norm()));
    Vec out(size_);
    for (int i = 0; i < size_; ++i) {
        const int k = degree_[i];
        out[i] = a[k] * yc[i] / std::sqrt(static_cast<double>(block_size(k)));
    }
    return out;
}

} // namespace hinfty
