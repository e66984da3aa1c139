#include "hinfty/prinseries.hpp"

#include <cmath>

#include "hinfty/hypgroup.hpp"

namespace hinfty {

SeriesParams SeriesParams::from_t(int n, double t)
{
    require(n >= 2, "SeriesParams: n must be >= 2");
    require(t > 0 && std::isfinite(t), "SeriesParams: t must be positive");
    return {n, t, t / (n - 1) + 0.5};
}

SeriesParams SeriesParams::from_s(int n, double s)
{
    require(n >= 2, "SeriesParams: n must be >= 2");
    return from_t(n, (n - 1) * (s - 0.5));
}

double lambda_k(const SeriesParams& p, int k, bool* degenerate)
{
    require(k >= 0, "lambda_k: k must be >= 0");
    if (degenerate)
        *degenerate = false;
    double v = 1.0;
    for (int j = 0; j < k; ++j) {
        if (std::abs(j - p.t) < 1e-14) {
            if (degenerate)
                *degenerate = true;
            return 0.0;
        }
        v *= (j - p.t) / (j + p.t + p.n - 1);
    }
    return v;
}

WeightVector weights(const SeriesParams& p, int K)
{
    WeightVector w;
    w.params = p;
    w.K = K;
    w.lam.resize(K + 1);
    double v = 1.0;
    for (int k = 0; k <= K; ++k) {
        w.lam[k] = v;
        if (std::abs(k - p.t) < 1e-14) {
            w.degenerate = k < K || w.degenerate;
            v = 0.0;
        } else {
            v *= (k - p.t) / (k + p.t + p.n - 1);
        }
    }
    return w;
}

SignatureReport signature_index(const SeriesParams& p, int K)
{
    const double tr = std::round(p.t);
    if (std::abs(p.t - tr) < 1e-12)
        throw ConfigError("signature_index: t is an integer (degenerate form)");
    SignatureReport r;
    r.j = static_cast<int>(std::floor(p.t));
    require(K > r.j, "signature_index: K must exceed floor(t)");
    const WeightVector w = weights(p, K);
    const double tail = w.lam[K] > 0 ? 1.0 : -1.0;
    for (int k = 0; k <= K; ++k) {
        const long long d = dim_hk(p.n, k);
        if (w.lam[k] > 0)
            r.positive_dims += d;
        else
            r.negative_dims += d;
        if ((w.lam[k] > 0 ? 1.0 : -1.0) != tail)
            r.index += d;
    }
    for (int k = r.j % 2; k <= r.j; k += 2)
        r.parity_rule += dim_hk(p.n, k);
    r.binomial = binom(p.n - 1 + r.j, p.n - 1);
    return r;
}

double form_bt(const WeightVector& w, const Vec& f, const Vec& h, const std::vector<int>& degrees)
{
    if (f.size() != h.size() || static_cast<size_t>(f.size()) != degrees.size())
        throw ConfigError("form_bt: truncation mismatch");
    double s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        const int k = degrees[i];
        if (k > w.K)
            throw ConfigError("form_bt: coefficient beyond the weight truncation");
        s += w.lam[k] * f[i] * h[i];
    }
    return s;
}

double form_bt(const WeightVector& w, const Vec& f, const Vec& h)
{
    std::vector<int> deg(f.size());
    for (size_t i = 0; i < deg.size(); ++i)
        deg[i] = static_cast<int>(i);
    return form_bt(w, f, h, deg);
}

std::vector<int> basis_degrees(const SphBasis& basis)
{
    std::vector<int> deg(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        deg[i] = basis.degree_of(i);
    return deg;
}

double form_bt(const WeightVector& w, const SphBasis& basis, const Vec& f, const Vec& h)
{
    return form_bt(w, f, h, basis_degrees(basis));
}

int default_quad_degree(int K, double u)
{
    const int base = 2 * K + 16;
    const int spread = static_cast<int>(std::ceil((2.0 * std::exp(u) + 2.0) * K)) + 64;
    return std::max(base, spread);
}

Mat kernel_action_matrix(int n, const Mat& g, int K, double e, int quad_degree)
{
    require(n == 2 || n == 3, "rep_matrix: full basis needs n in {2,3}");
    require(g.rows() == n + 1 && g.cols() == n + 1, "rep_matrix: matrix size must be n+1");
    certify(QuadSpace::hyperbolic(n), g, 1e-9);
    const double u = safe_acosh(g(0, 0));
    if (quad_degree == 0)
        quad_degree = default_quad_degree(K, u);
    if (quad_degree < 2 * K + 16)
        throw ConfigError("rep_matrix: quadrature degree below 2K+16 (aliasing guard)");

    const SphBasis basis(n, K);
    const SphereGrid grid = sphere_grid(n, quad_degree);
    const Mat gi = iso_inverse(g);
    const Eigen::Index m = grid.nodes.rows();
    Mat pulled(m, n);
    Vec weight(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        Vec x(n + 1);
        x[0] = 1.0;
        x.tail(n) = grid.nodes.row(i).transpose();
        const Vec y = gi * x;
        pulled.row(i) = (y.tail(n) / y[0]).transpose();
        // B(g o, (1,b)) = B(o, g^{-1}(1,b)) = y_0.
        weight[i] = grid.w[i] * std::pow(y[0], -e);
    }
    const Mat yb = basis.eval(grid.nodes);
    const Mat ypull = basis.eval(pulled);
    return yb.transpose() * weight.asDiagonal() * ypull;
}

TruncatedRep rep_matrix(const SeriesParams& p, const Mat& g, int K, int quad_degree)
{
    TruncatedRep r;
    r.params = p;
    r.K = K;
    r.weights = weights(p, K);
    r.quad_degree = quad_degree ? quad_degree : default_quad_degree(K, safe_acosh(g(0, 0)));
    r.matrix = kernel_action_matrix(p.n, g, K, p.n - 1 + p.t, r.quad_degree);
    return r;
}

TruncatedRep dual_rep_matrix(const SeriesParams& p, const Mat& g, int K, int quad_degree)
{
    TruncatedRep r;
    r.params = p;
    r.K = K;
    r.weights = weights(p, K);
    r.quad_degree = quad_degree ? quad_degree : default_quad_degree(K, safe_acosh(g(0, 0)));
    r.matrix = kernel_action_matrix(p.n, g, K, -p.t, r.quad_degree);
    return r;
}

TruncatedRep zonal_rep_matrix(const SeriesParams& p, double u, int K, bool dual)
{
    TruncatedRep r;
    r.params = p;
    r.K = K;
    r.zonal = true;
    r.weights = weights(p, K);
    const double e = dual ? -p.t : p.n - 1 + p.t;
    const ZonalBasis zb(p.n, K);
    const ZonalRule rule = zonal_theta_rule(p.n, 2.0 * std::exp(-std::abs(u)));
    const double c = std::cosh(u), s = std::sinh(u);
    const Eigen::Index m = rule.x.size();
    Vec pulled(m), weight(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double x = rule.x[i];
        const double den = c - x * s;
        pulled[i] = std::clamp((c * x - s) / den, -1.0, 1.0);
        weight[i] = rule.w[i] * std::pow(den, -e);
    }
    r.matrix = zb.eval(rule.x).transpose() * weight.asDiagonal() * zb.eval(pulled);
    return r;
}

double bt_invariance_defect(const TruncatedRep& rep, int dmax)
{
    std::vector<int> deg;
    if (rep.zonal) {
        for (int k = 0; k <= rep.K; ++k)
            deg.push_back(k);
    } else {
        deg = basis_degrees(SphBasis(rep.params.n, rep.K));
    }
    int cols = 0;
    while (cols < static_cast<int>(deg.size()) && deg[cols] <= dmax)
        ++cols;
    Vec lam(deg.size());
    for (size_t i = 0; i < deg.size(); ++i)
        lam[i] = rep.weights.lam[deg[i]];
    const Mat mc = rep.matrix.leftCols(cols);
    Mat gram = mc.transpose() * lam.asDiagonal() * mc;
    for (int i = 0; i < cols; ++i)
        gram(i, i) -= lam[i];
    return gram.cwiseAbs().maxCoeff();
}

double intertwining_defect(const SeriesParams& p, const Mat& g, int K, int dmax, int quad_degree)
{
    const TruncatedRep a = rep_matrix(p, g, K, quad_degree);
    const Mat b = kernel_action_matrix(p.n, g, K, -p.t, a.quad_degree);
    const SphBasis basis(p.n, K);
    double d = 0.0;
    for (int j = 0; j < basis.size() && basis.degree_of(j) <= dmax; ++j) {
        const double lj = a.weights.lam[basis.degree_of(j)];
        for (int i = 0; i < basis.size(); ++i) {
            const double li = a.weights.lam[basis.degree_of(i)];
            d = std::max(d, std::abs(li * a.matrix(i, j) - lj * b(i, j)));
        }
    }
    return d;
}

double dual_pairing_defect(const SeriesParams& p, const Mat& g, const Vec& f1, const Vec& f2, int K,
                           int quad_degree)
{
    const TruncatedRep a = rep_matrix(p, g, K, quad_degree);
    if (f1.size() != a.matrix.cols() || f2.size() != a.matrix.cols())
        throw ConfigError("dual_pairing_defect: coefficient size mismatch");
    const Mat b = kernel_action_matrix(p.n, g, K, -p.t, a.quad_degree);
    return std::abs((a.matrix * f1).dot(b * f2) - f1.dot(f2));
}

double u2_weight(int n, int k)
{
    require(k >= 2, "u2_weight: k must be >= 2");
    double v = 1.0 / (n * (n + 1.0));
    for (int j = 2; j <= k - 1; ++j)
        v *= (j - 1.0) / (j + n);
    return v;
}

WeightVector renorm_weights(const SeriesParams& p, int K)
{
    require(p.t > 0 && p.t <= 1.0, "renorm_weights: t must lie in (0,1]");
    WeightVector w = weights(p, K);
    w.degenerate = false;
    for (int k = 2; k <= K; ++k)
        w.lam[k] = p.t == 1.0 ? -u2_weight(p.n, k) : w.lam[k] / (1.0 - p.t);
    return w;
}

} // namespace hinfty
