#include "hinfty/hypgroup.hpp"

#include <cmath>

namespace hinfty {

namespace {

QuadSpace space_for(const Mat& m)
{
    return QuadSpace::hyperbolic(static_cast<int>(m.rows()) - 1);
}

Isometry make_isometry(const Mat& m)
{
    return classify(space_for(m), m);
}

void check_orthogonal(const Mat& A, int dim)
{
    if (A.rows() != dim || A.cols() != dim)
        throw ConfigError("A must be (n-1)x(n-1)");
    if ((A.transpose() * A - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12)
        throw ConfigError("A must be orthogonal");
}

} // namespace

Mat xi_frame(int n)
{
    require(n >= 2, "xi_frame: n must be >= 2");
    Mat f = Mat::Identity(n + 1, n + 1);
    const double r = 1.0 / std::sqrt(2.0);
    f.topLeftCorner(2, 2) << r, r, r, -r;
    return f;
}

Mat from_xi_basis(const Mat& x)
{
    const Mat f = xi_frame(static_cast<int>(x.rows()) - 1);
    return f * x * f;
}

Mat to_xi_basis(const Mat& m)
{
    return from_xi_basis(m);
}

Mat iso_inverse(const Mat& m)
{
    Vec j = Vec::Constant(m.rows(), -1.0);
    j[0] = 1.0;
    return j.asDiagonal() * m.transpose() * j.asDiagonal();
}

Isometry g_par(int n, double lambda, const Vec& v, const Mat& A)
{
    require(n >= 2, "g_par: n must be >= 2");
    require(lambda > 0, "g_par: lambda must be positive");
    require(v.size() == n - 1, "g_par: v must have length n-1");
    check_orthogonal(A, n - 1);
    Mat x = Mat::Zero(n + 1, n + 1);
    x(0, 0) = lambda;
    x(0, 1) = 0.5 * lambda * v.squaredNorm();
    x.block(0, 2, 1, n - 1) = lambda * (v.transpose() * A);
    x(1, 1) = 1.0 / lambda;
    x.block(2, 1, n - 1, 1) = v;
    x.block(2, 2, n - 1, n - 1) = A;
    return make_isometry(from_xi_basis(x));
}

Isometry g_par(const ParabolicElement& p)
{
    return g_par(static_cast<int>(p.v.size()) + 1, p.lambda, p.v, p.A);
}

Isometry g_geo(int n, double u)
{
    return g_par(n, std::exp(u), Vec::Zero(n - 1), Mat::Identity(n - 1, n - 1));
}

Isometry sigma(int n)
{
    require(n >= 2, "sigma: n must be >= 2");
    Mat x = Mat::Identity(n + 1, n + 1);
    x.topLeftCorner(2, 2) << 0, 1, 1, 0;
    x(2, 2) = -1.0;
    return make_isometry(from_xi_basis(x));
}

Isometry k_element(const Mat& q)
{
    const int n = static_cast<int>(q.rows());
    check_orthogonal(q, n);
    Mat m = Mat::Identity(n + 1, n + 1);
    m.bottomRightCorner(n, n) = q;
    return make_isometry(m);
}

ParabolicElement compose(const ParabolicElement& a, const ParabolicElement& b)
{
    return {a.lambda * b.lambda, a.A * b.v + a.v / b.lambda, a.A * b.A};
}

SimilarityMap to_similarity(const ParabolicElement& p)
{
    return {p.lambda, p.A, p.lambda * p.v};
}

SigmaRelation sigma_relation(int n, double lambda, double mu, const Vec& v)
{
    require(v.size() == n - 1, "sigma_relation: v must have length n-1");
    const double v2 = v.squaredNorm();
    if (!(v2 > 0))
        throw ConfigError("sigma_relation: v must be nonzero");
    require(lambda > 0 && mu > 0, "sigma_relation: lambda, mu must be positive");
    const int d = n - 1;
    Vec j1v = v;
    j1v[0] = -j1v[0];
    const Mat id = Mat::Identity(d, d);
    Mat j1 = id;
    j1(0, 0) = -1.0;

    SigmaRelation r;
    r.w = lambda * (-2.0 * j1v / (lambda * mu * v2) - v);
    r.eta = 2.0 / (lambda * lambda * mu * v2);
    r.u = lambda * mu * j1v;
    r.A = (id - 2.0 * r.u * r.u.transpose() / r.u.squaredNorm()) * j1;

    const Mat s = sigma(n).matrix;
    const Mat gv = g_par(n, lambda, v, id).matrix;
    const Mat gw = g_par(n, mu, r.w, id).matrix;
    const Mat lhs = s * gv * s * gw * gv * s;
    const Mat rhs = g_par(n, r.eta, r.u, r.A).matrix;
    r.residual = (lhs - rhs).norm();
    return r;
}

IwasawaResult iwasawa(const Isometry& g)
{
    const int n = static_cast<int>(g.matrix.rows()) - 1;
    // g^{-1} o = g_{lambda,v}^{-1} o has xi-coordinates (*, lambda/sqrt2, -lambda v/sqrt2).
    const Vec p = xi_frame(n) * iso_inverse(g.matrix).col(0);
    const double b = p[1];
    if (!(b > 0))
        throw InvariantError("iwasawa: element does not preserve the upper sheet");
    IwasawaResult r;
    r.lambda = std::sqrt(2.0) * b;
    r.v = -p.tail(n - 1) / b;
    const Mat a = g_par(n, r.lambda, r.v, Mat::Identity(n - 1, n - 1)).matrix;
    Mat k = g.matrix * iso_inverse(a);
    // k fixes o; clean the round-off in its first row and column.
    k.row(0).setZero();
    k.col(0).setZero();
    k(0, 0) = 1.0;
    r.k = make_isometry(k);
    r.residual = (r.k.matrix * a - g.matrix).norm();
    return r;
}

PolarResult polar(const Isometry& g)
{
    const int n = static_cast<int>(g.matrix.rows()) - 1;
    const Vec go = g.matrix.col(0);
    PolarResult r;
    r.u = safe_acosh(go[0]);
    Vec e = Vec::Zero(n);
    e[0] = 1.0;
    const Vec spatial = go.tail(n);
    Mat q = Mat::Identity(n, n);
    if (spatial.norm() > 1e-300) {
        const Vec w = spatial / spatial.norm();
        const Vec z = w - e;
        if (z.norm() > 1e-15)
            q -= 2.0 * z * z.transpose() / z.squaredNorm();
    }
    r.k = k_element(q);
    const Mat gu = g_geo(n, r.u).matrix;
    Mat kp = iso_inverse(gu) * r.k.matrix.transpose() * g.matrix;
    kp.row(0).setZero();
    kp.col(0).setZero();
    kp(0, 0) = 1.0;
    r.kprime = make_isometry(kp);
    r.residual = (r.k.matrix * gu * r.kprime.matrix - g.matrix).norm();
    return r;
}

namespace {

double kernel_ratio(const Vec& x, const BoundaryRay& b)
{
    const int n = static_cast<int>(x.size()) - 1;
    const QuadSpace sp = QuadSpace::hyperbolic(n);
    const double num = b.coords[0];
    const double den = bform(sp, x, b.coords);
    if (!(den > 0))
        throw InvariantError("jacobian: non-positive pairing with boundary ray");
    return std::pow(num / den, n - 1);
}

} // namespace

double jacobian(const Mat& g, const BoundaryRay& b)
{
    return kernel_ratio(iso_inverse(g).col(0), b);
}

double poisson_kernel(const Mat& g, const BoundaryRay& b)
{
    return kernel_ratio(g.col(0), b);
}

Vec act_boundary(const Mat& g, const Vec& b)
{
    Vec x(b.size() + 1);
    x[0] = 1.0;
    x.tail(b.size()) = b;
    const Vec y = g * x;
    return y.tail(b.size()) / y[0];
}

Mat random_orthogonal(int dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            a(i, j) = nd(rng);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int i = 0; i < dim; ++i)
        if (r(i, i) < 0)
            q.col(i) = -q.col(i);
    return q;
}

Isometry random_element(int n, int words, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> lam(-0.7, 0.7);
    std::normal_distribution<double> nd(0.0, 0.6);
    const Mat s = sigma(n).matrix;
    Mat m = Mat::Identity(n + 1, n + 1);
    for (int i = 0; i < words; ++i) {
        Vec v(n - 1);
        for (int j = 0; j < n - 1; ++j)
            v[j] = nd(rng);
        m = m * g_par(n, std::exp(lam(rng)), v, random_orthogonal(n - 1, rng)).matrix;
        if (i % 2 == 0)
            m = m * s;
    }
    return make_isometry(m);
}

} // namespace hinfty
