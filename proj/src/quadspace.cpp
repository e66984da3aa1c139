#include "hinfty/quadspace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace hinfty {

QuadSpace::QuadSpace(int dim, int index) : signs_(Vec::Constant(dim, -1.0)), index_(index)
{
    require(dim >= 2, "QuadSpace: dim must be >= 2");
    require(index >= 1 && index < dim, "QuadSpace: need 1 <= index < dim");
    signs_.head(index).setOnes();
}

QuadSpace::QuadSpace(Vec signs) : signs_(std::move(signs)), index_(0)
{
    require(signs_.size() >= 2, "QuadSpace: dim must be >= 2");
    for (Eigen::Index i = 0; i < signs_.size(); ++i) {
        require(signs_[i] == 1.0 || signs_[i] == -1.0, "QuadSpace: signs must be +-1");
        if (signs_[i] > 0)
            ++index_;
    }
    require(index_ >= 1 && index_ < signs_.size(), "QuadSpace: need 1 <= index < dim");
}

double bform(const QuadSpace& space, const Vec& x, const Vec& y)
{
    if (x.size() != space.dim() || y.size() != space.dim())
        throw ConfigError("bform: dimension mismatch");
    return (space.signs().array() * x.array() * y.array()).sum();
}

double safe_acosh(double x)
{
    if (std::isnan(x) || x < 1.0 - kAcoshSlack)
        throw InvariantError("arccosh argument below 1: " + std::to_string(x));
    return std::acosh(std::max(x, 1.0));
}

HPoint make_hpoint(const QuadSpace& space, const Vec& x)
{
    const double q = bform(space, x, x);
    if (!(q > 0))
        throw InvariantError("make_hpoint: vector is not timelike");
    Vec y = x / std::sqrt(q);
    if (y[0] < 0)
        y = -y;
    return {y};
}

BoundaryRay make_ray(const QuadSpace& space, const Vec& x)
{
    const double nrm = x.norm();
    if (!(nrm > 0))
        throw ConfigError("make_ray: zero vector");
    Vec y = x / nrm;
    if (std::abs(bform(space, y, y)) > 1e-8)
        throw InvariantError("make_ray: vector is not isotropic");
    if (y[0] < 0)
        y = -y;
    return {y};
}

BoundaryRay ray_from_sphere(const Vec& b)
{
    Vec x(b.size() + 1);
    x[0] = 1.0;
    x.tail(b.size()) = b / b.norm();
    return {x / std::sqrt(2.0)};
}

Vec ray_to_sphere(const BoundaryRay& r)
{
    return r.coords.tail(r.coords.size() - 1) / r.coords[0];
}

HPoint basepoint(int n)
{
    Vec o = Vec::Zero(n + 1);
    o[0] = 1.0;
    return {o};
}

double hdist(const QuadSpace& space, const HPoint& x, const HPoint& y)
{
    require(space.index() == 1, "hdist: index must be 1");
    if (x.coords[0] <= 0 || y.coords[0] <= 0)
        throw InvariantError("hdist: point off the upper sheet");
    return safe_acosh(bform(space, x.coords, y.coords));
}

Vec to_klein(const HPoint& x)
{
    if (!(x.coords[0] > 0))
        throw InvariantError("to_klein: point off the upper sheet");
    return x.coords.tail(x.coords.size() - 1) / x.coords[0];
}

HPoint from_klein(const Vec& b)
{
    const double r2 = b.squaredNorm();
    if (!(r2 < 1.0))
        throw ConfigError("from_klein: point outside the open unit ball");
    Vec x(b.size() + 1);
    x[0] = 1.0;
    x.tail(b.size()) = b;
    return {x / std::sqrt(1.0 - r2)};
}

double klein_dist(const Vec& a, const Vec& b)
{
    const double na = 1.0 - a.squaredNorm();
    const double nb = 1.0 - b.squaredNorm();
    if (!(na > 0 && nb > 0))
        throw ConfigError("klein_dist: point outside the open unit ball");
    // cosh d - 1 in a cancellation-free form.
    const double sa = std::sqrt(na), sb = std::sqrt(nb);
    const double cm1 = 0.5 * ((sa - sb) * (sa - sb) + (a - b).squaredNorm()) / (sa * sb);
    return std::log1p(cm1 + std::sqrt(cm1 * (cm1 + 2.0)));
}

std::string to_string(IsometryType t)
{
    switch (t) {
    case IsometryType::elliptic: return "elliptic";
    case IsometryType::parabolic: return "parabolic";
    case IsometryType::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

double form_defect(const QuadSpace& space, const Mat& m)
{
    if (m.rows() != space.dim() || m.cols() != space.dim())
        throw ConfigError("form_defect: dimension mismatch");
    const Mat j = space.gram();
    return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

void certify(const QuadSpace& space, const Mat& m, double tol)
{
    const double d = form_defect(space, m);
    if (!(d <= tol * std::max(1.0, m.squaredNorm() / m.rows())))
        throw InvariantError("matrix does not preserve the form (defect " + std::to_string(d) + ")");
}

double translation_length(const Mat& m)
{
    Eigen::EigenSolver<Mat> es(m, false);
    const auto ev = es.eigenvalues();
    double rho = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        rho = std::max(rho, std::abs(ev[i]));
    const double ell = std::max(0.0, std::log(rho));
    if (ell > 1e-3)
        return ell;
    // A perturbed unipotent Jordan block splits into 1 + d*w^j, so
    // complex eigenvalues leave the unit circle by an amount of the same
    // order as rho - 1; genuine hyperbolic elements keep them on it.
    const double gap = rho - 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i].imag()) > 0.05 * gap && std::abs(std::abs(ev[i]) - 1.0) > 0.05 * gap)
            return 0.0;
    }
    return ell;
}

Isometry classify(const QuadSpace& space, const Mat& m)
{
    require(space.index() == 1, "classify: index must be 1");
    certify(space, m, 1e-8);
    Isometry iso;
    iso.matrix = m;
    iso.translation_length = translation_length(m);
    if (iso.translation_length > kClassEps) {
        iso.type = IsometryType::hyperbolic;
        return iso;
    }
    iso.translation_length = 0.0;
    const int n = space.dim();
    Eigen::JacobiSVD<Mat> svd(m - Mat::Identity(n, n), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = 1e-7 * std::max(1.0, m.norm());
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > thr)
            ++rank;
    const int nul = n - rank;
    iso.type = IsometryType::parabolic;
    if (nul > 0) {
        const Mat basis = svd.matrixV().rightCols(nul);
        const Mat restricted = basis.transpose() * space.gram() * basis;
        Eigen::SelfAdjointEigenSolver<Mat> se(restricted);
        if (se.eigenvalues().maxCoeff() > 1e-6)
            iso.type = IsometryType::elliptic;
    }
    return iso;
}

GramRealization gram_realize(const Mat& gram, int index, double tol)
{
    require(gram.rows() == gram.cols(), "gram_realize: matrix must be square");
    require(index >= 1, "gram_realize: index must be >= 1");
    const Eigen::Index m = gram.rows();
    if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff()))
        throw ConfigError("gram_realize: matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.transpose()));
    const Vec& mu = es.eigenvalues();
    const Mat& v = es.eigenvectors();
    const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
    const double zero = 1e-13 * scale * static_cast<double>(m);

    GramRealization out;
    for (Eigen::Index i = 0; i < m; ++i)
        if (mu[i] > zero)
            ++out.positive_count;
    if (out.positive_count > index)
        return out;

    const Eigen::Index dim = std::max<Eigen::Index>(m, index);
    out.points = Mat::Zero(m, dim);
    out.signs = Vec::Constant(dim, -1.0);
    out.signs.head(index).setOnes();
    Eigen::Index pos = 0, neg = index;
    // Largest eigenvalues are last; fill positive slots from the top.
    for (Eigen::Index i = m - 1; i >= 0; --i) {
        if (mu[i] > zero) {
            out.points.col(pos++) = v.col(i) * std::sqrt(mu[i]);
        } else if (mu[i] < -zero) {
            out.points.col(neg++) = v.col(i) * std::sqrt(-mu[i]);
        }
    }
    if (index == 1 && out.points(0, 0) < 0)
        out.points = -out.points;

    const Mat rebuilt = out.points * out.signs.asDiagonal() * out.points.transpose();
    if ((rebuilt - gram).cwiseAbs().maxCoeff() > tol * scale)
        return out;
    out.ok = true;
    return out;
}

} // namespace hinfty
