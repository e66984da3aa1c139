#include "hinfty/convexset.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hinfty/csv.hpp"
#include "hinfty/embed.hpp"
#include "hinfty/hypgroup.hpp"
#include "hinfty/parallel.hpp"

namespace hinfty {

namespace {

constexpr double kMaxKleinNorm = 1.0 - 1e-12;

Vec cap_norm(Vec x)
{
    const double r = x.norm();
    if (r > kMaxKleinNorm)
        x *= kMaxKleinNorm / r;
    return x;
}

/// cosh d - 1 between two Klein points, without cancellation.
double klein_cm1(const Vec& a, double na, const Vec& b, double nb)
{
    const double sa = std::sqrt(na), sb = std::sqrt(nb);
    return 0.5 * ((sa - sb) * (sa - sb) + (a - b).squaredNorm()) / (sa * sb);
}

double cm1_to_dist(double c)
{
    return std::log1p(c + std::sqrt(c * (c + 2.0)));
}

/// For each row of `from`, min over rows of `to` of cosh d - 1 (hyperbolic)
/// or squared Euclidean distance.
Vec directed_min(const Mat& from, const Mat& to, Metric metric)
{
    const Eigen::Index na = from.rows(), nb = to.rows();
    Vec out(na);
    Vec fa(na), fb(nb);
    for (Eigen::Index i = 0; i < na; ++i)
        fa[i] = 1.0 - from.row(i).squaredNorm();
    for (Eigen::Index j = 0; j < nb; ++j)
        fb[j] = 1.0 - to.row(j).squaredNorm();
    parallel_for(static_cast<size_t>(na), [&](size_t ii) {
        const auto i = static_cast<Eigen::Index>(ii);
        const Vec a = from.row(i).transpose();
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < nb; ++j) {
            const double d2 = (to.row(j).transpose() - a).squaredNorm();
            double v = d2;
            if (metric == Metric::hyperbolic) {
                const double sa = std::sqrt(fa[i]), sb = std::sqrt(fb[j]);
                v = 0.5 * ((sa - sb) * (sa - sb) + d2) / (sa * sb);
            }
            best = std::min(best, v);
        }
        out[i] = best;
    });
    return out;
}

double to_distance(double v, Metric metric)
{
    return metric == Metric::hyperbolic ? cm1_to_dist(v) : std::sqrt(v);
}

int degree_weight_index(const SphBasis& basis, int i)
{
    return basis.degree_of(i);
}

} // namespace

MotionSample default_motion_sample(int n)
{
    Mat rot = Mat::Identity(n, n);
    const double a = 2.0 * std::numbers::pi / 7.0;
    rot(0, 0) = std::cos(a);
    rot(0, 1) = -std::sin(a);
    rot(1, 0) = std::sin(a);
    rot(1, 1) = std::cos(a);
    const Isometry r = k_element(rot);
    const Isometry h = g_geo(n, 0.5);
    MotionSample m;
    m.elements.push_back(k_element(Mat::Identity(n, n)));
    m.elements.push_back(r);
    m.elements.push_back(h);
    m.elements.push_back(classify(QuadSpace::hyperbolic(n), r.matrix * h.matrix));
    return m;
}

Vec common_scaling(const SeriesParams& p, int K)
{
    require(p.t > 0 && p.t <= 1.0, "common coordinates need t in (0,1]");
    const WeightVector w = weights(p, K);
    const SphBasis basis(p.n, K);
    Vec s(basis.size());
    for (int i = 0; i < basis.size(); ++i)
        s[i] = i == 0 ? 0.0 : std::sqrt(std::abs(w.lam[degree_weight_index(basis, i)]));
    return s;
}

Vec coeffs_to_klein(const Vec& coeffs, const Vec& scaling)
{
    return coeffs.tail(coeffs.size() - 1).cwiseProduct(scaling.tail(scaling.size() - 1)) / coeffs[0];
}

Mat sphere_net(int n, int m)
{
    require(n == 2 || n == 3, "sphere_net: n must be 2 or 3");
    require(m >= 1, "sphere_net: m must be >= 1");
    Mat net(m, n);
    if (n == 2) {
        for (int j = 0; j < m; ++j) {
            const double a = 2.0 * std::numbers::pi * j / m;
            net(j, 0) = std::cos(a);
            net(j, 1) = std::sin(a);
        }
        return net;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < m; ++j) {
        const double x = 1.0 - 2.0 * (j + 0.5) / m;
        const double r = std::sqrt(std::max(0.0, 1.0 - x * x));
        net(j, 0) = x;
        net(j, 1) = r * std::cos(golden * j);
        net(j, 2) = r * std::sin(golden * j);
    }
    return net;
}

KleinCloud sample_boundary(const SeriesParams& p, int K, int m, double u_max)
{
    require(m >= 2, "sample_boundary: m must be >= 2");
    const BoundaryDirection dir = zonal_ray_limit(p, K, u_max);
    if (!dir.converged)
        throw InvariantError("sample_boundary: boundary direction did not converge");
    const SphBasis basis(p.n, K);
    const Vec scale = common_scaling(p, K);
    const Mat net = sphere_net(p.n, m);
    KleinCloud c{p.n, p.t, K, "boundary sample", Mat(m, basis.size() - 1)};
    for (int j = 0; j < m; ++j) {
        const Vec coeffs = basis.rotate_zonal(dir.coeffs.a, net.row(j).transpose());
        c.points.row(j) = cap_norm(coeffs_to_klein(coeffs, scale)).transpose();
    }
    return c;
}

KleinCloud sample_orbit(const SeriesParams& p, int K, const std::vector<double>& radii, int m)
{
    const SphBasis basis(p.n, K);
    const Vec scale = common_scaling(p, K);
    const Mat net = sphere_net(p.n, m);
    KleinCloud c{p.n, p.t, K, "orbit sample", Mat(radii.size() * m, basis.size() - 1)};
    Eigen::Index row = 0;
    for (double r : radii) {
        const Vec a = orbit_coeffs(p, r, K);
        for (int j = 0; j < m; ++j) {
            if (r == 0) {
                c.points.row(row++).setZero();
                continue;
            }
            const Vec coeffs = basis.rotate_zonal(a, net.row(j).transpose());
            c.points.row(row++) = cap_norm(coeffs_to_klein(coeffs, scale)).transpose();
        }
    }
    return c;
}

Vec klein_midpoint(const Vec& a, const Vec& b)
{
    const HPoint x = from_klein(a), y = from_klein(b);
    const Vec mid = x.coords + y.coords;
    return mid.tail(mid.size() - 1) / mid[0];
}

KleinCloud hull_sample(const KleinCloud& cloud, int iters, MidpointRule rule, Eigen::Index cap)
{
    require(iters >= 0, "hull_sample: iters must be >= 0");
    KleinCloud cur = cloud;
    cur.provenance = "hull closure";
    const double dup = 1e-24;
    for (int it = 0; it < iters; ++it) {
        const Eigen::Index s = cur.size();
        if (s < 2)
            break;
        if (s >= cap)
            break;
        std::vector<Vec> cand;
        cand.reserve(static_cast<size_t>(s * (s - 1) / 2));
        for (Eigen::Index i = 0; i < s; ++i)
            for (Eigen::Index j = i + 1; j < s; ++j) {
                const Vec a = cur.points.row(i).transpose(), b = cur.points.row(j).transpose();
                cand.push_back(rule == MidpointRule::chord ? Vec(0.5 * (a + b)) : klein_midpoint(a, b));
            }
        // Farthest-point selection seeded with the current cloud; this also
        // drops duplicates, whose distance to the selected set is zero.
        const Eigen::Index want = std::min<Eigen::Index>(cap - s, static_cast<Eigen::Index>(cand.size()));
        const size_t stride = std::max<size_t>(1, cand.size() / static_cast<size_t>(8 * cap));
        std::vector<Vec> pool;
        for (size_t i = 0; i < cand.size(); i += stride)
            pool.push_back(cand[i]);
        Vec mind(static_cast<Eigen::Index>(pool.size()));
        parallel_for(pool.size(), [&](size_t k) {
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < s; ++i)
                best = std::min(best, (cur.points.row(i).transpose() - pool[k]).squaredNorm());
            mind[static_cast<Eigen::Index>(k)] = best;
        });
        std::vector<Vec> added;
        const bool thin = static_cast<Eigen::Index>(pool.size()) > want;
        if (!thin) {
            // No thinning needed: keep everything except duplicates.
            for (size_t k = 0; k < pool.size(); ++k) {
                if (mind[static_cast<Eigen::Index>(k)] <= dup)
                    continue;
                bool seen = false;
                for (const Vec& q : added)
                    if ((q - pool[k]).squaredNorm() <= dup) {
                        seen = true;
                        break;
                    }
                if (!seen)
                    added.push_back(pool[k]);
            }
        } else {
            for (Eigen::Index c = 0; c < want; ++c) {
                Eigen::Index arg;
                const double far = mind.maxCoeff(&arg);
                if (far <= dup)
                    break;
                const Vec pick = pool[static_cast<size_t>(arg)];
                added.push_back(pick);
                for (Eigen::Index k = 0; k < mind.size(); ++k)
                    mind[k] = std::min(mind[k], (pool[static_cast<size_t>(k)] - pick).squaredNorm());
            }
        }
        if (added.empty())
            break;
        Mat next(s + static_cast<Eigen::Index>(added.size()), cur.points.cols());
        next.topRows(s) = cur.points;
        for (size_t k = 0; k < added.size(); ++k)
            next.row(s + static_cast<Eigen::Index>(k)) = added[k].transpose();
        cur.points = std::move(next);
    }
    return cur;
}

double hausdorff(const KleinCloud& a, const KleinCloud& b, Metric metric)
{
    if (a.size() == 0 || b.size() == 0)
        throw ConfigError("hausdorff: empty cloud");
    if (a.points.cols() != b.points.cols())
        throw ConfigError("hausdorff: clouds live in different truncations");
    const double ab = directed_min(a.points, b.points, metric).maxCoeff();
    const double ba = directed_min(b.points, a.points, metric).maxCoeff();
    return to_distance(std::max(ab, ba), metric);
}

double coradius(const KleinCloud& a, const KleinCloud& x)
{
    if (a.size() == 0)
        throw ConfigError("coradius: empty subset");
    if (x.size() == 0)
        return 0.0;
    return to_distance(directed_min(x.points, a.points, Metric::hyperbolic).maxCoeff(), Metric::hyperbolic);
}

KleinCloud restrict_ball(const KleinCloud& c, double R)
{
    const double rk = std::tanh(R);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < c.size(); ++i)
        if (c.points.row(i).norm() <= rk)
            keep.push_back(i);
    KleinCloud out = c;
    out.points.resize(static_cast<Eigen::Index>(keep.size()), c.points.cols());
    for (size_t i = 0; i < keep.size(); ++i)
        out.points.row(static_cast<Eigen::Index>(i)) = c.points.row(keep[i]);
    return out;
}

CommonAction::CommonAction(const SeriesParams& p, int K, const Mat& g)
{
    const Mat m = rep_matrix(p, g, K).matrix;
    const SphBasis basis(p.n, K);
    Vec d = common_scaling(p, K);
    d[0] = 1.0;
    const int size = basis.size();
    if (p.t == 1.0) {
        // pi_{s_1} keeps the degree >= 2 blocks invariant; the point set lives
        // on the quotient H^0 + H^1.
        const int low = basis.offset(2 <= K ? 2 : K + 1);
        w_ = Mat::Zero(size, size);
        w_.topLeftCorner(low, low) =
            d.head(low).asDiagonal() * m.topLeftCorner(low, low) * d.head(low).cwiseInverse().asDiagonal();
    } else {
        w_ = d.asDiagonal() * m * d.cwiseInverse().asDiagonal();
    }
}

Vec CommonAction::apply(const Vec& klein) const
{
    Vec x(klein.size() + 1);
    x[0] = 1.0;
    x.tail(klein.size()) = klein;
    const Vec y = w_ * x;
    return cap_norm(y.tail(klein.size()) / y[0]);
}

namespace {

Eigen::Index nearest(const Mat& cloud, const Vec& x)
{
    Eigen::Index best = 0;
    double bv = std::numeric_limits<double>::infinity();
    const double nx = 1.0 - x.squaredNorm();
    for (Eigen::Index j = 0; j < cloud.rows(); ++j) {
        const Vec c = cloud.row(j).transpose();
        const double v = klein_cm1(x, nx, c, 1.0 - c.squaredNorm());
        if (v < bv) {
            bv = v;
            best = j;
        }
    }
    return best;
}

} // namespace

std::vector<ContinuityRow> continuity_curve(int n, double t0, const std::vector<double>& t_list, double R, int K,
                                            int m, int iters, int defect_points)
{
    require(t0 > 0 && t0 <= 1, "continuity_curve: t0 must lie in (0,1]");
    const SeriesParams p0 = SeriesParams::from_t(n, t0);
    const KleinCloud hull0 = hull_sample(sample_boundary(p0, K, m), iters);
    const KleinCloud ball0 = restrict_ball(hull0, R);
    const MotionSample motion = default_motion_sample(n);
    std::vector<CommonAction> act0;
    for (const auto& g : motion.elements)
        act0.emplace_back(p0, K, g.matrix);

    std::vector<ContinuityRow> rows;
    for (double t : t_list) {
        require(t > 0 && t <= 1, "continuity_curve: t must lie in (0,1]");
        const SeriesParams p = SeriesParams::from_t(n, t);
        const KleinCloud hull = hull_sample(sample_boundary(p, K, m), iters);
        const KleinCloud ball = restrict_ball(hull, R);
        ContinuityRow row;
        row.t = t;
        row.points = ball.size();
        row.hausdorff_hyp = hausdorff(ball, ball0, Metric::hyperbolic);
        row.hausdorff_euc = hausdorff(ball, ball0, Metric::euclidean);
        if (t != t0) {
            const Eigen::Index step = std::max<Eigen::Index>(1, ball.size() / std::max(1, defect_points));
            for (size_t gi = 0; gi < motion.elements.size(); ++gi) {
                const CommonAction act(p, K, motion.elements[gi].matrix);
                for (Eigen::Index i = 0; i < ball.size(); i += step) {
                    const Vec x = ball.points.row(i).transpose();
                    const Vec fx = hull0.points.row(nearest(hull0.points, x)).transpose();
                    const Vec lhs = act0[gi].apply(fx);
                    const Vec gx = act.apply(x);
                    const Vec rhs = hull0.points.row(nearest(hull0.points, gx)).transpose();
                    row.equivariance_defect = std::max(row.equivariance_defect, klein_dist(lhs, rhs));
                }
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<CoradiusRow> coradius_curve(int n, const std::vector<double>& t_list, double R, int K, int m,
                                        int radii, double r_max, int directions)
{
    std::vector<double> rs;
    for (int i = 0; i < radii; ++i)
        rs.push_back(r_max * i / std::max(1, radii - 1));
    std::vector<CoradiusRow> rows;
    for (double t : t_list) {
        const SeriesParams p = SeriesParams::from_t(n, t);
        const KleinCloud hull = restrict_ball(hull_sample(sample_boundary(p, K, m), 1), R);
        const KleinCloud orbit = sample_orbit(p, K, rs, directions);
        // Orbit points farther than R + 1 from the origin are farther than 1
        // from the whole ball, so they only matter when the coradius exceeds 1.
        double c = coradius(restrict_ball(orbit, R + 1.0), hull);
        if (c > 1.0)
            c = coradius(orbit, hull);
        rows.push_back({t, c});
    }
    return rows;
}

void write_cloud_csv(std::ostream& out, const KleinCloud& c)
{
    std::vector<std::string> header{"t", "K", "provenance"};
    for (Eigen::Index j = 0; j < c.points.cols(); ++j)
        header.push_back("x" + std::to_string(j + 1));
    CsvWriter w(out, header);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        std::vector<CsvCell> row{c.t, static_cast<long long>(c.K), c.provenance};
        for (Eigen::Index j = 0; j < c.points.cols(); ++j)
            row.emplace_back(c.points(i, j));
        w.row(row);
    }
}

} // namespace hinfty
