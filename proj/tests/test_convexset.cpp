#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hinfty/convexset.hpp"
#include "hinfty/hypgroup.hpp"

using namespace hinfty;

namespace {

KleinCloud cloud_of(const Mat& pts)
{
    KleinCloud c;
    c.n = static_cast<int>(pts.cols());
    c.points = pts;
    return c;
}

Mat rotation2(double a)
{
    Mat r(2, 2);
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
}

} // namespace

TEST_CASE("boundary samples")
{
    const SeriesParams p = SeriesParams::from_t(2, 0.5);
    const KleinCloud two = sample_boundary(p, 16, 2);
    const CommonAction half_turn(p, 16, k_element(rotation2(std::numbers::pi)).matrix);
    CHECK((half_turn.apply(two.points.row(0).transpose()) - two.points.row(1).transpose()).norm() < 1e-12);

    const KleinCloud net = sample_boundary(p, 32, 64);
    const CommonAction step(p, 32, k_element(rotation2(2.0 * std::numbers::pi / 64.0)).matrix);
    KleinCloud moved = net;
    for (Eigen::Index i = 0; i < net.size(); ++i)
        moved.points.row(i) = step.apply(net.points.row(i).transpose()).transpose();
    CHECK(hausdorff(net, moved, Metric::euclidean) < 1e-6);

    // t = 1: the cloud is the round sphere in the degree-one coordinates
    for (int n : {2, 3}) {
        const SphBasis basis(n, 8);
        const KleinCloud one = sample_boundary(SeriesParams::from_t(n, 1.0), 8, 20);
        for (Eigen::Index i = 0; i < one.size(); ++i) {
            CHECK(one.points.row(i).head(n).norm() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(one.points.row(i).tail(basis.size() - 1 - n).norm() < 1e-12);
        }
    }

    double prev = 0.0;
    for (int K : {32, 64, 96}) {
        const double r = sample_boundary(SeriesParams::from_t(2, 0.5), K, 4).points.row(0).norm();
        CHECK(r > prev);
        CHECK(r < 1.0);
        prev = r;
    }
}

TEST_CASE("hull_sample")
{
    Mat one(1, 2);
    one << 0.3, -0.1;
    CHECK((hull_sample(cloud_of(one), 5).points - one).norm() == 0.0);

    Mat seg(2, 2);
    seg << -0.2, 0.0, 0.2, 0.0;
    const KleinCloud h = hull_sample(cloud_of(seg), 8);
    Mat chord(4001, 2);
    for (int i = 0; i <= 4000; ++i)
        chord.row(i) << -0.2 + 0.4 * i / 4000.0, 0.0;
    CHECK(hausdorff(h, cloud_of(chord), Metric::euclidean) < 1e-3);

    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ud(-0.6, 0.6);
    Mat pts(6, 3);
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        for (Eigen::Index j = 0; j < 3; ++j)
            pts(i, j) = ud(rng);
    const KleinCloud base = cloud_of(pts);
    KleinCloud prev = base;
    for (int it = 1; it <= 3; ++it) {
        const KleinCloud next = hull_sample(base, it);
        CHECK((next.points.topRows(prev.size()) - prev.points).norm() == 0.0);
        for (Eigen::Index i = 0; i < next.size(); ++i)
            CHECK(next.points.row(i).norm() < 1.0);
        prev = next;
    }
}

TEST_CASE("hull iteration is 1-Lipschitz")
{
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> ud(-0.5, 0.5);
    std::normal_distribution<double> nd;
    for (double eps : {1e-2, 1e-3}) {
        for (int trial = 0; trial < 5; ++trial) {
            Mat pts(5, 2);
            for (Eigen::Index i = 0; i < 5; ++i)
                pts.row(i) << ud(rng), ud(rng);
            Mat moved = pts;
            for (Eigen::Index i = 0; i < 5; ++i) {
                Vec d(2);
                d << nd(rng), nd(rng);
                moved.row(i) += (eps * d.normalized()).transpose();
            }
            const double e_in = hausdorff(cloud_of(pts), cloud_of(moved), Metric::euclidean);
            const double e_out = hausdorff(hull_sample(cloud_of(pts), 2), hull_sample(cloud_of(moved), 2),
                                           Metric::euclidean);
            CHECK(e_out <= e_in + 1e-9);

            const double h_in = hausdorff(cloud_of(pts), cloud_of(moved));
            const double h_out = hausdorff(hull_sample(cloud_of(pts), 2, MidpointRule::hyperbolic),
                                           hull_sample(cloud_of(moved), 2, MidpointRule::hyperbolic));
            CHECK(h_out <= h_in + 1e-9);
        }
    }
}

TEST_CASE("hausdorff and coradius")
{
    Mat a(1, 2), b(1, 2);
    a << 0.0, 0.0;
    b << 0.5, 0.0;
    CHECK(hausdorff(cloud_of(a), cloud_of(a)) == 0.0);
    CHECK(hausdorff(cloud_of(a), cloud_of(b)) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> ud(-0.7, 0.7);
    Mat x(7, 2), y(11, 2);
    for (Eigen::Index i = 0; i < 7; ++i)
        x.row(i) << ud(rng), ud(rng);
    for (Eigen::Index i = 0; i < 11; ++i)
        y.row(i) << ud(rng), ud(rng);
    for (Metric m : {Metric::hyperbolic, Metric::euclidean})
        CHECK(hausdorff(cloud_of(x), cloud_of(y), m) == hausdorff(cloud_of(y), cloud_of(x), m));

    CHECK(coradius(cloud_of(x), cloud_of(x)) == 0.0);
    const double r = 1.7;
    Mat sphere(40, 2);
    for (int i = 0; i < 40; ++i)
        sphere.row(i) << std::tanh(r) * std::cos(0.3 * i), std::tanh(r) * std::sin(0.3 * i);
    CHECK(coradius(cloud_of(a), cloud_of(sphere)) == doctest::Approx(r).epsilon(1e-12));
    CHECK(restrict_ball(cloud_of(sphere), 1.69).size() == 0);
    CHECK(restrict_ball(cloud_of(sphere), 1.71).size() == 40);
}

TEST_CASE("klein midpoint is the hyperbolic midpoint")
{
    Vec a(2), b(2);
    a << 0.5, 0.1;
    b << -0.3, 0.6;
    const Vec m = klein_midpoint(a, b);
    CHECK(klein_dist(a, m) == doctest::Approx(klein_dist(m, b)).epsilon(1e-12));
    CHECK(klein_dist(a, m) == doctest::Approx(0.5 * klein_dist(a, b)).epsilon(1e-12));
}

TEST_CASE("continuity curve at t = t0")
{
    const auto rows = continuity_curve(2, 0.8, {0.8}, 2.0, 12, 16);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].hausdorff_hyp == 0.0);
    CHECK(rows[0].hausdorff_euc == 0.0);
    CHECK(rows[0].equivariance_defect == 0.0);
}

TEST_CASE("cloud CSV")
{
    Mat p(2, 2);
    p << 0.25, -0.5, 0.0, 0.125;
    KleinCloud c = cloud_of(p);
    c.t = 0.5;
    c.K = 4;
    c.provenance = "test";
    std::ostringstream out;
    write_cloud_csv(out, c);
    CHECK(out.str() == "t,K,provenance,x1,x2\n0.5,4,test,0.25,-0.5\n0.5,4,test,0,0.125\n");
}
