#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hinfty/hypgroup.hpp"
#include "hinfty/simcocycle.hpp"

using namespace hinfty;

namespace {

double closed_form(int l, double t, double v)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * l) * std::tgamma(1.0 - t) /
           (t * std::pow(4.0, t) * std::tgamma(t + 0.5 * l)) * std::pow(v, 2.0 * t);
}

Similarity random_similarity(int l, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Vec v(l);
    for (int i = 0; i < l; ++i)
        v[i] = nd(rng);
    return Similarity::make(std::exp(0.5 * nd(rng)), v, random_orthogonal(l, rng));
}

Field gaussian(int l)
{
    return [l](const Vec& y) {
        Vec c = Vec::Zero(l);
        c[0] = 0.5;
        return cplx(std::exp(-(y - c).squaredNorm()), 0.3 * y[0] * std::exp(-y.squaredNorm()));
    };
}

} // namespace

TEST_CASE("similarities")
{
    std::mt19937_64 rng(67);
    for (int l = 1; l <= 3; ++l) {
        const Similarity a = random_similarity(l, rng), b = random_similarity(l, rng);
        const Vec x = Vec::Random(l);
        CHECK((compose(a, b)(x) - a(b(x))).norm() < 1e-13);
        CHECK((Similarity::identity(l)(x) - x).norm() == 0.0);
    }
    CHECK_THROWS_AS(Similarity::make(-1.0, Vec::Zero(2), Mat::Identity(2, 2)), ConfigError);
}

TEST_CASE("pi0")
{
    std::mt19937_64 rng(71);
    for (int l = 1; l <= 3; ++l) {
        const RadialGrid g = make_radial_grid(l, 1e-9, 1e2, 4, 32);
        const Field f = gaussian(l);
        const Field same = pi0_apply(l, Similarity::identity(l), f);
        for (Eigen::Index i = 0; i < g.size(); i += 7)
            CHECK(std::abs(same(g.point(i)) - f(g.point(i))) == 0.0);

        const Similarity s = random_similarity(l, rng);
        CHECK(std::abs(norm_sq(pi0_apply(l, s, f), g) - norm_sq(f, g)) < 1e-6);

        const Similarity s2 = random_similarity(l, rng);
        const Field lhs = pi0_apply(l, s, pi0_apply(l, s2, f));
        const Field rhs = pi0_apply(l, compose(s, s2), f);
        double m = 0.0;
        for (Eigen::Index i = 0; i < g.size(); i += 3)
            m = std::max(m, std::abs(lhs(g.point(i)) - rhs(g.point(i))));
        CHECK(m < 1e-8);
    }
}

TEST_CASE("tabulated fields")
{
    for (int l : {1, 2}) {
        const RadialGrid g = make_radial_grid(l, 1e-3, 1e2, 4, 32);
        const Field f = gaussian(l);
        const Field tab = tabulated(g, sample(f, g));
        std::mt19937_64 rng(73);
        std::uniform_real_distribution<double> ur(-2.0, 2.0);
        double m = 0.0;
        for (int k = 0; k < 200; ++k) {
            Vec y(l);
            for (int i = 0; i < l; ++i)
                y[i] = ur(rng);
            if (y.norm() < 1e-2)
                continue;
            m = std::max(m, std::abs(tab(y) - f(y)));
        }
        CHECK(m < 1e-3);
        CHECK_THROWS_AS(tab(Vec::Constant(l, 1e3)), ConfigError);
    }
    const RadialGrid g3 = make_radial_grid(3, 1e-3, 1e2);
    CHECK_THROWS_AS(tabulated(g3, sample(gaussian(3), g3)), ConfigError);
}

TEST_CASE("ctilde")
{
    Vec one(1);
    one << 1.0;
    Vec y(1);
    y << std::numbers::pi;
    const Similarity s = Similarity::make(1.0, one, Mat::Identity(1, 1));
    const cplx c = ctilde(1, 0.5, s, y);
    CHECK(c.real() == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(std::abs(c.imag()) < 1e-15);

    std::mt19937_64 rng(79);
    for (int l = 1; l <= 3; ++l) {
        const Similarity z = Similarity::make(1.7, Vec::Zero(l), random_orthogonal(l, rng));
        const Similarity r = random_similarity(l, rng);
        const RadialGrid g = make_radial_grid(l, 1e-3, 1e3, 2, 8);
        for (Eigen::Index i = 0; i < g.size(); i += 5) {
            const Vec p = g.point(i);
            CHECK(ctilde(l, 0.5, z, p) == cplx(0.0, 0.0));
            CHECK(std::abs(ctilde(l, 0.5, r, p)) <= 2.0 / std::pow(p.norm(), 0.5 + 0.5 * l) * (1 + 1e-14));
        }
    }
}

TEST_CASE("cocycle identity")
{
    std::mt19937_64 rng(83);
    for (int l = 1; l <= 3; ++l) {
        const RadialGrid g = make_radial_grid(l, 1e-3, 1e3, 2, 8);
        const Similarity s = random_similarity(l, rng);
        CHECK(cocycle_residual(l, 0.5, s, Similarity::identity(l), g) < 1e-14);
        for (int trial = 0; trial < 10; ++trial)
            CHECK(cocycle_residual(l, 0.5, random_similarity(l, rng), random_similarity(l, rng), g) < 1e-8);
    }
    const RadialGrid g2 = make_radial_grid(2, 1e-3, 1e3, 2, 8);
    Vec v(2), w(2);
    v << 0.4, -1.1;
    w << 2.0, 0.3;
    CHECK(cocycle_residual(2, 0.5, Similarity::make(1.0, v, Mat::Identity(2, 2)),
                           Similarity::make(1.0, w, Mat::Identity(2, 2)), g2) < 1e-9);
}

TEST_CASE("affine action and real structure")
{
    std::mt19937_64 rng(89);
    for (int l = 1; l <= 3; ++l) {
        const RadialGrid g = make_radial_grid(l, 1e-3, 1e3, 2, 8);
        for (int trial = 0; trial < 5; ++trial) {
            const Similarity a = random_similarity(l, rng), b = random_similarity(l, rng);
            CHECK(affine_residual(l, 0.5, a, b, gaussian(l), g) < 1e-8);
            CHECK(involution_defect(l, 0.5, a, g) < 1e-12);
        }
    }
}

TEST_CASE("cocycle norm")
{
    std::mt19937_64 rng(97);
    for (int l = 1; l <= 3; ++l)
        for (double t : {0.25, 0.5, 0.75}) {
            Vec v = Vec::Random(l);
            const double want = closed_form(l, t, v.norm());
            const CnormResult c = cnorm_sq(l, t, v);
            CHECK(std::abs(c.value - want) < 1e-6 * want);
            CHECK(std::abs(c.value - want) <= c.tail_bound + 1e-9 * want);
        }

    Vec v(2);
    v << 0.3, 0.8;
    CHECK(cnorm_sq(2, 0.5, Vec(2.0 * v)).value / cnorm_sq(2, 0.5, v).value == doctest::Approx(2.0).epsilon(1e-3));
    for (int l = 2; l <= 3; ++l) {
        Vec u = Vec::Random(l);
        const Mat a = random_orthogonal(l, rng);
        CHECK(std::abs(cnorm_sq(l, 0.4, Vec(a * u)).value - cnorm_sq(l, 0.4, u).value) < 1e-6);
    }
    for (int l = 1; l <= 3; ++l)
        for (double t : {0.25, 0.5, 0.75})
            CHECK(std::abs(cnorm_power_slope(l, t, {0.25, 0.5, 1.0, 2.0, 4.0}) - 2.0 * t) < 1e-3);

    CHECK_THROWS_AS(cnorm_sq(2, 1.0, v), InvariantError);
    CHECK_THROWS_AS(cnorm_sq(2, 0.0, v), InvariantError);
}

TEST_CASE("divergence as t approaches 1")
{
    Vec v(1);
    v << 1.0;
    double prev = 0.0;
    for (double t : {0.9, 0.99, 0.999}) {
        const double c = cnorm_sq(1, t, v).value;
        CHECK(c > prev);
        prev = c;
    }
    CHECK(prev > 100.0);

    // at t = 1 the small-r end grows like log(1/r_min) without bound
    double last = 0.0, step = 0.0;
    for (double r : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double w = cnorm_sq_window(1, 1.0, v, r, 1e2);
        if (last > 0.0) {
            CHECK(w - last > 0.0);
            if (step > 0.0)
                CHECK((w - last) == doctest::Approx(step).epsilon(1e-3));
            step = w - last;
        }
        last = w;
    }
}

TEST_CASE("the formal primitive is not square integrable")
{
    for (int l = 1; l <= 3; ++l) {
        const double t = 0.5;
        double prev = 0.0;
        for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const double w = primitive_norm_sq_window(l, t, r, 1.0);
            const double exact = sphere_area(l) * (std::pow(r, -2 * t) - 1.0) / (2 * t);
            CHECK(w == doctest::Approx(exact).epsilon(1e-10));
            CHECK(w > 5.0 * prev);
            prev = w;
        }
        // the large-r end converges
        const double far = primitive_norm_sq_window(l, t, 1.0, 1e8);
        CHECK(far == doctest::Approx(sphere_area(l) / (2 * t)).epsilon(1e-6));
    }
}
