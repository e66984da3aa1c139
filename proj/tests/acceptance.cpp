// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hinfty/convexset.hpp"
#include "hinfty/embed.hpp"
#include "hinfty/harmonics.hpp"
#include "hinfty/hypgroup.hpp"
#include "hinfty/prinseries.hpp"
#include "hinfty/simcocycle.hpp"
#include "hinfty/treerep.hpp"

using namespace hinfty;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

void note(Outcome& o, bool ok, const std::string& what)
{
    o.pass = o.pass && ok;
    if (!o.detail.empty())
        o.detail += "; ";
    o.detail += what + (ok ? "" : " [fail]");
}

Outcome check_index_law()
{
    Outcome o;
    for (int n = 2; n <= 4; ++n)
        for (int j = 0; j <= 3; ++j) {
            const long long idx = signature_index(SeriesParams::from_t(n, j + 0.5), 30).index;
            const long long want = binom(n - 1 + j, n - 1);
            if (idx != want)
                note(o, false, "n=" + std::to_string(n) + " j=" + std::to_string(j) + " index " + std::to_string(idx));
        }
    std::string seq;
    bool tri = true;
    const long long triangular[4] = {1, 3, 6, 10};
    for (int j = 0; j <= 3; ++j) {
        const long long idx = signature_index(SeriesParams::from_t(3, j + 0.5), 30).index;
        seq += (j ? "," : "") + std::to_string(idx);
        tri = tri && idx == triangular[j];
    }
    note(o, tri, "n=3 indices {" + seq + "}");
    return o;
}

std::vector<double> u_grid(double step)
{
    std::vector<double> g;
    for (int i = 0; i * step <= 40.0 + 1e-12; ++i)
        g.push_back(i * step);
    return g;
}

Outcome check_translation_length()
{
    Outcome o;
    for (int n : {2, 3})
        for (double t : {0.25, 0.5, 0.75}) {
            const SeriesParams p = SeriesParams::from_t(n, t);
            const double gap = std::acosh(pairing_Iu(p, 40.0)) / 40.0 - t;
            note(o, std::abs(gap) < 0.01,
                 "n=" + std::to_string(n) + fmt(" t=%.2f", t) + fmt(" gap=%.5f", gap));
            const QiReport r = qi_defect(p, u_grid(0.5));
            if (!r.upper_bound_ok)
                note(o, false, "upper bound violated at n=" + std::to_string(n) + fmt(" t=%.2f", t));
        }
    return o;
}

Outcome check_speed_curvature()
{
    Outcome o;
    double worst = 0.0, worst_id = 0.0;
    for (int n : {2, 3})
        for (double t : {0.25, 0.5, 0.75}) {
            const SeriesParams p = SeriesParams::from_t(n, t);
            worst = std::max(worst, std::abs(speed_fit(p) - std::sqrt(t * (t + n - 1) / n)));
            worst_id = std::max(worst_id, std::abs(curvature(p) * speed(p) * speed(p) + 1.0));
        }
    note(o, worst < 1e-4, fmt("max |fit - closed| = %.2e", worst));
    note(o, worst_id < 1e-12, fmt("max |K s^2 + 1| = %.2e", worst_id));
    return o;
}

Outcome check_qi_band()
{
    Outcome o;
    double band = 0.0, slope = 0.0;
    for (int n : {2, 3})
        for (double t : {0.25, 0.5, 0.75}) {
            const QiReport r = qi_defect(SeriesParams::from_t(n, t), u_grid(0.25));
            for (size_t i = 0; i < r.u.size(); ++i)
                if (r.u[i] >= 1.0)
                    band = std::max(band, std::abs(r.defect[i]));
            slope = std::max(slope, std::abs(r.tail_slope));
        }
    note(o, band <= std::log(2.0) + 0.01, fmt("max defect on [1,40] = %.5f", band));
    note(o, slope < 1e-3, fmt("max |tail slope| = %.2e", slope));
    return o;
}

Outcome check_two_routes()
{
    Outcome o;
    const SeriesParams p = SeriesParams::from_t(2, 0.5);
    double gap = 0.0, norm = 0.0;
    for (double u = 0.0; u <= 2.0 + 1e-12; u += 0.125) {
        gap = std::max(gap, std::abs(split_route_Iu(p, u, 64) - pairing_Iu(p, u)));
        norm = std::max(norm, std::abs(bt_norm_orbit(p, u, 64) - 1.0));
    }
    note(o, gap < 1e-6, fmt("route gap = %.2e", gap));
    note(o, norm < 1e-6, fmt("B_t norm defect = %.2e", norm));
    return o;
}

Outcome check_intertwining()
{
    Outcome o;
    const SeriesParams p = SeriesParams::from_t(2, 0.5);
    const Mat g = g_geo(2, 1.0).matrix;
    const double d = intertwining_defect(p, g, 48, 8);
    note(o, d < 1e-6, fmt("operator defect = %.2e", d));
    std::string seq;
    double prev = 1e300;
    bool dec = true;
    for (int K : {16, 32, 48}) {
        const double b = bt_invariance_defect(rep_matrix(p, g, K), 8);
        dec = dec && b < prev;
        prev = b;
        seq += fmt(seq.empty() ? "%.2e" : ",%.2e", b);
    }
    note(o, dec, "invariance defects {" + seq + "}");
    return o;
}

Outcome check_boundary_l2()
{
    Outcome o;
    const SeriesParams p = SeriesParams::from_t(2, 0.5);
    const BoundaryDirection dir = boundary_direction(p, 96);
    const L2Report r = l2_divergence_diag(dir.coeffs, weights(p, 96), {48, 96});
    const double growth = r.s_plain[1] / r.s_plain[0] - 1.0;
    note(o, growth > 0.2, fmt("plain growth = %.1f%%", 100.0 * growth));
    note(o, r.weighted_tail < 1e-4, fmt("weighted tail = %.3e", r.weighted_tail));
    return o;
}

Outcome check_u2_limit()
{
    Outcome o;
    const double delta = 1e-4;
    double worst = 0.0;
    for (int n : {2, 3})
        for (int k = 2; k <= 10; ++k) {
            const double gap =
                std::abs(-lambda_k(SeriesParams::from_t(n, 1.0 - delta), k) / delta - u2_weight(n, k));
            worst = std::max(worst, gap);
            if (gap >= 1e-6)
                note(o, false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + fmt(" gap=%.2e", gap));
        }
    note(o, worst < 1e-6, fmt("max gap = %.2e", worst));
    return o;
}

Outcome check_continuity()
{
    Outcome o;
    const auto rows = continuity_curve(2, 1.0, {0.9, 0.95, 0.99}, 3.0, 32, 64);
    std::string seq;
    bool dec = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        seq += fmt(i ? ",%.4f" : "%.4f", rows[i].hausdorff_hyp);
        if (i > 0)
            dec = dec && rows[i].hausdorff_hyp < rows[i - 1].hausdorff_hyp;
    }
    note(o, dec, "Hausdorff {" + seq + "}");
    const auto cr = coradius_curve(2, {0.7, 0.8, 0.9, 0.97}, 3.0, 32, 64);
    seq.clear();
    dec = true;
    for (size_t i = 0; i < cr.size(); ++i) {
        seq += fmt(i ? ",%.4f" : "%.4f", cr[i].coradius);
        if (i > 0)
            dec = dec && cr[i].coradius < cr[i - 1].coradius;
    }
    note(o, dec, "coradius {" + seq + "}");
    return o;
}

Outcome check_renormalization()
{
    Outcome o;
    const std::vector<double> ts{0.02, 0.01, 0.005};
    for (int n : {2, 3}) {
        const Mat g = g_geo(n, 1.0).matrix;
        double lo = 1e300, hi = 0.0;
        for (double t : ts) {
            const double r = renorm_ratio(SeriesParams::from_t(n, t), g);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        note(o, hi / lo < 1.2, "n=" + std::to_string(n) + fmt(" ratio spread %.4f", hi / lo));
        const double a1 = kl_slope(n, g).value, fit = kl_fit(n, g, ts);
        note(o, a1 > 0 && std::abs(fit - a1) < 0.02 * a1, "n=" + std::to_string(n) + fmt(" rel. fit error %.2e", std::abs(fit - a1) / a1));
    }
    return o;
}

Similarity random_similarity(int l, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Vec v(l);
    for (int i = 0; i < l; ++i)
        v[i] = nd(rng);
    return Similarity::make(std::exp(0.5 * nd(rng)), v, random_orthogonal(l, rng));
}

Outcome check_cocycle()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    double res = 0.0;
    for (int l = 1; l <= 3; ++l) {
        const RadialGrid g = make_radial_grid(l, 1e-3, 1e3, 2, 8);
        for (int i = 0; i < 100; ++i)
            res = std::max(res, cocycle_residual(l, 0.5, random_similarity(l, rng), random_similarity(l, rng), g));
    }
    note(o, res < 1e-8, fmt("max cocycle residual = %.2e", res));
    double slope = 0.0;
    for (int l = 1; l <= 3; ++l)
        slope = std::max(slope, std::abs(cnorm_power_slope(l, 0.5, {0.25, 0.5, 1.0, 2.0, 4.0}) - 1.0));
    note(o, slope < 1e-3, fmt("max |slope - 2t| = %.2e", slope));
    // Each decade of r_min adds at least as much as the previous one.
    bool diverges = true;
    for (int l = 1; l <= 3; ++l) {
        double prev = 0.0, inc = 0.0;
        for (double r : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
            const double w = primitive_norm_sq_window(l, 0.5, r, 1.0);
            if (prev > 0.0) {
                diverges = diverges && (w - prev) >= inc;
                inc = w - prev;
            }
            prev = w;
        }
    }
    note(o, diverges, "primitive nested windows diverge");
    return o;
}

Outcome check_trees()
{
    Outcome o;
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> size(2, 12);
    int bad = 0;
    double err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const MetricTree tree = MetricTree::random(size(rng), rng);
        for (double lam : {1.5, 3.0}) {
            try {
                const TreeEmbedding e = tree_embed(tree, lam);
                err = std::max(err, e.max_dist_error);
                if (e.positive_eigenvalues != 1)
                    ++bad;
            } catch (const InvariantError&) {
                ++bad;
            }
        }
    }
    note(o, bad == 0, std::to_string(bad) + " uncertified");
    note(o, err < 1e-8, fmt("max distance error = %.2e", err));
    return o;
}

Outcome check_group_identities()
{
    Outcome o;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ul(-1.0, 1.0);
    std::normal_distribution<double> nd;
    double sig = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int n = 2 + i % 3;
        Vec v(n - 1);
        for (int j = 0; j < n - 1; ++j)
            v[j] = nd(rng);
        sig = std::max(sig, sigma_relation(n, std::exp(ul(rng)), std::exp(ul(rng)), v).residual);
    }
    note(o, sig < 1e-10, fmt("sigma residual = %.2e", sig));

    double rec = 0.0, jac = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int n = 2 + i % 3;
        const Isometry g = random_element(n, 3, rng);
        rec = std::max({rec, iwasawa(g).residual, polar(g).residual});
        const Mat k = k_element(random_orthogonal(n, rng)).matrix;
        const Vec b = k.block(1, 1, n, 1);
        const IwasawaResult r = iwasawa(classify(QuadSpace::hyperbolic(n), iso_inverse(g.matrix) * k));
        const double j1 = jacobian(iso_inverse(g.matrix), ray_from_sphere(b));
        jac = std::max(jac, std::abs(j1 - std::pow(r.lambda, -(n - 1))) / std::max(1.0, j1));
    }
    note(o, rec < 1e-10, fmt("recomposition residual = %.2e", rec));
    note(o, jac < 1e-8, fmt("Jacobian/Iwasawa = %.2e", jac));

    double integral = 0.0;
    for (int n : {2, 3}) {
        const SphereGrid grid = sphere_grid(n, n == 2 ? 400 : 160);
        for (int i = 0; i < 10; ++i) {
            const Isometry g = random_element(n, 2, rng);
            const Mat gi = iso_inverse(g.matrix);
            double s = 0.0;
            for (Eigen::Index q = 0; q < grid.nodes.rows(); ++q)
                s += grid.w[q] * jacobian(gi, ray_from_sphere(grid.nodes.row(q).transpose()));
            integral = std::max(integral, std::abs(s - 1.0));
        }
    }
    note(o, integral < 1e-8, fmt("|int Jac - 1| = %.2e", integral));
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"index law", check_index_law},
        {"translation length", check_translation_length},
        {"speed and curvature", check_speed_curvature},
        {"quasi-isometry band", check_qi_band},
        {"two-route distance", check_two_routes},
        {"intertwining", check_intertwining},
        {"boundary non-L2", check_boundary_l2},
        {"U2 limit", check_u2_limit},
        {"continuity proxy", check_continuity},
        {"renormalization", check_renormalization},
        {"cocycle suite", check_cocycle},
        {"tree suite", check_trees},
        {"group identities", check_group_identities},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass)
            ++failed;
        std::printf("criterion %2zu %-20s %s  (%s) [%.1fs]\n", i + 1, criteria[i].first.c_str(),
                    o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
