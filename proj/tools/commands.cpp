#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "hinfty/convexset.hpp"
#include "hinfty/csv.hpp"
#include "hinfty/embed.hpp"
#include "hinfty/hypgroup.hpp"
#include "hinfty/parallel.hpp"
#include "hinfty/prinseries.hpp"
#include "hinfty/simcocycle.hpp"
#include "hinfty/treerep.hpp"

namespace hinfty::cli {

namespace {

void require_unit_t(double t, bool closed)
{
    if (closed)
        require(t > 0 && t <= 1, "t must lie in (0,1]");
    else
        require(t > 0 && t < 1, "t must lie in (0,1)");
}

std::vector<double> t_values(const RunConfig& c)
{
    return c.t_list.empty() ? std::vector<double>{c.t} : c.t_list;
}

void fail_if(bool bad, const std::string& what)
{
    if (bad)
        throw InvariantError(what);
}

void run_signature(const RunConfig& c, std::ostream& os)
{
    CsvWriter w(os, {"n", "t", "K", "index", "positive_dims", "negative_dims", "parity_rule", "binomial"});
    const std::vector<int> ns = c.n_list.empty() ? std::vector<int>{c.n} : c.n_list;
    bool agree = true;
    for (int n : ns)
        for (double t : t_values(c)) {
            const SignatureReport r = signature_index(SeriesParams::from_t(n, t), c.K);
            agree = agree && r.index == r.parity_rule && r.index == r.binomial;
            w.row({static_cast<long long>(n), t, static_cast<long long>(c.K),
                   r.index, r.positive_dims, r.negative_dims, r.parity_rule, r.binomial});
        }
    fail_if(!agree, "signature: index disagrees with the parity rule or the binomial count");
}

void run_lambda(const RunConfig& c, std::ostream& os)
{
    CsvWriter w(os, {"n", "t", "k", "p_k", "lambda_k"});
    for (double t : t_values(c)) {
        const WeightVector wv = weights(SeriesParams::from_t(c.n, t), c.K);
        for (int k = 0; k <= c.K; ++k)
            w.row({static_cast<long long>(c.n), t, static_cast<long long>(k), dim_hk(c.n, k), wv.lam[k]});
    }
}

void run_dist(const RunConfig& c, std::ostream& os)
{
    const std::vector<double> us = c.u_set ? std::vector<double>{c.u} : parse_grid(c.u_grid);
    for (double u : us)
        require(u >= 0 && u <= 40, "dist: u must lie in [0,40]");
    CsvWriter w(os, {"n", "t", "u", "I_u", "distance", "t_times_u", "defect", "ratio"});
    for (double t : t_values(c)) {
        const SeriesParams p = SeriesParams::from_t(c.n, t);
        std::vector<double> iu(us.size());
        parallel_for(us.size(), [&](std::size_t i) { iu[i] = pairing_Iu(p, us[i]); });
        bool upper = true;
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double d = std::acosh(std::max(1.0, iu[i]));
            upper = upper && iu[i] <= std::exp(t * us[i]) * (1 + 1e-9);
            w.row({static_cast<long long>(c.n), t, us[i], iu[i], d, t * us[i], d - t * us[i],
                   us[i] > 0 ? d / us[i] : std::nan("")});
        }
        fail_if(!upper, "dist: upper bound I_u <= exp(t u) violated");
    }
}

void run_speed(const RunConfig& c, std::ostream& os)
{
    CsvWriter w(os, {"n", "t", "speed_closed", "speed_fit", "abs_diff", "curvature", "curvature_speed_sq"});
    double worst = 0.0;
    for (double t : t_values(c)) {
        require_unit_t(t, true);
        const SeriesParams p = SeriesParams::from_t(c.n, t);
        const double s = speed(p), f = speed_fit(p), k = curvature(p);
        worst = std::max(worst, std::abs(s - f));
        w.row({static_cast<long long>(c.n), t, s, f, std::abs(s - f), k, k * s * s});
    }
    fail_if(worst > c.tol, "speed: fitted speed deviates from the closed form beyond tol");
}

void run_boundary(const RunConfig& c, std::ostream& os)
{
    require_unit_t(c.t, false);
    const SeriesParams p = SeriesParams::from_t(c.n, c.t);
    const BoundaryDirection dir = boundary_direction(p, c.K);
    const WeightVector wv = weights(p, c.K);
    CsvWriter w(os, {"n", "t", "k", "p_k", "a_k", "abar_k", "lambda_k", "s_plain", "s_weighted"});
    double sp = 0.0, sw = 0.0;
    for (int k = 0; k <= c.K; ++k) {
        const double pk = static_cast<double>(dim_hk(c.n, k));
        const double a = dir.coeffs.a[k];
        sp += a * a;
        sw += wv.lam[k] * a * a;
        w.row({static_cast<long long>(c.n), c.t, static_cast<long long>(k), static_cast<long long>(pk), a,
               std::abs(a) / std::sqrt(pk), wv.lam[k], sp, sw});
    }
}

void run_continuity(const RunConfig& c, std::ostream& os)
{
    require_unit_t(c.t, true);
    for (double t : c.t_list)
        require_unit_t(t, true);
    const auto rows = continuity_curve(c.n, c.t, c.t_list, c.R, c.K, c.m);
    CsvWriter w(os, {"n", "t0", "t", "R", "K", "m", "hausdorff_hyp", "hausdorff_euc", "equivariance_defect",
                     "points"});
    for (const auto& r : rows)
        w.row({static_cast<long long>(c.n), c.t, r.t, c.R, static_cast<long long>(c.K), static_cast<long long>(c.m),
               r.hausdorff_hyp, r.hausdorff_euc, r.equivariance_defect, static_cast<long long>(r.points)});
}

void run_renorm(const RunConfig& c, std::ostream& os)
{
    const Mat g = g_geo(c.n, c.u).matrix;
    const KlSlope a1 = kl_slope(c.n, g);
    const double fit = kl_fit(c.n, g, c.t_list);
    CsvWriter w(os, {"n", "u", "t", "distance", "distance_over_sqrt_t", "cosh_d_minus_1", "kl_slope", "kl_fit"});
    for (double t : c.t_list) {
        const SeriesParams p = SeriesParams::from_t(c.n, t);
        const double d = embed_dist(p, g);
        w.row({static_cast<long long>(c.n), c.u, t, d, renorm_ratio(p, g), std::cosh(d) - 1.0, a1.value, fit});
    }
}

Similarity random_similarity(int l, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Vec v(l);
    for (int i = 0; i < l; ++i)
        v[i] = nd(rng);
    return Similarity::make(std::exp(0.5 * nd(rng)), v, random_orthogonal(l, rng));
}

void run_cocycle(const RunConfig& c, std::ostream& os)
{
    require(c.l >= 1 && c.l <= 3, "cocycle: l must lie in {1,2,3}");
    require_unit_t(c.t, false);
    std::mt19937_64 rng(c.seed);
    const RadialGrid g = make_radial_grid(c.l, 1e-3, 1e3, 2, 8);
    double res = 0.0;
    for (int i = 0; i < c.count; ++i)
        res = std::max(res, cocycle_residual(c.l, c.t, random_similarity(c.l, rng), random_similarity(c.l, rng), g));
    const std::vector<double> scales{0.25, 0.5, 1.0, 2.0, 4.0};
    const double slope = cnorm_power_slope(c.l, c.t, scales);
    CsvWriter w(os, {"l", "t", "v_norm", "cnorm_sq", "power_slope", "max_cocycle_residual"});
    Vec dir = Vec::Zero(c.l);
    dir[0] = 1.0;
    for (double a : scales)
        w.row({static_cast<long long>(c.l), c.t, a, cnorm_sq(c.l, c.t, Vec(a * dir)).value, slope, res});
    fail_if(res > c.tol, "cocycle: cocycle identity residual above tol");
}

void run_tree(const RunConfig& c, std::ostream& os)
{
    std::vector<MetricTree> trees;
    if (!c.tree.empty()) {
        std::ifstream in(c.tree);
        require(static_cast<bool>(in), "tree: cannot open " + c.tree);
        trees.push_back(MetricTree::parse(in));
    } else {
        std::mt19937_64 rng(c.seed);
        std::uniform_int_distribution<int> size(2, c.m);
        for (int i = 0; i < c.count; ++i)
            trees.push_back(MetricTree::random(size(rng), rng));
    }
    CsvWriter w(os, {"tree", "vertices", "lambda", "positive_eigenvalues", "max_dist_error", "certified"});
    bool ok = true;
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (double lam : c.lam) {
            const Mat gram = tree_gram(trees[i], lam);
            const Eigen::SelfAdjointEigenSolver<Mat> es(gram);
            const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
            long long pos = 0;
            for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
                pos += es.eigenvalues()[k] > 1e-13 * scale * gram.rows();
            double err = std::nan("");
            bool cert = false;
            if (pos == 1) {
                const TreeEmbedding e = tree_embed(trees[i], lam);
                err = e.max_dist_error;
                cert = e.certified;
            }
            ok = ok && cert;
            w.row({static_cast<long long>(i), static_cast<long long>(trees[i].size()), lam, pos, err,
                   static_cast<long long>(cert)});
        }
    fail_if(!ok, "tree: Gram matrix not certified (positive eigenvalue count or distance error)");
}

void run_relation(const RunConfig& c, std::ostream& os)
{
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> ul(-1.0, 1.0);
    std::normal_distribution<double> nd;
    CsvWriter w(os, {"trial", "n", "lambda", "mu", "v_norm", "eta", "residual"});
    double worst = 0.0;
    for (int i = 0; i < c.count; ++i) {
        Vec v(c.n - 1);
        for (int j = 0; j < c.n - 1; ++j)
            v[j] = nd(rng);
        const double lam = std::exp(ul(rng)), mu = std::exp(ul(rng));
        const SigmaRelation r = sigma_relation(c.n, lam, mu, v);
        worst = std::max(worst, r.residual);
        w.row({static_cast<long long>(i), static_cast<long long>(c.n), lam, mu, v.norm(), r.eta, r.residual});
    }
    fail_if(worst > c.tol, "relation: sigma identity residual above tol");
}

} // namespace

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> out;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == s.size() && !s.empty(), "grid: cannot parse '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string a, b, h;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, h);
        const double lo = number(a), hi = number(b), step = number(h);
        require(step > 0 && hi >= lo, "grid: need start <= stop and step > 0");
        const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
        require(count < 1000000, "grid: too many points");
        for (long long i = 0; i <= count; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(number(item));
    require(!out.empty(), "grid: empty");
    return out;
}

void finalize(RunConfig& c)
{
    require(c.n >= 2, "n must be >= 2");
    for (int n : c.n_list)
        require(n >= 2, "n must be >= 2");
    const std::string& s = c.subcommand;
    auto default_k = [&](int k) {
        if (c.K == 0)
            c.K = k;
        require(c.K >= 4, "K must be >= 4");
    };
    auto default_tol = [&](double t) {
        if (c.tol == 0.0)
            c.tol = t;
        require(c.tol > 0, "tol must be positive");
    };
    if (s == "signature" || s == "lambda") {
        default_k(20);
    } else if (s == "dist") {
        if (c.u_grid.empty())
            c.u_grid = "0:40:1";
    } else if (s == "speed") {
        default_tol(1e-4);
    } else if (s == "boundary") {
        default_k(64);
    } else if (s == "continuity") {
        require(c.n == 2 || c.n == 3, "continuity: n must be 2 or 3");
        default_k(32);
        if (!c.t_set)
            c.t = 1.0;
        if (c.t_list.empty())
            c.t_list = {0.9, 0.95, 0.99};
        if (c.m == 0)
            c.m = 64;
        require(c.m >= 2, "continuity: m must be >= 2");
        require(c.R > 0, "continuity: R must be positive");
    } else if (s == "renorm") {
        if (c.t_list.empty())
            c.t_list = {0.02, 0.01, 0.005};
        require(c.t_list.size() >= 2, "renorm: need at least two values of t");
        for (double t : c.t_list)
            require_unit_t(t, false);
        if (!c.u_set)
            c.u = 1.0;
        require(c.u > 0, "renorm: u must be positive");
    } else if (s == "cocycle") {
        if (c.count == 0)
            c.count = 20;
        default_tol(1e-8);
    } else if (s == "tree") {
        if (c.lam.empty())
            c.lam = {1.5, 3.0};
        for (double l : c.lam)
            require(l > 1, "tree: lambda must exceed 1");
        if (c.m == 0)
            c.m = 12;
        if (c.count == 0)
            c.count = 10;
        require(c.m >= 2, "tree: m must be >= 2");
    } else if (s == "relation") {
        if (c.count == 0)
            c.count = 50;
        default_tol(1e-10);
    }
}

void run(const RunConfig& c, std::ostream& out)
{
    const std::string& s = c.subcommand;
    if (s == "signature")
        run_signature(c, out);
    else if (s == "lambda")
        run_lambda(c, out);
    else if (s == "dist")
        run_dist(c, out);
    else if (s == "speed")
        run_speed(c, out);
    else if (s == "boundary")
        run_boundary(c, out);
    else if (s == "continuity")
        run_continuity(c, out);
    else if (s == "renorm")
        run_renorm(c, out);
    else if (s == "cocycle")
        run_cocycle(c, out);
    else if (s == "tree")
        run_tree(c, out);
    else if (s == "relation")
        run_relation(c, out);
    else
        throw ConfigError("unknown subcommand " + s);
}

} // namespace hinfty::cli
