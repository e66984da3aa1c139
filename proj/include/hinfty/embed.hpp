#pragma once

#include <vector>

#include "hinfty/prinseries.hpp"

namespace hinfty {

/// Parameters of the equivariant map f_t; t must lie in (0,1).
struct EmbedParams {
    SeriesParams params;
    int K = 64;
    int quad_order = 0;

    static EmbedParams make(int n, double t, int K = 64);
};

/// I_u = int (cosh u - b_1 sinh u)^{-(n-1+t)} db, any t > 0.
double pairing_Iu(const SeriesParams& p, double u);

/// Zonal coefficients a_0(u)..a_K(u) of pi_s(g_u) 1.
Vec orbit_coeffs(const SeriesParams& p, double u, int K);

/// d(f_t(o), f_t(g o)) through the polar decomposition of g.
double embed_dist(const SeriesParams& p, const Mat& g);

/// I_u as B_t(pi(g_{u/2}) 1, pi(g_{-u/2}) 1) = sum_k lambda_k (-1)^k a_k(u/2)^2.
double split_route_Iu(const SeriesParams& p, double u, int K);

/// sum_k lambda_k a_k(u)^2, equal to 1 on the hyperboloid.
double bt_norm_orbit(const SeriesParams& p, double u, int K);

double speed(const SeriesParams& p);
/// Richardson extrapolation of d(u)/u over u in {1e-2, 5e-3, 2.5e-3}.
double speed_fit(const SeriesParams& p);
double curvature(const SeriesParams& p);

struct QiReport {
    std::vector<double> u;
    /// arccosh(I_u) - t u.
    std::vector<double> defect;
    double max_defect = 0.0;
    /// min over the grid of I_u e^{-tu}.
    double kappa_emp = 0.0;
    /// log(kappa_emp) <= defect <= log 2 at every grid point.
    bool in_band = true;
    /// Fitted slope of the defect over the last quarter of the grid.
    double tail_slope = 0.0;
    /// I_u <= e^{tu}(1 + 1e-9) at every grid point.
    bool upper_bound_ok = true;
};

QiReport qi_defect(const SeriesParams& p, const std::vector<double>& u_grid);

struct BoundaryDirection {
    ZonalCoeffs coeffs;
    /// Largest change of a_k / sqrt(p_k) between the last two ratio levels.
    double last_change = 0.0;
    bool converged = false;
    /// form_bt(dir, dir) / sum |lambda_k| a_k^2.
    double isotropy_defect = 0.0;
};

/// Limit of a_k(u)/a_0(u) as u -> infinity, any t > 0.
BoundaryDirection zonal_ray_limit(const SeriesParams& p, int K, double u_max = 20.0, double tol = 1e-8);
/// Same as zonal_ray_limit with t restricted to (0,1). Throws InvariantError
/// when the ratios have not settled.
BoundaryDirection boundary_direction(const SeriesParams& p, int K, double u_max = 20.0, double tol = 1e-8);

struct L2Report {
    std::vector<int> K;
    std::vector<double> s_plain;
    std::vector<double> s_weighted;
    /// Log-log slope of S_plain against K.
    double exponent = 0.0;
    /// S_weighted(K_last) - S_weighted(K_first).
    double weighted_tail = 0.0;
    bool plain_increasing = false;
    bool verdict = false;
};

/// Partial sums of p_k abar_k^2 with abar_k = |a_k| / sqrt(p_k).
L2Report l2_divergence_diag(const ZonalCoeffs& dir, const WeightVector& w, const std::vector<int>& K_list,
                            double tol = 1e-4);

struct KlSlope {
    double value = 0.0;
    bool degenerate = false;
};

/// a_1 = -(1/(n-1)) int log |Jac(g^{-1})| db.
KlSlope kl_slope(int n, const Mat& g);

/// Coefficient a in the least-squares fit cosh d - 1 = a t + b t^2.
double kl_fit(int n, const Mat& g, const std::vector<double>& t_list);

double renorm_ratio(const SeriesParams& p, const Mat& g);

} // namespace hinfty
