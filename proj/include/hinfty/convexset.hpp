#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hinfty/prinseries.hpp"

namespace hinfty {

/// Points of the truncated Klein ball in the common renormalized coordinates:
/// coordinate i carries sqrt|lambda_k| times the coefficient of basis function
/// i >= 1 of the SphBasis(n, K), divided by the constant coefficient.
struct KleinCloud {
    int n = 2;
    double t = 1.0;
    int K = 0;
    std::string provenance;
    /// One point per row.
    Mat points;

    Eigen::Index size() const { return points.rows(); }
};

/// The finite set M of the strong topology; first element is the identity.
struct MotionSample {
    std::vector<Isometry> elements;
};

MotionSample default_motion_sample(int n);

/// sqrt|lambda_k| per SphBasis index (0 for the constant), for t in (0,1].
Vec common_scaling(const SeriesParams& p, int K);

/// Klein point of a coefficient vector in the SphBasis.
Vec coeffs_to_klein(const Vec& coeffs, const Vec& scaling);

/// m directions: equally spaced angles (n=2) or a Fibonacci net (n=3).
Mat sphere_net(int n, int m);

/// Klein limits of f_t along the rays towards the m net directions, t in (0,1].
KleinCloud sample_boundary(const SeriesParams& p, int K, int m, double u_max = 20.0);

/// f_t(x) for x at distance r in direction b, over the given radii and net.
KleinCloud sample_orbit(const SeriesParams& p, int K, const std::vector<double>& radii, int m);

enum class MidpointRule { chord, hyperbolic };

/// Iterated midpoint closure. Each iterate contains the previous one; when the
/// candidates exceed cap, the new points are chosen by farthest-point thinning.
KleinCloud hull_sample(const KleinCloud& cloud, int iters, MidpointRule rule = MidpointRule::chord,
                       Eigen::Index cap = 5000);

enum class Metric { hyperbolic, euclidean };

double hausdorff(const KleinCloud& a, const KleinCloud& b, Metric metric = Metric::hyperbolic);
/// max over x in X of the hyperbolic distance to A.
double coradius(const KleinCloud& a, const KleinCloud& x);

/// Points with hyperbolic distance <= R from the origin.
KleinCloud restrict_ball(const KleinCloud& c, double R);

/// Hyperbolic midpoint of two Klein points.
Vec klein_midpoint(const Vec& a, const Vec& b);

/// Action of rho_t(g) on the common coordinates; n in {2,3}.
class CommonAction {
public:
    CommonAction(const SeriesParams& p, int K, const Mat& g);
    Vec apply(const Vec& klein) const;

private:
    Mat w_;
};

struct ContinuityRow {
    double t = 0.0;
    double hausdorff_hyp = 0.0;
    double hausdorff_euc = 0.0;
    double equivariance_defect = 0.0;
    Eigen::Index points = 0;
};

/// Hausdorff distance between R-balls of the hulls at t and t0, and the
/// equivariance defect of nearest-point matching over the default motion
/// sample. For t = t0 the matching is the identity.
std::vector<ContinuityRow> continuity_curve(int n, double t0, const std::vector<double>& t_list, double R, int K,
                                            int m, int iters = 1, int defect_points = 200);

struct CoradiusRow {
    double t = 0.0;
    double coradius = 0.0;
};

/// Coradius of the sampled orbit inside the R-ball of the hull of m boundary samples.
std::vector<CoradiusRow> coradius_curve(int n, const std::vector<double>& t_list, double R, int K, int m,
                                        int radii = 121, double r_max = 6.0, int directions = 256);

/// CSV with columns t, K, provenance, x1..xD.
void write_cloud_csv(std::ostream& out, const KleinCloud& c);

} // namespace hinfty
