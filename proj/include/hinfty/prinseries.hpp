#pragma once

#include <vector>

#include "hinfty/harmonics.hpp"
#include "hinfty/quadspace.hpp"

namespace hinfty {

/// t = (n-1)(s - 1/2).
struct SeriesParams {
    int n = 2;
    double t = 0.5;
    double s = 1.0;

    static SeriesParams from_t(int n, double t);
    static SeriesParams from_s(int n, double s);
};

struct WeightVector {
    SeriesParams params;
    int K = 0;
    Vec lam;
    /// Some lambda_k vanished because t is an integer below k.
    bool degenerate = false;
};

double lambda_k(const SeriesParams& p, int k, bool* degenerate = nullptr);
WeightVector weights(const SeriesParams& p, int K);

struct SignatureReport {
    long long index = 0;
    long long positive_dims = 0;
    long long negative_dims = 0;
    /// Sum of p_k over k <= j with k = j mod 2, for t in (j, j+1).
    long long parity_rule = 0;
    /// C(n-1+j, n-1).
    long long binomial = 0;
    int j = 0;
};

/// Dimension of the finite-dimensional sign class of B_t, i.e. the blocks whose
/// sign differs from the tail sign of lambda_k.
SignatureReport signature_index(const SeriesParams& p, int K);

/// Sum over blocks of lambda_k <f_k, h_k>; degrees[i] is the block of coefficient i.
double form_bt(const WeightVector& w, const Vec& f, const Vec& h, const std::vector<int>& degrees);
/// Zonal coefficients, one per block.
double form_bt(const WeightVector& w, const Vec& f, const Vec& h);
/// Full coefficients in a SphBasis.
double form_bt(const WeightVector& w, const SphBasis& basis, const Vec& f, const Vec& h);

struct TruncatedRep {
    SeriesParams params;
    int K = 0;
    /// Sphere dimension of the basis (2 or 3), or the zonal sector when zonal is set.
    bool zonal = false;
    Mat matrix;
    WeightVector weights;
    int quad_degree = 0;
};

/// Default quadrature degree: 2K + 16 plus room for the spread of
/// frequencies caused by a displacement u.
int default_quad_degree(int K, double u);

/// Matrix of f -> B(g o, .)^{-e} f(g^{-1} .) in the SphBasis, n in {2,3}.
/// e = n-1+t gives pi_s, e = -t gives pi_{-s}.
Mat kernel_action_matrix(int n, const Mat& g, int K, double e, int quad_degree = 0);

/// pi_s(g) on degrees <= K.
TruncatedRep rep_matrix(const SeriesParams& p, const Mat& g, int K, int quad_degree = 0);
/// pi_{-s}(g) on degrees <= K.
TruncatedRep dual_rep_matrix(const SeriesParams& p, const Mat& g, int K, int quad_degree = 0);
/// Action of g_u on the zonal sector, any n >= 2.
TruncatedRep zonal_rep_matrix(const SeriesParams& p, double u, int K, bool dual = false);

/// max |B_t(M e_i, M e_j) - B_t(e_i, e_j)| over basis vectors of degree <= dmax.
double bt_invariance_defect(const TruncatedRep& rep, int dmax);

/// max |lambda_a M_s[a,j] - lambda_j M_{-s}[a,j]| over columns of degree <= dmax.
double intertwining_defect(const SeriesParams& p, const Mat& g, int K, int dmax, int quad_degree = 0);

/// |<pi_s(g) f1, pi_{-s}(g) f2> - <f1, f2>| in the plain L^2 pairing.
double dual_pairing_defect(const SeriesParams& p, const Mat& g, const Vec& f1, const Vec& f2, int K,
                           int quad_degree = 0);

double u2_weight(int n, int k);

/// Weights of the renormalized form: lambda_k/(1-t) for k >= 2, and the
/// limiting values -u2_weight at t = 1.
WeightVector renorm_weights(const SeriesParams& p, int K);

/// Degree list of a SphBasis, for form_bt.
std::vector<int> basis_degrees(const SphBasis& basis);

} // namespace hinfty
