#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "hinfty/error.hpp"

namespace hinfty {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Diagonal quadratic form of signature (p, N-p); the +1 entries come first.
class QuadSpace {
public:
    QuadSpace(int dim, int index);
    explicit QuadSpace(Vec signs);

    /// Minkowski space R^{1,n}.
    static QuadSpace hyperbolic(int n) { return QuadSpace(n + 1, 1); }

    int dim() const { return static_cast<int>(signs_.size()); }
    int index() const { return index_; }
    const Vec& signs() const { return signs_; }
    Mat gram() const { return signs_.asDiagonal(); }

private:
    Vec signs_;
    int index_;
};

double bform(const QuadSpace& space, const Vec& x, const Vec& y);

/// Clamp tolerance for arccosh arguments.
inline constexpr double kAcoshSlack = 1e-8;
/// Threshold separating hyperbolic from non-hyperbolic elements.
inline constexpr double kClassEps = 1e-8;
/// Form-preservation tolerance used by certify().
inline constexpr double kCertifyTol = 1e-10;

/// arccosh(x) with x in [1 - 1e-8, 1) clamped to 1.
double safe_acosh(double x);

/// Point of the upper sheet, B(x,x) = 1, x_0 > 0.
struct HPoint {
    Vec coords;
};

/// Isotropic vector, unit Euclidean norm, positive first coordinate.
struct BoundaryRay {
    Vec coords;
};

HPoint make_hpoint(const QuadSpace& space, const Vec& x);
BoundaryRay make_ray(const QuadSpace& space, const Vec& x);
/// Boundary ray (1, b)/|.| for a unit vector b of S^{N-2}.
BoundaryRay ray_from_sphere(const Vec& b);
/// Sphere point b of the ray, i.e. its Klein image.
Vec ray_to_sphere(const BoundaryRay& r);
HPoint basepoint(int n);

double hdist(const QuadSpace& space, const HPoint& x, const HPoint& y);

Vec to_klein(const HPoint& x);
HPoint from_klein(const Vec& b);
/// Hyperbolic distance between two Klein ball points.
double klein_dist(const Vec& a, const Vec& b);

enum class IsometryType { elliptic, parabolic, hyperbolic };
std::string to_string(IsometryType t);

struct Isometry {
    Mat matrix;
    IsometryType type = IsometryType::elliptic;
    double translation_length = 0.0;
};

/// max |M^T J M - J|.
double form_defect(const QuadSpace& space, const Mat& m);
/// Throws InvariantError when the form defect exceeds tol.
void certify(const QuadSpace& space, const Mat& m, double tol = kCertifyTol);

/// log spectral radius, with Jordan-block round-off of unipotent elements
/// snapped to zero.
double translation_length(const Mat& m);

Isometry classify(const QuadSpace& space, const Mat& m);

struct GramRealization {
    bool ok = false;
    int positive_count = 0;
    /// Row i holds the vector of point i, in coordinates of signature (p, m-p).
    Mat points;
    /// Diagonal of the form on the realized coordinates (+1 entries first).
    Vec signs;
};

GramRealization gram_realize(const Mat& gram, int index, double tol = 1e-9);

} // namespace hinfty
