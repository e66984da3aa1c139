#pragma once

#include <istream>
#include <random>
#include <utility>
#include <vector>

#include "hinfty/quadspace.hpp"

namespace hinfty {

/// Simplicial tree with unit edges and its path metric.
class MetricTree {
public:
    MetricTree(int m, const std::vector<std::pair<int, int>>& edges);

    /// Parses "u v" lines (0-indexed). Blank lines and lines starting with '#' are skipped.
    static MetricTree parse(std::istream& in);
    static MetricTree random(int m, std::mt19937_64& rng);
    static MetricTree path(int m);
    static MetricTree star(int leaves);

    int size() const { return m_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const Eigen::MatrixXi& dist() const { return d_; }

    /// max over quadruples of the four-point defect; 0 for a tree metric.
    int four_point_defect() const;

private:
    int m_;
    std::vector<std::pair<int, int>> edges_;
    Eigen::MatrixXi d_;
};

/// G_xy = lam^{d(x,y)}.
Mat tree_gram(const MetricTree& tree, double lam);

struct TreeEmbedding {
    std::vector<HPoint> points;
    QuadSpace space{2, 1};
    int positive_eigenvalues = 0;
    Vec eigenvalues;
    bool certified = false;
    /// max |hdist(Psi x, Psi y) - arccosh(lam^{d(x,y)})|.
    double max_dist_error = 0.0;
};

/// Realizes the tree in a hyperboloid; throws InvariantError unless the Gram
/// matrix has exactly one positive eigenvalue.
TreeEmbedding tree_embed(const MetricTree& tree, double lam);

} // namespace hinfty
