#include "hinfty/treerep.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <algorithm>
#include <deque>
#include <sstream>
#include <string>

namespace hinfty {

MetricTree::MetricTree(int m, const std::vector<std::pair<int, int>>& edges) : m_(m), edges_(edges)
{
    require(m >= 1, "MetricTree: need at least one vertex");
    if (static_cast<int>(edges.size()) != m - 1)
        throw ConfigError("MetricTree: a tree on m vertices has m-1 edges");
    std::vector<std::vector<int>> adj(m);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= m || v >= m || u == v)
            throw ConfigError("MetricTree: invalid edge " + std::to_string(u) + " " + std::to_string(v));
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    d_ = Eigen::MatrixXi::Constant(m, m, -1);
    for (int s = 0; s < m; ++s) {
        std::deque<int> q{s};
        d_(s, s) = 0;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            for (int y : adj[x])
                if (d_(s, y) < 0) {
                    d_(s, y) = d_(s, x) + 1;
                    q.push_back(y);
                }
        }
    }
    if ((d_.array() < 0).any())
        throw ConfigError("MetricTree: edge list is not connected");
}

MetricTree MetricTree::parse(std::istream& in)
{
    std::vector<std::pair<int, int>> edges;
    int mx = -1;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v))
            throw ConfigError("tree input: expected 'u v' per line, got: " + line);
        edges.emplace_back(u, v);
        mx = std::max({mx, u, v});
    }
    return MetricTree(mx + 1 > 0 ? mx + 1 : 1, edges);
}

MetricTree MetricTree::random(int m, std::mt19937_64& rng)
{
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < m; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    return MetricTree(m, edges);
}

MetricTree MetricTree::path(int m)
{
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < m; ++v)
        edges.emplace_back(v - 1, v);
    return MetricTree(m, edges);
}

MetricTree MetricTree::star(int leaves)
{
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return MetricTree(leaves + 1, edges);
}

int MetricTree::four_point_defect() const
{
    int worst = 0;
    for (int a = 0; a < m_; ++a)
        for (int b = a; b < m_; ++b)
            for (int c = 0; c < m_; ++c)
                for (int e = c; e < m_; ++e) {
                    int s[3] = {d_(a, b) + d_(c, e), d_(a, c) + d_(b, e), d_(a, e) + d_(b, c)};
                    std::sort(s, s + 3);
                    worst = std::max(worst, s[2] - s[1]);
                }
    return worst;
}

Mat tree_gram(const MetricTree& tree, double lam)
{
    require(lam > 1, "tree_gram: lambda must exceed 1");
    const int m = tree.size();
    Mat g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g(i, j) = std::pow(lam, tree.dist()(i, j));
    return g;
}

TreeEmbedding tree_embed(const MetricTree& tree, double lam)
{
    const Mat g = tree_gram(tree, lam);
    TreeEmbedding e;
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    e.eigenvalues = es.eigenvalues();
    const double zero = 1e-12 * e.eigenvalues.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
        if (e.eigenvalues[i] > zero)
            ++e.positive_eigenvalues;
    if (e.positive_eigenvalues != 1)
        throw InvariantError("tree_embed: Gram matrix has " + std::to_string(e.positive_eigenvalues) +
                             " positive eigenvalues at lambda = " + std::to_string(lam));
    const int m = tree.size();
    if (m == 1) {
        e.space = QuadSpace(2, 1);
        e.points.push_back(basepoint(1));
        e.certified = true;
        return e;
    }
    const GramRealization r = gram_realize(g, 1, 1e-9);
    if (!r.ok)
        throw InvariantError("tree_embed: Gram realization failed to reproduce the Gram matrix");
    e.space = QuadSpace(r.signs);
    for (int i = 0; i < m; ++i)
        e.points.push_back(make_hpoint(e.space, r.points.row(i).transpose()));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double want = std::acosh(g(i, j));
            const double got = hdist(e.space, e.points[i], e.points[j]);
            e.max_dist_error = std::max(e.max_dist_error, std::abs(got - want));
        }
    e.certified = e.max_dist_error < 1e-8;
    return e;
}

} // namespace hinfty
