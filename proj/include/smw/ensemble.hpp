#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smw/numeric.hpp"

namespace smw {

/// One node of a regression tree, stored in a flat array with index links.
/// variable == -1 marks a leaf; splits send x[variable] <= threshold left.
struct TreeNode {
    std::int32_t variable = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;      // leaf: mean property value of its members
    std::int32_t n_members = 0;
};

struct Tree {
    std::vector<TreeNode> nodes; // nodes[0] is the root; preorder, left first
};

struct ForestConfig {
    std::size_t n_trees = 1000;
    std::size_t mtry = 0;    // variables sampled per split; 0 = max(1, cols/3)
    std::size_t min_leaf = 1;
};

struct Forest {
    std::vector<Tree> trees;
    ForestConfig config;     // with mtry resolved
    std::uint64_t seed = 0;
};

/// A candidate decision boundary: the midpoint of two adjacent distinct
/// values of one variable, scored by the squared-error reduction it buys.
struct SplitCandidate {
    std::size_t variable = 0;
    double threshold = 0.0;
    double gain = 0.0;       // SSE(parent) - SSE(left) - SSE(right)
};

/// Best split over the given members and candidate variables, or nothing if
/// no candidate has positive gain. Ties break toward the lowest variable
/// index, then the lowest threshold.
std::optional<SplitCandidate> best_split(const Matrix& X, const Vector& y, std::span<const std::size_t> members,
                                         std::span<const std::size_t> variables, std::size_t min_leaf);

/// Grows one CART regression tree. At every node mtry distinct variables are
/// drawn without replacement from rng; growth stops when a node is smaller
/// than 2*min_leaf, its y values are constant, or no split has positive
/// gain. Nodes are laid out in preorder (left subtree first) so a fit is
/// fully determined by (data, mtry, min_leaf, rng state).
Tree fit_tree(const Matrix& X, const Vector& y, std::size_t mtry, std::size_t min_leaf, RngState& rng);

double predict_tree(const Tree& tree, std::span<const double> x);

/// Bags n_trees CART fits. Tree i uses the derived generator
/// RngState(seed ^ i) for both its bootstrap draw (rows sampled with
/// replacement, then sorted by source row index so only the drawn multiset
/// matters) and its per-node variable draws; serial and parallel fits would
/// therefore agree tree for tree.
Forest fit_forest(const Matrix& X, const Vector& y, const ForestConfig& cfg, std::uint64_t seed);

/// Mean of the per-tree predictions. Always inside [min, max] of the
/// training property values.
double predict_forest(const Forest& forest, std::span<const double> x);

} // namespace smw
