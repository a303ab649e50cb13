#include "smw/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

std::size_t resolve_mtry(std::size_t mtry, std::size_t cols) {
    if (mtry == 0) return std::max<std::size_t>(1, cols / 3);
    return mtry;
}

struct Grower {
    const Matrix& X;
    const Vector& y;
    std::size_t mtry;
    std::size_t min_leaf;
    RngState& rng;
    std::vector<TreeNode> nodes;
    std::vector<std::size_t> var_pool;

    std::int32_t grow(std::vector<std::size_t>& members) {
        const auto id = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();

        double lo = y[members.front()], hi = lo, sum = 0.0;
        for (std::size_t i : members) {
            lo = std::min(lo, y[i]);
            hi = std::max(hi, y[i]);
            sum += y[i];
        }
        // clamping the mean into the member range keeps the forest range
        // bound exact under floating-point rounding
        const double node_mean = std::clamp(sum / static_cast<double>(members.size()), lo, hi);

        auto make_leaf = [&] {
            nodes[id].value = node_mean;
            nodes[id].n_members = static_cast<std::int32_t>(members.size());
            return id;
        };

        if (members.size() < 2 * min_leaf || lo == hi) return make_leaf();

        // draw mtry distinct variables by partial Fisher-Yates
        var_pool.resize(X.cols());
        std::iota(var_pool.begin(), var_pool.end(), std::size_t{0});
        const std::size_t draw = std::min(mtry, X.cols());
        for (std::size_t j = 0; j < draw; ++j)
            std::swap(var_pool[j], var_pool[j + rng.uniform_index(X.cols() - j)]);
        std::vector<std::size_t> vars(var_pool.begin(), var_pool.begin() + static_cast<std::ptrdiff_t>(draw));
        std::sort(vars.begin(), vars.end());

        const std::optional<SplitCandidate> cand = best_split(X, y, members, vars, min_leaf);
        if (!cand) return make_leaf();

        std::vector<std::size_t> left_members, right_members;
        for (std::size_t i : members) {
            if (X(i, cand->variable) <= cand->threshold)
                left_members.push_back(i);
            else
                right_members.push_back(i);
        }

        nodes[id].variable = static_cast<std::int32_t>(cand->variable);
        nodes[id].threshold = cand->threshold;
        nodes[id].n_members = static_cast<std::int32_t>(members.size());
        members.clear();
        members.shrink_to_fit();
        const std::int32_t l = grow(left_members);
        const std::int32_t r = grow(right_members);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }
};

} // namespace

std::optional<SplitCandidate> best_split(const Matrix& X, const Vector& y, std::span<const std::size_t> members,
                                         std::span<const std::size_t> variables, std::size_t min_leaf) {
    const std::size_t n = members.size();
    if (n < 2) return std::nullopt;

    // work on y shifted by the node mean; the shift cancels in every SSE and
    // removes most of the cancellation error in the prefix-sum formula
    double mean = 0.0;
    for (std::size_t i : members) mean += y[i];
    mean /= static_cast<double>(n);

    double parent_sse = 0.0;
    for (std::size_t i : members) {
        const double z = y[i] - mean;
        parent_sse += z * z;
    }

    std::optional<SplitCandidate> best;
    std::vector<std::pair<double, double>> pts(n); // (x value, shifted y)
    std::vector<double> pre1(n + 1, 0.0), pre2(n + 1, 0.0);

    for (std::size_t v : variables) {
        for (std::size_t i = 0; i < n; ++i) pts[i] = {X(members[i], v), y[members[i]] - mean};
        std::sort(pts.begin(), pts.end());
        if (pts.front().first == pts.back().first) continue; // constant variable

        for (std::size_t i = 0; i < n; ++i) {
            pre1[i + 1] = pre1[i] + pts[i].second;
            pre2[i + 1] = pre2[i] + pts[i].second * pts[i].second;
        }
        for (std::size_t j = 1; j < n; ++j) {
            if (pts[j - 1].first == pts[j].first) continue; // only between distinct values
            if (j < min_leaf || n - j < min_leaf) continue;

            const double a = pts[j - 1].first, b = pts[j].first;
            double threshold = a + (b - a) / 2.0;
            if (!(threshold < b)) threshold = a; // midpoint rounded up to b; fall back to the left value

            const double nl = static_cast<double>(j), nr = static_cast<double>(n - j);
            const double sse_l = std::max(0.0, pre2[j] - pre1[j] * pre1[j] / nl);
            const double sr1 = pre1[n] - pre1[j];
            const double sse_r = std::max(0.0, (pre2[n] - pre2[j]) - sr1 * sr1 / nr);
            const double gain = parent_sse - sse_l - sse_r;

            if (gain > 0.0 && (!best || gain > best->gain)) best = SplitCandidate{v, threshold, gain};
        }
    }
    return best;
}

Tree fit_tree(const Matrix& X, const Vector& y, std::size_t mtry, std::size_t min_leaf, RngState& rng) {
    require(X.rows() >= 1, "fit_tree: empty input");
    require(X.rows() == y.size(), "fit_tree: X rows != y length");
    require(min_leaf >= 1, "fit_tree: min_leaf must be >= 1");
    require(mtry >= 1 && mtry <= X.cols(), "fit_tree: mtry " + std::to_string(mtry) + " outside [1, " +
                                               std::to_string(X.cols()) + "]");
    Grower g{X, y, mtry, min_leaf, rng, {}, {}};
    std::vector<std::size_t> all(X.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    g.grow(all);
    return Tree{std::move(g.nodes)};
}

double predict_tree(const Tree& tree, std::span<const double> x) {
    require(!tree.nodes.empty(), "predict_tree: empty tree");
    const TreeNode* node = &tree.nodes.front();
    while (node->variable >= 0) {
        require(static_cast<std::size_t>(node->variable) < x.size(),
                "predict_tree: x has " + std::to_string(x.size()) + " entries, split needs variable " +
                    std::to_string(node->variable));
        node = &tree.nodes[static_cast<std::size_t>(x[static_cast<std::size_t>(node->variable)] <= node->threshold
                                                        ? node->left
                                                        : node->right)];
    }
    return node->value;
}

Forest fit_forest(const Matrix& X, const Vector& y, const ForestConfig& cfg, std::uint64_t seed) {
    require(X.rows() >= 1, "fit_forest: empty input");
    require(X.rows() == y.size(), "fit_forest: X rows != y length");
    require(cfg.n_trees >= 1, "fit_forest: n_trees must be >= 1");

    Forest forest;
    forest.config = cfg;
    forest.config.mtry = resolve_mtry(cfg.mtry, X.cols());
    require(forest.config.mtry <= X.cols(), "fit_forest: mtry exceeds column count");
    forest.seed = seed;
    forest.trees.reserve(cfg.n_trees);

    const std::size_t n = X.rows();
    std::vector<std::size_t> draw(n);
    for (std::size_t tree_idx = 0; tree_idx < cfg.n_trees; ++tree_idx) {
        RngState rng(seed ^ static_cast<std::uint64_t>(tree_idx));
        for (std::size_t i = 0; i < n; ++i) draw[i] = rng.uniform_index(n);
        std::sort(draw.begin(), draw.end()); // canonical order: by source row index
        Matrix Xb = take_rows(X, draw);
        Vector yb(n);
        for (std::size_t i = 0; i < n; ++i) yb[i] = y[draw[i]];
        forest.trees.push_back(fit_tree(Xb, yb, forest.config.mtry, forest.config.min_leaf, rng));
    }
    return forest;
}

double predict_forest(const Forest& forest, std::span<const double> x) {
    require(!forest.trees.empty(), "predict_forest: empty forest");
    double sum = 0.0;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const Tree& t : forest.trees) {
        const double p = predict_tree(t, x);
        sum += p;
        lo = first ? p : std::min(lo, p);
        hi = first ? p : std::max(hi, p);
        first = false;
    }
    // same rounding guard as the leaf means: the average of the per-tree
    // predictions must stay inside their own range
    return std::clamp(sum / static_cast<double>(forest.trees.size()), lo, hi);
}

} // namespace smw
