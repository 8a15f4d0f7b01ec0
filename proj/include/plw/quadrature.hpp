#pragma once

// Double-exponential quadrature for integrals of the form
//     int_0^inf g(x) w(x; t) dx
// with w the perturbed Laguerre-type weight.
//
// The half line is split at x0 = max(1, (t/2)^(1/3)). On (0, x0] a tanh-sinh
// map clusters nodes at both ends; exp(-t/x) makes x = 0 infinitely flat. On
// [x0, inf) the map x = x0 + exp(s - exp(-s)) handles the Gaussian tail.
// Both pieces use the trapezoidal rule in s with step h0 / 2^level; each
// level adds only the odd multiples of its step, so refinement reuses all
// previous nodes.
//
// Node sums run through sum_nodes(), which splits the node list into fixed
// chunks of kNodeChunk, reduces each chunk in parallel, then adds the chunk
// partials in order. The result is bit-identical for any thread count.
// sum_nodes_serial() is the plain sequential reference.

#include "plw/errors.hpp"
#include "plw/real.hpp"
#include "plw/weight.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plw {

struct QuadratureNode {
    Real x;
    /// dx/ds * w(x); the trapezoidal step is applied when summing.
    Real weight;
};

/// Interval in the transformed variable s, stored in double (it only
/// decides which nodes exist, not their values).
struct SWindow {
    double lo = 0;
    double hi = 0;
};

class DeQuadrature {
public:
    /// Node set for integrands x^k w(x) with k in [k_min, k_max]: the
    /// truncation window is wide enough that dropped terms are below the
    /// working precision for every such k.
    DeQuadrature(const Parameters& params, int k_min, int k_max);

    const Parameters& params() const { return params_; }
    const Real& split_point() const { return x0_; }
    const SWindow& left_window() const { return left_; }
    const SWindow& right_window() const { return right_; }

    int levels() const { return static_cast<int>(levels_.size()); }
    /// Nodes introduced at `level` (all nodes for level 0).
    std::span<const QuadratureNode> level_nodes(int level) const;
    /// Trapezoidal step h0 / 2^level.
    Real step(int level) const;
    std::size_t node_count() const;

    void add_level();

    static constexpr double kInitialStep = 0.5;

private:
    Parameters params_;
    Real x0_;
    SWindow left_;
    SWindow right_;
    std::vector<std::vector<QuadratureNode>> levels_;
};

inline constexpr std::size_t kNodeChunk = 32;

/// Fixed-order chunked reduction. `accumulate(node, acc)` must add the
/// node's contributions into acc (size `width`) and touch nothing else.
template <class Accumulate>
std::vector<Real> sum_nodes(std::span<const QuadratureNode> nodes, std::size_t width, Bits prec,
                            const Accumulate& accumulate) {
    const std::size_t chunks = (nodes.size() + kNodeChunk - 1) / kNodeChunk;
    std::vector<std::vector<Real>> partial(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        std::vector<Real> local(width, Real(0L, prec));
        const std::size_t begin = static_cast<std::size_t>(c) * kNodeChunk;
        const std::size_t end = std::min(nodes.size(), begin + kNodeChunk);
        for (std::size_t i = begin; i < end; ++i) accumulate(nodes[i], std::span<Real>(local));
        partial[static_cast<std::size_t>(c)] = std::move(local);
    }
    std::vector<Real> total(width, Real(0L, prec));
    for (const auto& part : partial)
        for (std::size_t i = 0; i < width; ++i) total[i] += part[i];
    return total;
}

template <class Accumulate>
std::vector<Real> sum_nodes_serial(std::span<const QuadratureNode> nodes, std::size_t width, Bits prec,
                                   const Accumulate& accumulate) {
    std::vector<Real> total(width, Real(0L, prec));
    for (const auto& node : nodes) accumulate(node, std::span<Real>(total));
    return total;
}

struct RefinedIntegral {
    std::vector<Real> values;
    /// Finest level summed.
    int level = 0;
    /// max_i |S_level[i] - S_{level-1}[i]| / |S_level[i]|
    Real change;
};

namespace detail {

/// max_i |next[i] - prev[i]| / max(|next[i]|, scale[i]); `scale` may be empty.
Real max_relative_change(const std::vector<Real>& prev, const std::vector<Real>& next,
                         std::span<const Real> scale = {});

// `levels(level)` returns a rule holding at least level + 1 levels.
template <class LevelSource, class Accumulate>
RefinedIntegral refine(LevelSource&& levels, Bits prec, std::size_t width, const Accumulate& accumulate,
                       const Real& rel_tol, int max_levels, int min_levels, std::span<const Real> scale) {
    std::vector<Real> cumulative(width, Real(0L, prec));
    std::vector<Real> previous;
    for (int level = 0; level < max_levels; ++level) {
        const DeQuadrature& rule = levels(level);
        auto partial = sum_nodes(rule.level_nodes(level), width, prec, accumulate);
        for (std::size_t i = 0; i < width; ++i) cumulative[i] += partial[i];
        const Real h = rule.step(level);
        std::vector<Real> estimate(width);
        for (std::size_t i = 0; i < width; ++i) estimate[i] = cumulative[i] * h;
        if (level > 0) {
            Real change = max_relative_change(previous, estimate, scale);
            if (level + 1 >= min_levels && change <= rel_tol)
                return RefinedIntegral{std::move(estimate), level, std::move(change)};
        }
        previous = std::move(estimate);
    }
    throw QuadratureNonConvergence("quadrature did not converge within " + std::to_string(max_levels) +
                                   " refinement levels");
}

}  // namespace detail

/// Sums levels 0, 1, ... of `quad` until two successive estimates agree to
/// `rel_tol` for every component, adding levels to `quad` as needed.
/// Components whose exact value may vanish should get a nonzero `scale`
/// entry; the change is measured relative to max(|value|, scale).
/// Throws QuadratureNonConvergence past `max_levels`.
template <class Accumulate>
RefinedIntegral integrate_refined(DeQuadrature& quad, std::size_t width, const Accumulate& accumulate,
                                  const Real& rel_tol, int max_levels, int min_levels = 3,
                                  std::span<const Real> scale = {}) {
    auto levels = [&](int level) -> const DeQuadrature& {
        while (quad.levels() <= level) quad.add_level();
        return quad;
    };
    return detail::refine(levels, quad.params().precision(), width, accumulate, rel_tol, max_levels, min_levels, scale);
}

/// As above for a shared rule: deeper levels are built on a private copy.
template <class Accumulate>
RefinedIntegral integrate_refined(const DeQuadrature& quad, std::size_t width, const Accumulate& accumulate,
                                  const Real& rel_tol, int max_levels, int min_levels = 3,
                                  std::span<const Real> scale = {}) {
    std::optional<DeQuadrature> extended;
    auto levels = [&](int level) -> const DeQuadrature& {
        if (level < quad.levels()) return quad;
        if (!extended) extended.emplace(quad);
        while (extended->levels() <= level) extended->add_level();
        return *extended;
    };
    return detail::refine(levels, quad.params().precision(), width, accumulate, rel_tol, max_levels, min_levels, scale);
}

/// Relative tolerance tied to the working precision (guard digits held back).
Real working_tolerance(const NumericPolicy& policy);

}  // namespace plw
