#pragma once

// Piecewise-linear functions with jumps and compact support.
//
// A PLFunction is stored as a strictly increasing list of nodes; each node
// carries the left and right limits of the function at that abscissa.
// Between consecutive nodes the function is affine (from the right limit of
// the first node to the left limit of the second). Outside the closed hull of
// the nodes the function vanishes, so the left limit at the first node and
// the right limit at the last node are always 0.

#include <cstddef>
#include <span>
#include <vector>

namespace claw {

enum class Side { left, right };

struct Node {
    double x = 0.0;
    double left = 0.0;
    double right = 0.0;

    double jump() const { return right - left; }
    double lower() const { return left < right ? left : right; }
    bool operator==(const Node&) const = default;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool operator==(const Interval&) const = default;
};

class PLFunction {
public:
    PLFunction() = default;

    // Throws std::invalid_argument if abscissas are not strictly increasing,
    // a value is not finite, or the boundary limits are nonzero.
    explicit PLFunction(std::vector<Node> nodes);

    // Continuous interpolant through (x_i, y_i); y_0 and y_{n-1} must be 0.
    static PLFunction from_samples(std::span<const double> xs, std::span<const double> ys);

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    bool is_zero() const;

    // Closed hull of the nodes; {0,0} for the zero function.
    Interval support_hull() const;
    double width() const { return support_hull().length(); }

    double eval(double x, Side side = Side::right) const;
    // min of the two one-sided limits
    double eval_lower(double x) const;

    double slope(std::size_t segment) const;

    bool operator==(const PLFunction&) const = default;

private:
    std::vector<Node> nodes_;
};

// Piecewise quadratic, continuous, constant on both tails.
// On [x_i, x_{i+1}]: q(x) = c0_i + c1_i (x - x_i) + c2_i (x - x_i)^2.
class PWQuadratic {
public:
    struct Piece {
        double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    };

    PWQuadratic() = default;
    PWQuadratic(std::vector<double> xs, std::vector<Piece> pieces);

    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    double operator()(double x) const;
    double left_tail() const { return 0.0; }
    double right_tail() const;

    // max over nodes of |q(x_i^-) - q(x_i^+)|
    double continuity_defect() const;

private:
    std::vector<double> xs_;
    std::vector<Piece> pieces_;  // xs_.size() - 1 pieces
};

// --- measurements ---------------------------------------------------------

double total_variation(const PLFunction& f);
// Variation of the restriction of f to the open window (lo, hi).
double total_variation(const PLFunction& f, const Interval& window);
double positive_variation(const PLFunction& f);
double negative_variation(const PLFunction& f);
double l1_norm(const PLFunction& f);
// (integral |f|^p)^{1/p}, exact on each affine piece; p >= 1.
double lp_norm(const PLFunction& f, double p);
double linf_norm(const PLFunction& f);
double integral(const PLFunction& f);
// Lebesgue measure of {f != 0}; values with |v| <= zero_tol count as zero.
double support_measure(const PLFunction& f, double zero_tol = 0.0);
double max_slope(const PLFunction& f);
double max_abs_slope(const PLFunction& f);
double max_upward_jump(const PLFunction& f);
// Largest violation of f(x2) - f(x1) <= p (x2 - x1) over x1 < x2, measured in
// value (not slope) units so that short segments do not amplify rounding.
double one_sided_excess(const PLFunction& f, double p);

// Maximal open intervals of {f != 0}, left to right. A jump that changes
// sign without passing through zero does not split a component.
std::vector<Interval> nonzero_components(const PLFunction& f, double zero_tol = 0.0);

// --- algebra --------------------------------------------------------------

PLFunction add(const PLFunction& f, const PLFunction& g);
PLFunction subtract(const PLFunction& f, const PLFunction& g);
PLFunction scale_values(const PLFunction& f, double c);
PLFunction negate(const PLFunction& f);
// x -> f(-x)
PLFunction reflect(const PLFunction& f);
// x -> f(x - shift)
PLFunction translate(const PLFunction& f, double shift);
// x -> a * f(b x), b > 0
PLFunction affine_rescale(const PLFunction& f, double amplitude, double space_factor);
// u_mu(x) = mu^{(1-alpha)/alpha} u(mu x); leaves the P_alpha norm invariant.
PLFunction rescale(const PLFunction& f, double mu, double alpha);
PLFunction positive_part(const PLFunction& f);
PLFunction negative_part(const PLFunction& f);  // max(-f, 0)
// f on the open interval, 0 elsewhere.
PLFunction restrict_to(const PLFunction& f, const Interval& window);
// Replace f on each interval [a, b] by the chord from f(a-) to f(b+).
// Intervals must be disjoint and sorted; touching intervals are merged.
PLFunction bridge(const PLFunction& f, std::span<const Interval> intervals);

// Merge abscissas closer than merge_tol (default: 1e-12 x support width),
// snap |values| <= zero_tol to 0 and drop redundant nodes.
PLFunction normalize(const PLFunction& f, double merge_tol = -1.0, double zero_tol = 0.0);

// Sum of many functions by a single sweep over the union of nodes.
PLFunction sum(std::span<const PLFunction> fs);

// Union of intervals, merged and sorted.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);
double measure(std::span<const Interval> intervals);

PWQuadratic potential(const PLFunction& u0);

}  // namespace claw
