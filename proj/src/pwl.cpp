#include "claw/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace claw {

namespace {

double lerp(double a, double b, double s) { return a + (b - a) * s; }

double segment_l1(double a, double b, double len) {
    if (a * b >= 0.0) return 0.5 * len * (std::abs(a) + std::abs(b));
    return 0.5 * len * (a * a + b * b) / (std::abs(a) + std::abs(b));
}

// Index of the last node with x_i <= x, or npos when x < x_0.
std::size_t locate(const std::vector<Node>& nodes, double x) {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x,
                               [](double v, const Node& n) { return v < n.x; });
    if (it == nodes.begin()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(it - nodes.begin()) - 1;
}

}  // namespace

// --- PLFunction -----------------------------------------------------------

PLFunction::PLFunction(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (!std::isfinite(n.x) || !std::isfinite(n.left) || !std::isfinite(n.right))
            throw std::invalid_argument("PLFunction: non-finite node at index " + std::to_string(i));
        if (i > 0 && !(nodes_[i - 1].x < n.x))
            throw std::invalid_argument("PLFunction: abscissas not strictly increasing at index " +
                                        std::to_string(i));
    }
    if (!nodes_.empty()) {
        if (nodes_.front().left != 0.0)
            throw std::invalid_argument("PLFunction: left limit at first node must be 0");
        if (nodes_.back().right != 0.0)
            throw std::invalid_argument("PLFunction: right limit at last node must be 0");
    }
}

PLFunction PLFunction::from_samples(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("from_samples: size mismatch");
    std::vector<Node> nodes;
    nodes.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) nodes.push_back({xs[i], ys[i], ys[i]});
    if (!nodes.empty()) {
        nodes.front().left = 0.0;
        nodes.back().right = 0.0;
    }
    return PLFunction(std::move(nodes));
}

bool PLFunction::is_zero() const {
    return std::all_of(nodes_.begin(), nodes_.end(),
                       [](const Node& n) { return n.left == 0.0 && n.right == 0.0; });
}

Interval PLFunction::support_hull() const {
    if (nodes_.empty()) return {0.0, 0.0};
    return {nodes_.front().x, nodes_.back().x};
}

double PLFunction::eval(double x, Side side) const {
    if (nodes_.empty()) return 0.0;
    const std::size_t i = locate(nodes_, x);
    if (i == static_cast<std::size_t>(-1)) return 0.0;
    const Node& a = nodes_[i];
    if (x == a.x) return side == Side::left ? a.left : a.right;
    if (i + 1 == nodes_.size()) return 0.0;
    const Node& b = nodes_[i + 1];
    return lerp(a.right, b.left, (x - a.x) / (b.x - a.x));
}

double PLFunction::eval_lower(double x) const {
    return std::min(eval(x, Side::left), eval(x, Side::right));
}

double PLFunction::slope(std::size_t segment) const {
    const Node& a = nodes_.at(segment);
    const Node& b = nodes_.at(segment + 1);
    return (b.left - a.right) / (b.x - a.x);
}

// --- PWQuadratic ----------------------------------------------------------

PWQuadratic::PWQuadratic(std::vector<double> xs, std::vector<Piece> pieces)
    : xs_(std::move(xs)), pieces_(std::move(pieces)) {
    if (!xs_.empty() && pieces_.size() + 1 != xs_.size())
        throw std::invalid_argument("PWQuadratic: need one piece per gap");
}

double PWQuadratic::operator()(double x) const {
    if (xs_.empty() || x <= xs_.front()) return 0.0;
    if (x >= xs_.back()) return right_tail();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    const Piece& p = pieces_[i];
    const double s = x - xs_[i];
    return p.c0 + s * (p.c1 + s * p.c2);
}

double PWQuadratic::right_tail() const {
    if (pieces_.empty()) return 0.0;
    const Piece& p = pieces_.back();
    const double s = xs_.back() - xs_[xs_.size() - 2];
    return p.c0 + s * (p.c1 + s * p.c2);
}

double PWQuadratic::continuity_defect() const {
    double defect = 0.0;
    if (!pieces_.empty()) defect = std::abs(pieces_.front().c0);
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        const double s = xs_[i + 1] - xs_[i];
        defect = std::max(defect, std::abs(p.c0 + s * (p.c1 + s * p.c2) - pieces_[i + 1].c0));
    }
    return defect;
}

PWQuadratic potential(const PLFunction& u0) {
    const auto& n = u0.nodes();
    if (n.size() < 2) return {};
    std::vector<double> xs;
    std::vector<PWQuadratic::Piece> pieces;
    xs.reserve(n.size());
    pieces.reserve(n.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        const double len = n[i + 1].x - n[i].x;
        const double s = (n[i + 1].left - n[i].right) / len;
        xs.push_back(n[i].x);
        pieces.push_back({acc, n[i].right, 0.5 * s});
        acc += 0.5 * len * (n[i].right + n[i + 1].left);
    }
    xs.push_back(n.back().x);
    return PWQuadratic(std::move(xs), std::move(pieces));
}

// --- measurements ---------------------------------------------------------

double total_variation(const PLFunction& f) {
    const auto& n = f.nodes();
    double tv = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        tv += std::abs(n[i].jump());
        if (i + 1 < n.size()) tv += std::abs(n[i + 1].left - n[i].right);
    }
    return tv;
}

double total_variation(const PLFunction& f, const Interval& window) {
    const auto& n = f.nodes();
    double tv = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (window.lo < n[i].x && n[i].x < window.hi) tv += std::abs(n[i].jump());
        if (i + 1 < n.size()) {
            const double a = std::max(window.lo, n[i].x);
            const double b = std::min(window.hi, n[i + 1].x);
            if (b > a) tv += std::abs(f.slope(i)) * (b - a);
        }
    }
    return tv;
}

double positive_variation(const PLFunction& f) {
    const auto& n = f.nodes();
    double tv = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        tv += std::max(n[i].jump(), 0.0);
        if (i + 1 < n.size()) tv += std::max(n[i + 1].left - n[i].right, 0.0);
    }
    return tv;
}

double negative_variation(const PLFunction& f) {
    const auto& n = f.nodes();
    double tv = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        tv += std::max(-n[i].jump(), 0.0);
        if (i + 1 < n.size()) tv += std::max(n[i].right - n[i + 1].left, 0.0);
    }
    return tv;
}

double l1_norm(const PLFunction& f) {
    const auto& n = f.nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i)
        acc += segment_l1(n[i].right, n[i + 1].left, n[i + 1].x - n[i].x);
    return acc;
}

double lp_norm(const PLFunction& f, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    // integral of |v|^p over a piece where v runs linearly from a to b, same sign
    auto same_sign = [p](double a, double b, double len) {
        a = std::abs(a), b = std::abs(b);
        if (std::abs(b - a) <= 1e-12 * std::max(a, b)) return len * std::pow(0.5 * (a + b), p);
        return len * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a));
    };
    const auto& n = f.nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        const double a = n[i].right, b = n[i + 1].left, len = n[i + 1].x - n[i].x;
        if (a * b >= 0.0) {
            acc += same_sign(a, b, len);
        } else {
            const double s = a / (a - b);
            acc += same_sign(a, 0.0, s * len) + same_sign(0.0, b, (1.0 - s) * len);
        }
    }
    return std::pow(acc, 1.0 / p);
}

double linf_norm(const PLFunction& f) {
    double m = 0.0;
    for (const Node& n : f.nodes()) m = std::max({m, std::abs(n.left), std::abs(n.right)});
    return m;
}

double integral(const PLFunction& f) {
    const auto& n = f.nodes();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i)
        acc += 0.5 * (n[i + 1].x - n[i].x) * (n[i].right + n[i + 1].left);
    return acc;
}

double support_measure(const PLFunction& f, double zero_tol) {
    const auto& n = f.nodes();
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        if (std::abs(n[i].right) <= zero_tol && std::abs(n[i + 1].left) <= zero_tol) continue;
        m += n[i + 1].x - n[i].x;
    }
    return m;
}

double max_slope(const PLFunction& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) m = std::max(m, f.slope(i));
    return f.size() < 2 ? 0.0 : m;
}

double max_abs_slope(const PLFunction& f) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) m = std::max(m, std::abs(f.slope(i)));
    return m;
}

double max_upward_jump(const PLFunction& f) {
    double m = 0.0;
    for (const Node& n : f.nodes()) m = std::max(m, n.jump());
    return m;
}

double one_sided_excess(const PLFunction& f, double p) {
    // Max over x1 < x2 of f(x2) - f(x1) - p (x2 - x1); the running minimum of
    // f - p x is attained at node limits.
    const auto& n = f.nodes();
    double excess = 0.0;
    double run_min = 0.0;  // min of f(y) - p (y - x0) seen so far
    if (n.empty()) return 0.0;
    const double x0 = n.front().x;
    for (const Node& node : n) {
        const double s = p * (node.x - x0);
        const double gl = node.left - s, gr = node.right - s;
        excess = std::max(excess, gl - run_min);
        run_min = std::min(run_min, gl);
        excess = std::max(excess, gr - run_min);
        run_min = std::min(run_min, gr);
    }
    return excess;
}

std::vector<Interval> nonzero_components(const PLFunction& f, double zero_tol) {
    const auto& n = f.nodes();
    std::vector<Interval> out;
    bool open = false;
    double start = 0.0;
    auto close_at = [&](double x) {
        if (open && x > start) out.push_back({start, x});
        open = false;
    };
    auto is_zero = [&](double v) { return std::abs(v) <= zero_tol; };
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (is_zero(n[i].left) || is_zero(n[i].right)) {
            close_at(n[i].x);
            if (!is_zero(n[i].right)) {
                open = true;
                start = n[i].x;
            }
        }
        if (i + 1 == n.size()) break;
        const double a = n[i].right, b = n[i + 1].left;
        if (!open && !(is_zero(a) && is_zero(b))) {
            open = true;
            start = n[i].x;
        }
        if (!is_zero(a) && !is_zero(b) && ((a > 0.0) != (b > 0.0))) {
            const double xc = n[i].x + (n[i + 1].x - n[i].x) * a / (a - b);
            close_at(xc);
            open = true;
            start = xc;
        }
    }
    return out;
}

// --- algebra --------------------------------------------------------------

PLFunction sum(std::span<const PLFunction> fs) {
    std::vector<double> xs;
    for (const auto& f : fs)
        for (const Node& n : f.nodes()) xs.push_back(n.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) return {};

    std::vector<double> left(xs.size(), 0.0), right(xs.size(), 0.0);
    for (const auto& f : fs) {
        const auto& n = f.nodes();
        if (n.empty()) continue;
        auto first = std::lower_bound(xs.begin(), xs.end(), n.front().x);
        std::size_t seg = 0;
        for (auto it = first; it != xs.end() && *it <= n.back().x; ++it) {
            const double x = *it;
            const std::size_t k = static_cast<std::size_t>(it - xs.begin());
            while (seg + 1 < n.size() && n[seg + 1].x <= x) ++seg;
            if (n[seg].x == x) {
                left[k] += n[seg].left;
                right[k] += n[seg].right;
            } else {
                const double v = lerp(n[seg].right, n[seg + 1].left,
                                      (x - n[seg].x) / (n[seg + 1].x - n[seg].x));
                left[k] += v;
                right[k] += v;
            }
        }
    }
    std::vector<Node> nodes(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) nodes[k] = {xs[k], left[k], right[k]};
    nodes.front().left = 0.0;
    nodes.back().right = 0.0;
    return normalize(PLFunction(std::move(nodes)));
}

PLFunction add(const PLFunction& f, const PLFunction& g) {
    const PLFunction fs[] = {f, g};
    return sum(fs);
}

PLFunction subtract(const PLFunction& f, const PLFunction& g) { return add(f, negate(g)); }

PLFunction scale_values(const PLFunction& f, double c) {
    if (c == 0.0) return {};
    std::vector<Node> nodes = f.nodes();
    for (Node& n : nodes) {
        n.left *= c;
        n.right *= c;
    }
    return PLFunction(std::move(nodes));
}

PLFunction negate(const PLFunction& f) { return scale_values(f, -1.0); }

PLFunction reflect(const PLFunction& f) {
    std::vector<Node> nodes;
    nodes.reserve(f.size());
    for (auto it = f.nodes().rbegin(); it != f.nodes().rend(); ++it)
        nodes.push_back({-it->x, it->right, it->left});
    return PLFunction(std::move(nodes));
}

PLFunction translate(const PLFunction& f, double shift) {
    std::vector<Node> nodes = f.nodes();
    for (Node& n : nodes) n.x += shift;
    return PLFunction(std::move(nodes));
}

PLFunction affine_rescale(const PLFunction& f, double amplitude, double space_factor) {
    if (!(space_factor > 0.0)) throw std::domain_error("affine_rescale: space factor must be > 0");
    std::vector<Node> nodes = f.nodes();
    for (Node& n : nodes) {
        n.x /= space_factor;
        n.left *= amplitude;
        n.right *= amplitude;
    }
    return PLFunction(std::move(nodes));
}

PLFunction rescale(const PLFunction& f, double mu, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("rescale: alpha must lie in (0,1)");
    return affine_rescale(f, std::pow(mu, (1.0 - alpha) / alpha), mu);
}

PLFunction positive_part(const PLFunction& f) {
    const auto& n = f.nodes();
    std::vector<Node> out;
    out.reserve(n.size() * 2);
    for (std::size_t i = 0; i < n.size(); ++i) {
        out.push_back({n[i].x, std::max(n[i].left, 0.0), std::max(n[i].right, 0.0)});
        if (i + 1 == n.size()) break;
        const double a = n[i].right, b = n[i + 1].left;
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
            const double xc = n[i].x + (n[i + 1].x - n[i].x) * a / (a - b);
            if (xc > n[i].x && xc < n[i + 1].x) out.push_back({xc, 0.0, 0.0});
        }
    }
    return normalize(PLFunction(std::move(out)), 0.0);
}

PLFunction negative_part(const PLFunction& f) { return positive_part(negate(f)); }

PLFunction restrict_to(const PLFunction& f, const Interval& window) {
    const Interval hull = f.support_hull();
    const double a = std::max(window.lo, hull.lo);
    const double b = std::min(window.hi, hull.hi);
    if (!(b > a)) return {};
    std::vector<Node> out;
    out.push_back({a, 0.0, f.eval(a, Side::right)});
    for (const Node& n : f.nodes())
        if (n.x > a && n.x < b) out.push_back(n);
    out.push_back({b, f.eval(b, Side::left), 0.0});
    return normalize(PLFunction(std::move(out)), 0.0);
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
    std::erase_if(intervals, [](const Interval& iv) { return !(iv.hi > iv.lo); });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& p, const Interval& q) { return p.lo < q.lo; });
    std::vector<Interval> out;
    for (const Interval& iv : intervals) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

double measure(std::span<const Interval> intervals) {
    double m = 0.0;
    for (const Interval& iv : intervals) m += iv.length();
    return m;
}

PLFunction bridge(const PLFunction& f, std::span<const Interval> intervals) {
    const std::vector<Interval> ivs =
        merge_intervals(std::vector<Interval>(intervals.begin(), intervals.end()));
    if (ivs.empty() || f.empty()) return f;
    const auto& n = f.nodes();
    std::vector<Node> out;
    out.reserve(n.size() + 2 * ivs.size());
    std::size_t j = 0;
    for (const Interval& iv : ivs) {
        for (; j < n.size() && n[j].x < iv.lo; ++j) out.push_back(n[j]);
        const double va = f.eval(iv.lo, Side::left);
        const double vb = f.eval(iv.hi, Side::right);
        if (!out.empty() && out.back().x == iv.lo) out.pop_back();
        out.push_back({iv.lo, va, va});
        while (j < n.size() && n[j].x <= iv.hi) ++j;
        out.push_back({iv.hi, vb, vb});
    }
    for (; j < n.size(); ++j) out.push_back(n[j]);
    // Bridging past the hull must not leave nonzero boundary limits.
    out.front().left = 0.0;
    out.back().right = 0.0;
    return normalize(PLFunction(std::move(out)), 0.0);
}

PLFunction normalize(const PLFunction& f, double merge_tol, double zero_tol) {
    if (f.empty()) return f;
    if (merge_tol < 0.0) merge_tol = 1e-12 * f.width();
    std::vector<Node> n = f.nodes();

    // Merge clusters of close abscissas: keep the outer limits.
    std::vector<Node> merged;
    merged.reserve(n.size());
    for (const Node& node : n) {
        if (!merged.empty() && node.x - merged.back().x <= merge_tol)
            merged.back().right = node.right;
        else
            merged.push_back(node);
    }
    for (Node& node : merged) {
        if (std::abs(node.left) <= zero_tol) node.left = 0.0;
        if (std::abs(node.right) <= zero_tol) node.right = 0.0;
    }

    double scale = 0.0;
    for (const Node& node : merged)
        scale = std::max({scale, std::abs(node.left), std::abs(node.right)});
    const double tol = 1e-14 * scale;

    // Drop interior nodes that carry neither a jump nor a kink.
    std::vector<Node> out;
    out.reserve(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const Node& cur = merged[i];
        if (!out.empty() && i + 1 < merged.size() && cur.left == cur.right) {
            const Node& prev = out.back();
            const Node& next = merged[i + 1];
            const double s = (cur.x - prev.x) / (next.x - prev.x);
            const double predicted = lerp(prev.right, next.left, s);
            if (std::abs(predicted - cur.left) <= tol) continue;
        }
        out.push_back(cur);
    }
    // Leading / trailing identically-zero segments.
    while (out.size() >= 2 && out[0].right == 0.0 && out[1].left == 0.0) out.erase(out.begin());
    while (out.size() >= 2 && out[out.size() - 1].left == 0.0 && out[out.size() - 2].right == 0.0)
        out.pop_back();
    if (out.size() == 1 && out[0].left == 0.0 && out[0].right == 0.0) out.clear();
    if (!out.empty()) {
        out.front().left = 0.0;
        out.back().right = 0.0;
    }
    return PLFunction(std::move(out));
}

}  // namespace claw
