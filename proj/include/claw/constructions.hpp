#pragma once

// Closed-form data for Burgers' equation: symmetric triangular blocks and
// their exact solutions, packets of identical non-interacting blocks, the
// single-time datum hat_u(t), the multi-scale datum assembled from rescaled
// copies of hat_u, the sawtooth datum, and random data with prescribed
// multi-scale structure.

#include <cstdint>
#include <span>
#include <vector>

#include "claw/palpha.hpp"
#include "claw/pwl.hpp"

namespace claw {

// Symmetric triangle of height h on [x0, x0 + ell].
struct Block {
    double ell = 1.0;
    double h = 1.0;
    double x0 = 0.0;

    PLFunction materialize() const;
    double shock_time() const { return ell / (2.0 * h); }
};

struct BlockSolution {
    PLFunction profile;  // right triangle on [x0, x0 + L]
    double L = 0.0;
    double tv = 0.0;
};

// Exact solution after the shock has formed. Throws std::domain_error for
// t < shock_time() or invalid blocks.
BlockSolution block_solution(const Block& b, double t);
// TV of the solution at any t >= 0 (2h before the shock forms).
double block_tv(const Block& b, double t);

inline constexpr double kMaxMaterializedBlocks = 1e6;

struct Packet {
    int k = 1;
    double ell = 0.0;
    double h = 0.0;
    double N = 0.0;  // k^k, kept as a real since it overflows integers quickly
    double L = 0.0;  // spacing of consecutive blocks
    double origin = 0.0;
    double t_design = 0.0;

    Block block(double j) const { return {ell, h, origin + j * L}; }
    double extent() const { return N * L; }
};

// Throws std::domain_error if k < 1 or the blocks shock after t_design.
Packet make_packet(int k, double t_design, double origin = 0.0);
// Exact TV of the solution for shock_time <= t <= t_design; domain_error otherwise.
double packet_tv(const Packet& pk, double t);
// Throws ResourceError when N exceeds kMaxMaterializedBlocks.
PLFunction packet_materialize(const Packet& pk);

struct HatU {
    double t = 0.0;
    int k1 = 0, k2 = 0;
    std::vector<Packet> packets;  // levels k1..k2 laid side by side from 0

    double support_length() const;
    double tv_initial() const;
    // Exact TV of the solution at s, for max shock time <= s <= t.
    double tv(double s) const;
    double block_count() const;
    bool materializable() const { return block_count() <= kMaxMaterializedBlocks; }
    PLFunction materialize() const;
    std::vector<BumpClass> bump_classes() const;
};

// Requires 0 < t < 1.
HatU hat_u(double t);

// The Hoelder constant bound exp(2^{1/(1-sigma)} (1-sigma) / e).
double holder_bound(double sigma);
// Largest Hoelder quotient of a single block over the packets of hat_u:
// max_k h_k (2 / ell_k)^sigma, attained between a block's foot and apex.
double hat_u_block_holder(const HatU& hu, double sigma);

struct MultiScaleLevel {
    int j = 0;
    double t = 0.0;      // time at which this level is designed to blow up
    double x = 0.0;      // left end of the level's interval
    double scale = 1.0;  // 2^{-j}
    HatU hat;

    // The interval [x, x + 2 scale] reserved for the level.
    Interval interval() const { return {x, x + 2.0 * scale}; }
    // TV of the level's own solution at its design time.
    double tv_at_design() const { return scale * hat.tv(t); }
    PLFunction materialize() const;
    std::vector<BumpClass> bump_classes() const;
};

struct MultiScaleDatum {
    std::vector<MultiScaleLevel> levels;
    std::size_t materializable_levels = 0;  // length of the materializable prefix
    // The omitted levels j >= J add at most C0 * tail_factor to the P_alpha
    // bound, with C0 the per-level constant.
    double tail_factor = 0.0;

    // t_j^beta * TV at t_j on the level's interval.
    std::vector<double> blowup_series(double beta) const;
    PLFunction materialize_prefix() const;
    std::vector<BumpClass> bump_classes() const;
};

// t_j = exp(-2^j).
std::vector<double> default_multiscale_schedule(int J);
// Throws std::domain_error unless t_j < 2^{-j} for every level.
MultiScaleDatum multiscale_datum(int J, std::span<const double> schedule);

// Tooth n rises from 0 to 1 on (x_{n+1}, x_n), x_n = n^{-beta}, and drops
// back to 0 at x_n. Requires beta > 0 and n_max >= 2.
PLFunction sawtooth(double beta, int n_max);

// Levels k = 0..K, level k made of n_k in {1,2,3} triangles of total width
// 2^{-alpha k} and total variation 2^{(1-alpha)k}, random signs, shuffled
// and laid out with positive gaps. Rising slopes at level k equal 2^k.
PLFunction random_palpha_datum(double alpha, int K, std::uint64_t seed);

}  // namespace claw
