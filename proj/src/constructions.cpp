#include "claw/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "claw/errors.hpp"

namespace claw {

namespace {

void check_block(const Block& b) {
    if (!(b.ell > 0.0 && b.h > 0.0)) throw std::domain_error("block needs ell > 0 and h > 0");
}

// Appends triangle nodes; a foot that lands on the previous foot is shared.
void push_triangle(std::vector<Node>& nodes, double x0, double ell, double h) {
    if (!nodes.empty() && x0 <= nodes.back().x) {
        if (nodes.back().left != 0.0 || nodes.back().right != 0.0)
            throw std::logic_error("overlapping blocks");
        nodes.pop_back();
    }
    nodes.push_back({x0, 0.0, 0.0});
    nodes.push_back({x0 + 0.5 * ell, h, h});
    nodes.push_back({x0 + ell, 0.0, 0.0});
}

// ceil with a nudge so that exact integers are not bumped up by rounding
int nudged_ceil(double v) { return static_cast<int>(std::ceil(v - 1e-12 * std::max(1.0, v))); }

}  // namespace

PLFunction Block::materialize() const {
    check_block(*this);
    std::vector<Node> nodes;
    push_triangle(nodes, x0, ell, h);
    return PLFunction(std::move(nodes));
}

BlockSolution block_solution(const Block& b, double t) {
    check_block(b);
    if (!(t >= b.shock_time()))
        throw std::domain_error("block_solution: t precedes shock formation; use solve_burgers");
    const double denom = 2.0 * b.h * t + b.ell;
    BlockSolution s;
    s.L = std::sqrt(b.ell * denom / 2.0);
    const double p = b.h * std::sqrt(2.0 * b.ell / denom);
    s.tv = 2.0 * p;
    s.profile = PLFunction({{b.x0, 0.0, 0.0}, {b.x0 + s.L, p, 0.0}});
    return s;
}

double block_tv(const Block& b, double t) {
    check_block(b);
    if (t < 0.0) throw std::domain_error("block_tv: t must be >= 0");
    return t < b.shock_time() ? 2.0 * b.h : block_solution(b, t).tv;
}

Packet make_packet(int k, double t_design, double origin) {
    if (k < 1) throw std::domain_error("make_packet: k must be >= 1");
    Packet pk;
    pk.k = k;
    pk.ell = 0.5 * std::pow(2.0, -0.5 * k) * std::pow(k, -k);
    pk.h = std::ldexp(pk.ell, k);
    pk.N = std::pow(k, k);
    pk.origin = origin;
    pk.t_design = t_design;
    if (!(pk.ell / (2.0 * pk.h) <= t_design))
        throw std::domain_error("make_packet: blocks of level " + std::to_string(k) +
                                " have not shocked by t_design");
    pk.L = std::sqrt(2.0 * pk.h * pk.ell * t_design);
    return pk;
}

double packet_tv(const Packet& pk, double t) {
    const Block b{pk.ell, pk.h, 0.0};
    if (!(t >= b.shock_time() && t <= pk.t_design * (1.0 + 1e-12)))
        throw std::domain_error("packet_tv: t outside [shock time, t_design]");
    return pk.N * block_solution(b, t).tv;
}

PLFunction packet_materialize(const Packet& pk) {
    if (pk.N > kMaxMaterializedBlocks)
        throw ResourceError("packet of level " + std::to_string(pk.k) + " has " +
                            std::to_string(pk.N) + " blocks; use packet_tv for its variation");
    std::vector<Node> nodes;
    const auto n = static_cast<long>(std::llround(pk.N));
    nodes.reserve(3 * n);
    for (long j = 0; j < n; ++j) push_triangle(nodes, pk.origin + j * pk.L, pk.ell, pk.h);
    return PLFunction(std::move(nodes));
}

double HatU::support_length() const {
    double s = 0.0;
    for (const Packet& pk : packets) s += pk.extent();
    return s;
}

double HatU::tv_initial() const {
    double s = 0.0;
    for (const Packet& pk : packets) s += 2.0 * pk.N * pk.h;
    return s;
}

double HatU::tv(double s) const {
    double acc = 0.0;
    for (const Packet& pk : packets) acc += packet_tv(pk, s);
    return acc;
}

double HatU::block_count() const {
    double s = 0.0;
    for (const Packet& pk : packets) s += pk.N;
    return s;
}

PLFunction HatU::materialize() const {
    if (!materializable())
        throw ResourceError("hat_u(" + std::to_string(t) + ") has " +
                            std::to_string(block_count()) +
                            " blocks; use the symbolic packet list");
    std::vector<Node> nodes;
    for (const Packet& pk : packets) {
        const auto n = static_cast<long>(std::llround(pk.N));
        for (long j = 0; j < n; ++j) push_triangle(nodes, pk.origin + j * pk.L, pk.ell, pk.h);
    }
    return PLFunction(std::move(nodes));
}

std::vector<BumpClass> HatU::bump_classes() const {
    std::vector<BumpClass> out;
    for (const Packet& pk : packets) out.push_back({pk.N, pk.ell, 2.0 * pk.h, 2.0 * pk.h});
    return out;
}

HatU hat_u(double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("hat_u: t must lie in (0, 1)");
    HatU hu;
    hu.t = t;
    hu.k1 = nudged_ceil(std::log2(1.0 / t));
    hu.k2 = hu.k1 - 2 + nudged_ceil(std::sqrt(2.0 / t));
    double origin = 0.0;
    for (int k = hu.k1; k <= hu.k2; ++k) {
        hu.packets.push_back(make_packet(k, t, origin));
        origin += hu.packets.back().extent();
    }
    return hu;
}

double holder_bound(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::domain_error("holder_bound: sigma in (0, 1)");
    return std::exp(std::pow(2.0, 1.0 / (1.0 - sigma)) * (1.0 - sigma) / std::numbers::e);
}

double hat_u_block_holder(const HatU& hu, double sigma) {
    double best = 0.0;
    for (const Packet& pk : hu.packets)
        best = std::max(best, pk.h * std::pow(2.0 / pk.ell, sigma));
    return best;
}

PLFunction MultiScaleLevel::materialize() const {
    return translate(affine_rescale(hat.materialize(), scale, 1.0 / scale), x);
}

std::vector<BumpClass> MultiScaleLevel::bump_classes() const {
    std::vector<BumpClass> out = hat.bump_classes();
    for (BumpClass& c : out) c.length *= scale, c.tv *= scale, c.gain *= scale;
    return out;
}

std::vector<double> MultiScaleDatum::blowup_series(double beta) const {
    std::vector<double> out;
    for (const auto& lv : levels) out.push_back(std::pow(lv.t, beta) * lv.tv_at_design());
    return out;
}

PLFunction MultiScaleDatum::materialize_prefix() const {
    std::vector<PLFunction> parts;
    for (std::size_t j = 0; j < materializable_levels; ++j) parts.push_back(levels[j].materialize());
    return sum(parts);
}

std::vector<BumpClass> MultiScaleDatum::bump_classes() const {
    std::vector<BumpClass> out;
    for (const auto& lv : levels) {
        const auto cs = lv.bump_classes();
        out.insert(out.end(), cs.begin(), cs.end());
    }
    return out;
}

std::vector<double> default_multiscale_schedule(int J) {
    std::vector<double> ts;
    for (int j = 0; j < J; ++j) ts.push_back(std::exp(-std::ldexp(1.0, j)));
    return ts;
}

MultiScaleDatum multiscale_datum(int J, std::span<const double> schedule) {
    if (J < 1 || static_cast<int>(schedule.size()) != J)
        throw std::domain_error("multiscale_datum: need J >= 1 times");
    MultiScaleDatum d;
    double x = 0.0;
    bool prefix = true;
    for (int j = 0; j < J; ++j) {
        const double scale = std::ldexp(1.0, -j);
        if (!(schedule[j] > 0.0 && schedule[j] < scale))
            throw std::domain_error("multiscale_datum: t_" + std::to_string(j) +
                                    " must lie in (0, 2^-" + std::to_string(j) + ")");
        MultiScaleLevel lv{j, schedule[j], x, scale, hat_u(schedule[j])};
        prefix = prefix && lv.hat.materializable();
        if (prefix) ++d.materializable_levels;
        d.levels.push_back(std::move(lv));
        x += 2.0 * scale;
    }
    d.tail_factor = std::ldexp(1.0, 1 - J);
    return d;
}

PLFunction sawtooth(double beta, int n_max) {
    if (!(beta > 0.0)) throw std::domain_error("sawtooth: beta must be positive");
    if (n_max < 2) throw std::domain_error("sawtooth: n_max must be >= 2");
    std::vector<Node> nodes;
    nodes.push_back({std::pow(n_max + 1.0, -beta), 0.0, 0.0});
    for (int n = n_max; n >= 1; --n) nodes.push_back({std::pow(double(n), -beta), 1.0, 0.0});
    return PLFunction(std::move(nodes));
}

PLFunction random_palpha_datum(double alpha, int K, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("random datum: alpha in (0, 1)");
    if (K < 0) throw std::domain_error("random datum: K must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    struct Tri {
        double width, height;
    };
    std::vector<Tri> tris;
    for (int k = 0; k <= K; ++k) {
        const int n = count(rng);
        const double width = std::pow(2.0, -alpha * k) / n;
        const double height = std::pow(2.0, (1.0 - alpha) * k) / (2.0 * n);
        for (int i = 0; i < n; ++i) tris.push_back({width, U(rng) < 0.5 ? -height : height});
    }
    std::shuffle(tris.begin(), tris.end(), rng);
    std::vector<Node> nodes;
    double x = 0.0;
    for (const Tri& tr : tris) {
        push_triangle(nodes, x, tr.width, tr.height);
        x += tr.width * (1.2 + 0.8 * U(rng));
    }
    return PLFunction(std::move(nodes));
}

}  // namespace claw
