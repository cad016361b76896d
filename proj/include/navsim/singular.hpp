#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "navsim/obstacle.hpp"
#include "navsim/target_frame.hpp"
#include "navsim/vec2.hpp"

namespace navsim {

inline constexpr double kZetaPlateauTol = 1e-9;

// A boundary locus where zeta changes sign: either an isolated strict
// zero crossing (s_begin == s_end) or a straight plateau on which
// zeta vanishes identically. `sign_change` is the sign of zeta just
// after the part minus-side convention: +1 for a -..+ crossing.
struct SingularPart {
    double s_begin = 0.0;
    double s_end = 0.0;
    int sign_change = 0;  // 0 for a tangential (non-crossing) zero
    bool plateau = false;

    double mid() const { return 0.5 * (s_begin + s_end); }
};

namespace detail {

inline double zeta_at(const Obstacle& ob, double s, const Vec2& target,
                      double d = 0.0) {
    return target_frame(ob, s, target).zeta + d;
}

// Bisection refinement of a sign change of zeta - level.
inline double refine_zero(const Obstacle& ob, const Vec2& target, double a,
                          double b, double level) {
    double fa = zeta_at(ob, a, target) - level;
    for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = zeta_at(ob, m, target) - level;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Zero set structure of zeta(s) + d along the boundary: crossings,
// plateaus, and tangential touches. Level-set components are counted
// on a dense cyclic sample.
struct ZeroScan {
    std::vector<SingularPart> crossings;  // strict sign changes
    int tangential = 0;                   // zeros without sign change
};

inline ZeroScan scan_zeros(const Obstacle& ob, const Vec2& target,
                           double level = 0.0, int samples = 20000) {
    const double L = ob.perimeter();
    std::vector<double> sv(samples), zv(samples);
    for (int i = 0; i < samples; ++i) {
        sv[i] = L * i / samples;
        zv[i] = detail::zeta_at(ob, sv[i], target) - level;
    }

    // Classify each sample: -1, 0 (within plateau tolerance), +1.
    std::vector<int> cls(samples);
    for (int i = 0; i < samples; ++i)
        cls[i] = std::abs(zv[i]) < kZetaPlateauTol ? 0 : sgn(zv[i]);

    ZeroScan out;
    const double min_plateau = 1e-6 * L;
    // Start from a nonzero sample so runs do not straddle the seam.
    int start = -1;
    for (int k = 0; k < samples; ++k)
        if (cls[k] != 0) {
            start = k;
            break;
        }
    if (start < 0) return out;  // zeta == 0 everywhere; degenerate

    int prev_sign = cls[start];
    double prev_s = sv[start];
    for (int step = 1; step <= samples; ++step) {
        const int k = (start + step) % samples;
        if (cls[k] == 0) continue;
        const int k_prev = (start + step - 1 + samples) % samples;
        if (cls[k] == prev_sign) {
            // Possible tangential touch inside the run.
            if (cls[k_prev] == 0) out.tangential += 1;
            prev_s = sv[k];
            continue;
        }
        // Sign change since prev_s; plateau if the gap is long.
        double s_a = prev_s;
        double s_b = sv[k] >= prev_s ? sv[k] : sv[k] + L;
        SingularPart part;
        part.sign_change = cls[k];
        if (s_b - s_a > min_plateau + 2.0 * L / samples) {
            part.plateau = true;
            part.s_begin = ob.reduce(s_a);
            part.s_end = ob.reduce(s_b);
        } else {
            const double z =
                detail::refine_zero(ob, target, s_a, s_b, level);
            part.s_begin = part.s_end = ob.reduce(z);
        }
        out.crossings.push_back(part);
        prev_sign = cls[k];
        prev_s = sv[k];
    }
    return out;
}

// Singular parts of the boundary relative to the target: maximal
// loci bounding a strict sign change of zeta.
inline std::vector<SingularPart> singular_parts(const Obstacle& ob,
                                                const Vec2& target,
                                                int samples = 20000) {
    return scan_zeros(ob, target, 0.0, samples).crossings;
}

// Counts used by the switch bounds: P concave components, Q components
// of {zeta = 0}, F the max component count of {zeta = d} over
// |d| <= d_sharp, K the number of singular parts.
struct DomainStats {
    int P = 0;
    int Q = 0;
    int F = 0;
    int K = 0;
};

inline DomainStats domain_stats(const Obstacle& ob, const Vec2& target,
                                double d_sharp, int samples = 20000) {
    const auto [target_dist, target_s] = ob.distance(target);
    if (!(d_sharp < target_dist))
        throw GeometryError("d_sharp must stay below dist(target)");

    DomainStats st;
    // P: connected components of {kappa < 0}; concave arcs are cw
    // arcs, merged when consecutive in the cyclic chain.
    const auto& segs = ob.segments();
    const std::size_t n = segs.size();
    std::vector<bool> concave(n);
    for (std::size_t i = 0; i < n; ++i)
        concave[i] = segs[i].is_arc() && !segs[i].ccw();
    for (std::size_t i = 0; i < n; ++i)
        if (concave[i] && !concave[(i + n - 1) % n]) st.P += 1;
    if (st.P == 0 && n > 0 && concave[0]) st.P = 1;  // all concave

    const ZeroScan zero = scan_zeros(ob, target, 0.0, samples);
    st.K = static_cast<int>(zero.crossings.size());
    st.Q = st.K + zero.tangential;

    for (int j = -20; j <= 20; ++j) {
        const double level = d_sharp * j / 20.0;
        const ZeroScan zs = scan_zeros(ob, target, level, samples);
        const int comps =
            static_cast<int>(zs.crossings.size()) + zs.tangential;
        st.F = std::max(st.F, comps);
    }
    return st;
}

}  // namespace navsim
