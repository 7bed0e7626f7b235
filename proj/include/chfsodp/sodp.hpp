#ifndef CHFSODP_SODP_HPP
#define CHFSODP_SODP_HPP

#include <span>
#include <vector>

#include "chfsodp/types.hpp"

namespace chfsodp {

// One second-order difference point: consecutive first differences of the
// signal, (X(k+1)-X(k), X(k+2)-X(k+1)).
struct SodpPoint {
    double d1;
    double d2;
};

using SodpPointSet = std::vector<SodpPoint>;

// Three strictly increasing circle radii; the fourth band is unbounded.
struct RegionPartition {
    double r1;
    double r2;
    double r3;
};

enum class PartitionMode { Adaptive, Fixed };

struct PartitionSpec {
    PartitionMode mode = PartitionMode::Adaptive;
    RegionPartition fixed{1.0, 2.0, 3.0};  // used only in Fixed mode

    static PartitionSpec adaptive() { return PartitionSpec{}; }
    static PartitionSpec fixed_radii(double r1, double r2, double r3) {
        return PartitionSpec{PartitionMode::Fixed, {r1, r2, r3}};
    }
};

// n-2 points in temporal order; throws TooShort for n < 3.
SodpPointSet compute_sodp(std::span<const double> samples);

// Sign-based quadrant, closed-positive: a zero coordinate counts as
// positive. I(+,+)=1, II(-,+)=2, III(-,-)=3, IV(+,-)=4.
int quadrant_of(const SodpPoint& p);

// Band by radial distance; a point exactly on a circle belongs to the
// inner band. Band 4 is everything beyond r3.
int band_of(const SodpPoint& p, const RegionPartition& partition);

// Radii at (d, 2d, 3d) where d is the RMS radial distance of the points.
// All points at the origin degenerate to an epsilon partition so the whole
// mass lands in band 1. Throws EmptyPointSet.
RegionPartition adaptive_radii(const SodpPointSet& points);

RegionPartition resolve_partition(const SodpPointSet& points,
                                  const PartitionSpec& spec);

// The 16 region counts of a window, quadrant-major then band.
FeatureVector extract_features(std::span<const double> samples,
                               const PartitionSpec& spec);

inline FeatureVector extract_features(const Window& window,
                                      const PartitionSpec& spec) {
    return extract_features(std::span<const double>(window.samples), spec);
}

}  // namespace chfsodp

#endif
