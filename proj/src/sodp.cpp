#include "chfsodp/sodp.hpp"

#include <cmath>

#include "chfsodp/errors.hpp"

namespace chfsodp {

SodpPointSet compute_sodp(std::span<const double> samples) {
    if (samples.size() < 3) throw TooShort(samples.size());
    SodpPointSet points;
    points.reserve(samples.size() - 2);
    for (std::size_t k = 0; k + 2 < samples.size(); ++k) {
        points.push_back({samples[k + 1] - samples[k],
                          samples[k + 2] - samples[k + 1]});
    }
    return points;
}

int quadrant_of(const SodpPoint& p) {
    const bool d1_pos = p.d1 >= 0.0;
    const bool d2_pos = p.d2 >= 0.0;
    if (d1_pos && d2_pos) return 1;
    if (!d1_pos && d2_pos) return 2;
    if (!d1_pos && !d2_pos) return 3;
    return 4;
}

int band_of(const SodpPoint& p, const RegionPartition& partition) {
    const double r = std::hypot(p.d1, p.d2);
    if (r <= partition.r1) return 1;
    if (r <= partition.r2) return 2;
    if (r <= partition.r3) return 3;
    return 4;
}

RegionPartition adaptive_radii(const SodpPointSet& points) {
    if (points.empty()) throw EmptyPointSet();
    double sum_sq = 0.0;
    for (const auto& p : points) {
        sum_sq += p.d1 * p.d1 + p.d2 * p.d2;
    }
    double d = std::sqrt(sum_sq / static_cast<double>(points.size()));
    if (d == 0.0) d = 1e-12;
    return RegionPartition{d, 2.0 * d, 3.0 * d};
}

RegionPartition resolve_partition(const SodpPointSet& points,
                                  const PartitionSpec& spec) {
    if (spec.mode == PartitionMode::Adaptive) return adaptive_radii(points);
    return spec.fixed;
}

FeatureVector extract_features(std::span<const double> samples,
                               const PartitionSpec& spec) {
    const SodpPointSet points = compute_sodp(samples);
    const RegionPartition partition = resolve_partition(points, spec);
    FeatureVector counts{};
    for (const auto& p : points) {
        const int index = (quadrant_of(p) - 1) * 4 + (band_of(p, partition) - 1);
        ++counts[static_cast<std::size_t>(index)];
    }
    return counts;
}

}  // namespace chfsodp
