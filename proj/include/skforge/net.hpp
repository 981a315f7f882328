#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "skforge/gateset.hpp"
#include "skforge/quat.hpp"
#include "skforge/word.hpp"

namespace skforge {

struct NetEntry {
    Word word;
    Quatd element;  // canonical sign
};

struct NetParams {
    unsigned max_len = 18;
    double dedupe_radius = 1e-4;
};

/// Base epsilon-net over a gate set: every short freely reduced gate word up
/// to the build length, deduplicated, with a bucket-grid index for exact
/// nearest-entry queries under the projective distance.
class Net {
  public:
    struct Hit {
        std::size_t index = 0;
        double distance = 0;  // projective, radians
    };

    const GateSet& gateset() const { return gs_; }
    const std::vector<NetEntry>& entries() const { return entries_; }
    const NetEntry& entry(std::size_t i) const { return entries_[i]; }
    const NetParams& params() const { return params_; }
    double covering_estimate() const { return covering_; }

    /// Exact nearest stored entry (grid-accelerated ring search).
    Hit nearest(const Quatd& target) const;
    /// Brute-force oracle for the same query.
    Hit nearest_linear(const Quatd& target) const;
    /// Serial reference for the parallel covering estimator.
    double covering_estimate_serial(std::size_t probes) const;
    /// OpenMP-parallel covering estimator (same probes, same result).
    double covering_estimate_parallel(std::size_t probes) const;

    /// Word within eps0 of the target; requires eps0 >= covering_estimate.
    Word base_approx(const Quatd& target, double eps0) const;

    /// All entries with word length <= max_len, in build (length-major) order.
    std::vector<std::size_t> entries_up_to_length(unsigned max_len) const;

    friend Net build_net(const GateSet& gs, const NetParams& params);
    friend Net load_net(const std::string& path, const GateSet& gs);

  private:
    void index_entries();
    double estimate_covering(std::size_t probes, bool parallel) const;

    GateSet gs_;
    NetParams params_;
    std::vector<NetEntry> entries_;
    double covering_ = 0;

    double cell_ = 0.05;
    unsigned cells_per_dim_ = 0;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid_;
};

/// Breadth-first enumeration of reduced gate words up to params.max_len,
/// deduplicated at params.dedupe_radius (shorter word wins).
Net build_net(const GateSet& gs, const NetParams& params);

/// Binary net file, little-endian:
///   magic "SKNET1" | 32-byte gate-set hash | u64 entry count |
///   per entry: u32 letter count, u16 gate indices, 4 x f64 coordinates |
///   32-byte SHA-256 of everything after the magic.
void save_net(const Net& net, const std::string& path);
Net load_net(const std::string& path, const GateSet& gs);

/// Deterministic low-discrepancy probe point on S^3 (Kronecker sequence).
Quatd probe_point(std::size_t i);

}  // namespace skforge
