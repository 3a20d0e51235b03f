#pragma once

#include <array>
#include <span>
#include <vector>

#include "predprey/lattice.hpp"
#include "predprey/params.hpp"

namespace predprey {

/// Single-cell transition rates (length 5): birth, predation(+A),
/// predation(-B), predator death, prey death. Requires N >= 2.
std::vector<double> transition_rates_homogeneous(const LatticeState& state,
                                                 const ModelParams& p);

/// 1-D lattice rates (length 13*Mc), indexed l + j*Mc to match
/// build_stoichiometry_heterogeneous. Ghost cells beyond both boundaries
/// count as zero, so boundary migration rates vanish. Requires Nc >= 2.
std::vector<double> transition_rates_heterogeneous(const LatticeState& state,
                                                   const ModelParams& p);

/// 2-D extension (length 21*Mc), directions ordered -x, +x, -y, +y, matching
/// build_stoichiometry_heterogeneous_2d. Each migration channel carries the
/// per-direction share q2/2 (two axes split the migration budget).
std::vector<double> transition_rates_heterogeneous_2d(const LatticeState& state,
                                                      const ModelParams& p);

/// One sparse count change of an event.
struct EventDelta {
    int cell;
    int species;  // 0 = A, 1 = B, 2 = E
    int dv;
};

/// Physical event channels driving the exact samplers and the master-equation
/// generator.
///
/// The single-cell system has the 5 channels above. On a lattice, each
/// unordered cell pair exchange appears in the 13-family table twice (once
/// from each cell); here each physical migration channel is kept once, as an
/// out-migration at the full tabulated rate, which is what the mean-field
/// diffusion coefficient corresponds to. Channel order: 5 local families for
/// all cells, then per direction (-x, +x, -y, +y) predator-out and prey-out
/// for all cells.
class EventSystem {
public:
    EventSystem(GridDims dims, const ModelParams& p);

    int n_events() const { return static_cast<int>(deltas_.size()); }
    GridDims dims() const { return dims_; }

    /// Process-time rates pi(x + v_j | x).
    void rates(const LatticeState& state, std::vector<double>& out) const;

    /// Propensities a_j = capacity * pi_j; the exact samplers run on the
    /// mean-field time scale.
    void propensities(const LatticeState& state, std::vector<double>& out) const;

    /// Same evaluation on real-valued counts laid out species-major
    /// (counts[species * cells + cell], cell sums defining the capacity);
    /// used by the leap-size projection.
    void propensities_from_counts(std::span<const double> counts,
                                  std::vector<double>& out) const;

    std::span<const EventDelta> deltas(int event) const {
        return {deltas_[event].data(), sizes_[event]};
    }

    /// Applies the event in place; returns false (state untouched) if any
    /// count would go negative.
    bool try_apply(LatticeState& state, int event) const;

private:
    void eval_rates(std::span<const double> counts, double nc,
                    std::vector<double>& out) const;

    GridDims dims_;
    ModelParams params_;
    bool homogeneous_ = true;
    double share_ = 1.0;  // per-direction migration share, 2 / n_directions
    // Channel metadata; every event touches at most 4 (cell, species) slots.
    std::vector<std::array<EventDelta, 4>> deltas_;
    std::vector<std::size_t> sizes_;
    struct Channel {
        int kind;  // 0..4 local families, 5 = A-out, 6 = B-out
        int cell;
        int neighbor;  // migration only
    };
    std::vector<Channel> channels_;
};

}  // namespace predprey
