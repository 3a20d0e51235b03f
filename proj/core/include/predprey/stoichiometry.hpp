#pragma once

#include <span>
#include <vector>

#include "predprey/lattice.hpp"

namespace predprey {

/// Dense event-change table: one row per event, one column per
/// species-per-cell slot. Column layout is species-major: columns
/// [0, Mc) are predator counts per cell, [Mc, 2Mc) prey, [2Mc, 3Mc) empty.
class StoichiometryMatrix {
public:
    StoichiometryMatrix() = default;
    StoichiometryMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    int& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<const int> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    int row_sum(int r) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

/// Fixed 5x3 single-cell matrix: birth, predation(+A), predation(-B),
/// predator death, prey death. Columns (A, B, E).
StoichiometryMatrix build_stoichiometry_homogeneous();

/// 1-D lattice matrix (13*Mc x 3*Mc): the 5 local families replicated per
/// cell, then 4 migration kinds coupled to the left neighbor, then the same
/// 4 coupled to the right neighbor (Kronecker block structure). The event row
/// for cell l (1-based) and family j sits at index l + j*Mc. The neighbor
/// couplings have zero rows at the matching boundary, so migration through
/// the lattice edges never occurs.
StoichiometryMatrix build_stoichiometry_heterogeneous(int mc);

/// 2-D tensor extension: 21 event families per cell (5 local + 4 migration
/// kinds x 4 directions, ordered -x, +x, -y, +y), rows at l + j*Mc.
StoichiometryMatrix build_stoichiometry_heterogeneous_2d(GridDims dims);

/// Returns state + row; throws InfeasibleEventError if a count would go negative.
LatticeState apply_event(const LatticeState& state, const StoichiometryMatrix& v, int row);

}  // namespace predprey
