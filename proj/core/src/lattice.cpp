#include "predprey/lattice.hpp"

#include <string>

#include "predprey/errors.hpp"

namespace predprey {

LatticeState::LatticeState(GridDims dims, std::int64_t nc) : dims_(dims), nc_(nc) {
    if (dims.mcx < 1 || dims.mcy < 1) {
        throw InvalidDimensionError("lattice dimensions must be >= 1");
    }
    if (nc < 1) {
        throw InvalidDimensionError("cell capacity must be >= 1");
    }
    const int n = dims.cells();
    a_.assign(n, 0);
    b_.assign(n, 0);
    e_.assign(n, nc);
}

LatticeState LatticeState::homogeneous(std::int64_t n, std::int64_t a0, std::int64_t b0) {
    LatticeState s(GridDims{1, 1}, n);
    s.set_cell(0, a0, b0, n - a0 - b0);
    return s;
}

LatticeState LatticeState::uniform(GridDims dims, std::int64_t nc, std::int64_t a0,
                                   std::int64_t b0) {
    LatticeState s(dims, nc);
    for (int c = 0; c < dims.cells(); ++c) {
        s.set_cell(c, a0, b0, nc - a0 - b0);
    }
    return s;
}

void LatticeState::set_cell(int cell, std::int64_t a, std::int64_t b, std::int64_t e) {
    if (a < 0 || b < 0 || e < 0) {
        throw InfeasibleEventError("negative count in cell " + std::to_string(cell));
    }
    if (a + b + e != nc_) {
        throw InfeasibleEventError("cell " + std::to_string(cell) +
                                   " does not sum to capacity");
    }
    a_[cell] = a;
    b_[cell] = b;
    e_[cell] = e;
}

void LatticeState::check_invariants() const {
    for (int c = 0; c < cells(); ++c) {
        if (a_[c] < 0 || b_[c] < 0 || e_[c] < 0 || a_[c] + b_[c] + e_[c] != nc_) {
            throw InfeasibleEventError("invariant violation in cell " + std::to_string(c));
        }
    }
}

}  // namespace predprey
