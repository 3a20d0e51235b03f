#pragma once

#include <cstdint>
#include <vector>

namespace predprey {

/// Lattice extent; 1x1 is the spatially homogeneous (single-cell) model.
struct GridDims {
    int mcx = 1;
    int mcy = 1;

    int cells() const { return mcx * mcy; }
    bool is_homogeneous() const { return mcx == 1 && mcy == 1; }
    bool is_2d() const { return mcy > 1; }
    int index(int x, int y) const { return x + mcx * y; }

    bool operator==(const GridDims&) const = default;
};

/// Integer occupancy (predators A, prey B, empty E) per cell; A+B+E == Nc.
class LatticeState {
public:
    LatticeState() = default;

    /// All cells empty (E = Nc).
    LatticeState(GridDims dims, std::int64_t nc);

    /// Single cell with N slots, a0 predators and b0 prey.
    static LatticeState homogeneous(std::int64_t n, std::int64_t a0, std::int64_t b0);

    /// Every cell initialized to (a0, b0, Nc-a0-b0).
    static LatticeState uniform(GridDims dims, std::int64_t nc, std::int64_t a0,
                                std::int64_t b0);

    GridDims dims() const { return dims_; }
    std::int64_t capacity() const { return nc_; }
    int cells() const { return dims_.cells(); }

    std::int64_t a(int cell) const { return a_[cell]; }
    std::int64_t b(int cell) const { return b_[cell]; }
    std::int64_t e(int cell) const { return e_[cell]; }

    double f(int cell) const { return static_cast<double>(a_[cell]) / static_cast<double>(nc_); }
    double g(int cell) const { return static_cast<double>(b_[cell]) / static_cast<double>(nc_); }

    /// Validates counts >= 0 and a+b+e == Nc.
    void set_cell(int cell, std::int64_t a, std::int64_t b, std::int64_t e);

    /// Unchecked in-place increments; callers must preserve the cell sum.
    void shift_cell(int cell, std::int64_t da, std::int64_t db, std::int64_t de) {
        a_[cell] += da;
        b_[cell] += db;
        e_[cell] += de;
    }

    /// Throws InfeasibleEventError if any invariant is broken.
    void check_invariants() const;

    bool operator==(const LatticeState&) const = default;

private:
    GridDims dims_;
    std::int64_t nc_ = 0;
    std::vector<std::int64_t> a_, b_, e_;
};

}  // namespace predprey
