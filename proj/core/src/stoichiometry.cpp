#include "predprey/stoichiometry.hpp"

#include <array>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

// Single-cell event families: birth, predation(+A), predation(-B),
// predator death, prey death. Columns (A, B, E).
constexpr int kLocal[5][3] = {
    {0, 1, -1},
    {1, -1, 0},
    {0, -1, 1},
    {-1, 0, 1},
    {0, -1, 1},
};

// Migration kinds: A out, A in, B out, B in. Combined with a neighbor
// coupling matrix below, "out" moves the component from the row cell to the
// neighbor, "in" the reverse.
constexpr int kMigration[4][3] = {
    {1, 0, -1},
    {-1, 0, 1},
    {0, 1, -1},
    {0, -1, 1},
};

// Neighbor coupling row for cell `c`: +1 at the neighbor, -1 at c, or all
// zero when the neighbor does not exist (no migration through boundaries).
struct CouplingRow {
    int neighbor = -1;  // -1: zero row
    int cell = -1;
};

CouplingRow coupling_minus(int cell, int mc) {
    if (cell == 0) return {};
    return {cell - 1, cell};
}

CouplingRow coupling_plus(int cell, int mc) {
    if (cell == mc - 1) return {};
    return {cell + 1, cell};
}

void fill_migration_block(StoichiometryMatrix& m, int row_base, int cells,
                          CouplingRow (*coupling)(int, int), int coupling_arg) {
    for (int kind = 0; kind < 4; ++kind) {
        for (int cell = 0; cell < cells; ++cell) {
            const int row = row_base + kind * cells + cell;
            const CouplingRow cr = coupling(cell, coupling_arg);
            if (cr.neighbor < 0) continue;
            for (int sp = 0; sp < 3; ++sp) {
                if (kMigration[kind][sp] == 0) continue;
                m.at(row, sp * cells + cr.neighbor) += kMigration[kind][sp];
                m.at(row, sp * cells + cr.cell) -= kMigration[kind][sp];
            }
        }
    }
}

}  // namespace

int StoichiometryMatrix::row_sum(int r) const {
    int s = 0;
    for (int v : row(r)) s += v;
    return s;
}

StoichiometryMatrix build_stoichiometry_homogeneous() {
    StoichiometryMatrix m(5, 3);
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 3; ++c) m.at(r, c) = kLocal[r][c];
    }
    return m;
}

StoichiometryMatrix build_stoichiometry_heterogeneous(int mc) {
    if (mc < 1) throw InvalidDimensionError("Mc must be >= 1");
    StoichiometryMatrix m(13 * mc, 3 * mc);
    // Local families replicated per cell: family j in 0..4, row j*Mc + cell.
    for (int j = 0; j < 5; ++j) {
        for (int cell = 0; cell < mc; ++cell) {
            for (int sp = 0; sp < 3; ++sp) {
                m.at(j * mc + cell, sp * mc + cell) = kLocal[j][sp];
            }
        }
    }
    fill_migration_block(m, 5 * mc, mc, &coupling_minus, mc);
    fill_migration_block(m, 9 * mc, mc, &coupling_plus, mc);
    return m;
}

StoichiometryMatrix build_stoichiometry_heterogeneous_2d(GridDims dims) {
    if (dims.mcx < 1 || dims.mcy < 1) throw InvalidDimensionError("grid must be >= 1x1");
    const int cells = dims.cells();
    StoichiometryMatrix m(21 * cells, 3 * cells);
    for (int j = 0; j < 5; ++j) {
        for (int cell = 0; cell < cells; ++cell) {
            for (int sp = 0; sp < 3; ++sp) {
                m.at(j * cells + cell, sp * cells + cell) = kLocal[j][sp];
            }
        }
    }
    // Directions in row order: -x, +x, -y, +y.
    const auto fill_dir = [&](int row_base, int dx, int dy) {
        for (int kind = 0; kind < 4; ++kind) {
            for (int y = 0; y < dims.mcy; ++y) {
                for (int x = 0; x < dims.mcx; ++x) {
                    const int cell = dims.index(x, y);
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= dims.mcx || ny < 0 || ny >= dims.mcy) continue;
                    const int nb = dims.index(nx, ny);
                    const int row = row_base + kind * cells + cell;
                    for (int sp = 0; sp < 3; ++sp) {
                        if (kMigration[kind][sp] == 0) continue;
                        m.at(row, sp * cells + nb) += kMigration[kind][sp];
                        m.at(row, sp * cells + cell) -= kMigration[kind][sp];
                    }
                }
            }
        }
    };
    fill_dir(5 * cells, -1, 0);
    fill_dir(9 * cells, +1, 0);
    fill_dir(13 * cells, 0, -1);
    fill_dir(17 * cells, 0, +1);
    return m;
}

LatticeState apply_event(const LatticeState& state, const StoichiometryMatrix& v, int row) {
    const int cells = state.cells();
    if (v.cols() != 3 * cells) {
        throw InvalidDimensionError("stoichiometry columns do not match state size");
    }
    if (row < 0 || row >= v.rows()) {
        throw InvalidDimensionError("row index out of range");
    }
    LatticeState out = state;
    for (int c = 0; c < cells; ++c) {
        const int da = v.at(row, c);
        const int db = v.at(row, cells + c);
        const int de = v.at(row, 2 * cells + c);
        if (da == 0 && db == 0 && de == 0) continue;
        const std::int64_t a = state.a(c) + da;
        const std::int64_t b = state.b(c) + db;
        const std::int64_t e = state.e(c) + de;
        if (a < 0 || b < 0 || e < 0) {
            throw InfeasibleEventError("event row " + std::to_string(row) +
                                       " drives a count negative in cell " +
                                       std::to_string(c));
        }
        out.set_cell(c, a, b, e);
    }
    return out;
}

}  // namespace predprey
