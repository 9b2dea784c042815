#pragma once

#include <random>
#include <vector>

#include "lp/grid.hpp"
#include "lp/whitney.hpp"

namespace lp {

struct RandomSetOptions {
    /// Fraction of the box edge each piece may span.
    double max_piece_frac = 0.12;
    /// Keep pieces inside [margin, 1-margin] of the box.
    double edge_margin = 0.08;
    int min_cells = 3;
};

/// Open set as a union of up to max_pieces random intervals (n = 1).
/// Nonempty with nonempty complement by construction.
RegionMask random_interval_union(const Grid& grid, int max_pieces, std::mt19937_64& rng,
                                 const RandomSetOptions& options = {});

/// Union of up to max_pieces random axis-aligned rectangles (n = 2).
RegionMask random_rect_union(const Grid& grid, int max_pieces, std::mt19937_64& rng,
                             const RandomSetOptions& options = {});

/// Random possibly-overlapping cubes whose max_dilation-fold enlargements
/// still fit in the grid.
std::vector<Cube> random_cube_family(const Grid& grid, int count, double max_dilation,
                                     std::mt19937_64& rng);

}  // namespace lp
