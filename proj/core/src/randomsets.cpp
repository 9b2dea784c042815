#include "lp/randomsets.hpp"

#include <algorithm>
#include <cmath>

namespace lp {

RegionMask random_interval_union(const Grid& grid, int max_pieces, std::mt19937_64& rng,
                                 const RandomSetOptions& options) {
    const int N = grid.cells_per_axis();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::uint8_t> m(grid.cell_count(), 0);
    const int pieces = 1 + static_cast<int>(unit(rng) * max_pieces);
    for (int p = 0; p < pieces; ++p) {
        const int width =
            std::max(options.min_cells,
                     static_cast<int>(unit(rng) * options.max_piece_frac * N));
        const int span = N - 2 * static_cast<int>(options.edge_margin * N) - width;
        const int start = static_cast<int>(options.edge_margin * N) +
                          static_cast<int>(unit(rng) * std::max(1, span));
        for (int i = start; i < std::min(N, start + width); ++i) m[i] = 1;
    }
    // never empty, never full: the margins guarantee a complement
    if (std::count(m.begin(), m.end(), 1) == 0) m[N / 2] = 1;
    return RegionMask(grid, std::move(m));
}

RegionMask random_rect_union(const Grid& grid, int max_pieces, std::mt19937_64& rng,
                             const RandomSetOptions& options) {
    const int N = grid.cells_per_axis();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::uint8_t> m(grid.cell_count(), 0);
    const int pieces = 1 + static_cast<int>(unit(rng) * max_pieces);
    const int margin = static_cast<int>(options.edge_margin * N);
    for (int p = 0; p < pieces; ++p) {
        const int wx = std::max(options.min_cells,
                                static_cast<int>(unit(rng) * options.max_piece_frac * N));
        const int wy = std::max(options.min_cells,
                                static_cast<int>(unit(rng) * options.max_piece_frac * N));
        const int sx = margin + static_cast<int>(unit(rng) * std::max(1, N - 2 * margin - wx));
        const int sy = margin + static_cast<int>(unit(rng) * std::max(1, N - 2 * margin - wy));
        for (int iy = sy; iy < std::min(N, sy + wy); ++iy) {
            for (int ix = sx; ix < std::min(N, sx + wx); ++ix) {
                m[grid.index(ix, iy)] = 1;
            }
        }
    }
    if (std::count(m.begin(), m.end(), 1) == 0) m[grid.index(N / 2, N / 2)] = 1;
    return RegionMask(grid, std::move(m));
}

std::vector<Cube> random_cube_family(const Grid& grid, int count, double max_dilation,
                                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double L = grid.hi()[0] - grid.lo()[0];
    std::vector<Cube> cubes;
    cubes.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        // side small enough that the dilated cube fits anywhere central
        const double side = (0.01 + 0.09 * unit(rng)) * L;
        const double margin = max_dilation * side / 2.0;
        Cube q;
        q.side = side;
        for (int a = 0; a < grid.dim(); ++a) {
            const double lo = grid.lo()[a] + margin;
            const double hi = grid.hi()[a] - margin;
            q.center[a] = lo + unit(rng) * (hi - lo);
        }
        cubes.push_back(q);
    }
    return cubes;
}

}  // namespace lp
