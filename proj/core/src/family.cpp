#include "lp/family.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lp {

namespace {

double gauss(double x, double c, double w) {
    const double u = (x - c) / w;
    return std::exp(-u * u);
}

}  // namespace

std::vector<TestFunction> default_family(int dim, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("family: count must be >= 1");
    std::vector<TestFunction> fam;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    if (dim == 1) {
        fam.push_back({"spike_narrow", [](Point p) { return gauss(p[0], 0.52, 0.006); }});
        fam.push_back({"spike_mid", [](Point p) { return gauss(p[0], 0.47, 0.012); }});
        fam.push_back({"spike_wide", [](Point p) { return gauss(p[0], 0.55, 0.025); }});
        fam.push_back({"indicator_long",
                       [](Point p) { return (p[0] > 0.35 && p[0] < 0.68) ? 1.0 : 0.0; }});
        fam.push_back({"indicator_short",
                       [](Point p) { return (p[0] > 0.48 && p[0] < 0.55) ? 1.0 : 0.0; }});
        fam.push_back({"indicator_pair", [](Point p) {
                           return ((p[0] > 0.36 && p[0] < 0.44) || (p[0] > 0.6 && p[0] < 0.66))
                                      ? 1.0
                                      : 0.0;
                       }});
        while (static_cast<int>(fam.size()) < count) {
            const int pieces = 2 + static_cast<int>(unit(rng) * 3.0);
            std::vector<std::array<double, 3>> bumps;
            for (int b = 0; b < pieces; ++b) {
                bumps.push_back({0.35 + 0.3 * unit(rng),          // center
                                 0.008 + 0.06 * unit(rng),        // width
                                 0.2 + 0.8 * unit(rng)});         // weight
            }
            fam.push_back({"mix_" + std::to_string(fam.size()), [bumps](Point p) {
                               double s = 0.0;
                               for (const auto& b : bumps) s += b[2] * gauss(p[0], b[0], b[1]);
                               return s;
                           }});
        }
    } else {
        fam.push_back({"spike_2d", [](Point p) {
                           return gauss(p[0], 0.5, 0.02) * gauss(p[1], 0.52, 0.02);
                       }});
        fam.push_back({"rect_2d", [](Point p) {
                           return (p[0] > 0.4 && p[0] < 0.62 && p[1] > 0.42 && p[1] < 0.6)
                                      ? 1.0
                                      : 0.0;
                       }});
        while (static_cast<int>(fam.size()) < count) {
            const int pieces = 2 + static_cast<int>(unit(rng) * 2.0);
            std::vector<std::array<double, 4>> bumps;
            for (int b = 0; b < pieces; ++b) {
                bumps.push_back({0.38 + 0.24 * unit(rng), 0.38 + 0.24 * unit(rng),
                                 0.015 + 0.05 * unit(rng), 0.2 + 0.8 * unit(rng)});
            }
            fam.push_back({"mix2d_" + std::to_string(fam.size()), [bumps](Point p) {
                               double s = 0.0;
                               for (const auto& b : bumps)
                                   s += b[3] * gauss(p[0], b[0], b[2]) * gauss(p[1], b[1], b[2]);
                               return s;
                           }});
        }
    }
    fam.resize(static_cast<std::size_t>(count));
    return fam;
}

std::vector<SampledField> sample_family(const std::vector<TestFunction>& family,
                                        const Grid& grid) {
    std::vector<SampledField> out;
    out.reserve(family.size());
    for (const TestFunction& tf : family) {
        out.push_back(SampledField::sample_unit_mass(grid, tf.fn));
    }
    return out;
}

std::vector<double> geometric_ladder(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw std::invalid_argument("geometric_ladder: need 0 < lo < hi and count >= 2");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[i] = lo * std::exp(step * i);
    return out;
}

Grid default_grid(int dim, int cells_per_axis) {
    return dim == 1 ? Grid(1, point1(-2.0), point1(3.0), cells_per_axis)
                    : Grid(2, point2(-2.0, -2.0), point2(3.0, 3.0), cells_per_axis);
}

}  // namespace lp
