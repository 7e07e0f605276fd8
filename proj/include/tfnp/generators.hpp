#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tfnp/config.hpp"
#include "tfnp/problems.hpp"

namespace tfnp {

// Dense symmetric edge coloring of a small complete graph, colors as plain
// integers. This is the combinatorial side of the repo: the swell witness
// and the small-palette lower-bound sweeps live here, independent of the
// bit-string oracle machinery.
struct DenseColoring {
    int nodes = 0;
    std::vector<int> color_of;  // nodes*nodes entries, symmetric, diagonal 0

    int color(int i, int j) const { return color_of[size_t(i) * size_t(nodes) + size_t(j)]; }
    void set_color(int i, int j, int c) {
        color_of[size_t(i) * size_t(nodes) + size_t(j)] = c;
        color_of[size_t(j) * size_t(nodes) + size_t(i)] = c;
    }

    int colors_used() const;
    // Smallest bichromatic triangle in lexicographic (i,j,k) order.
    std::optional<std::array<int, 3>> find_bichromatic() const;
    size_t triangle_count() const;

    std::string serialize() const;
};

// Slope coloring of K_{q^2} over F_q x F_q: edge {u,v} takes the direction
// class of v - u (class q when the first coordinate of the difference is 0,
// otherwise the slope). Uses exactly q+1 colors and admits no bichromatic
// triangle; generation re-verifies both exhaustively. q must be a prime in
// {2,3,5,7} or 4 (built-in GF(4) tables).
DenseColoring gen_swell(int q);

enum class OracleBackend { Auto, Table, Circuit };

// Seeded symmetric coloring instance with at least 2 and at most
// palette_cap colors; anchors are the lexicographically smallest (a,b,c)
// with C(a,b) != C(a,c). Auto backend picks a table while 4n fits the
// enumeration cap and a mixing circuit beyond that.
WardSzaboInstance gen_ws(int n, uint64_t seed, uint64_t palette_cap = 0,
                         OracleBackend backend = OracleBackend::Auto,
                         const Caps& caps = default_caps());

enum class PigeonMode { Permutation, Random };

PigeonInstance gen_pigeon(int n, uint64_t seed, PigeonMode mode = PigeonMode::Random,
                          const Caps& caps = default_caps());

// k vertex-disjoint simple paths; off-path nodes are self loops (valid
// non-sinks), sources are the path heads.
LineGraphInstance gen_lines(int n, uint64_t seed, int k, const Caps& caps = default_caps());

}  // namespace tfnp
