#pragma once

// Hand-checkable fixtures shared across the test suites. F1 is a symmetric
// 2-coloring of K_4 with anchors (00,01,10); R1/R2/R3 are the values the
// reduction chain must produce from it, and L1 is a 3-node line over a
// 4-node space. All expected numbers here were recomputed by hand from the
// defining case formulas before being frozen.

#include <array>

#include "tfnp/problems.hpp"

namespace fixtures {

using namespace tfnp;

// Symmetric K_4 coloring table from the six edge colors in the order
// (0,1),(0,2),(0,3),(1,2),(1,3),(2,3); diagonal entries are color 0.
inline Oracle k4_coloring(const std::array<uint64_t, 6>& edges) {
    std::vector<uint64_t> rows(16, 0);
    static const int pair_index[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) rows[size_t(u * 4 + v)] = edges[size_t(pair_index[u][v])];
    return Oracle(TruthTable(4, 1, std::move(rows)));
}

// F1: C(00,01)=0 C(00,10)=1 C(00,11)=0 C(01,10)=1 C(01,11)=1 C(10,11)=0,
// anchors a=00 b=01 c=10.
inline WardSzaboInstance f1(bool basic = false) {
    WardSzaboInstance inst;
    inst.n = 1;
    inst.coloring = k4_coloring({0, 1, 0, 1, 1, 0});
    inst.a = BitString(2, 0);
    inst.b = BitString(2, 1);
    inst.c = BitString(2, 2);
    inst.basic_required = basic;
    return inst;
}

// R1 = basic-to-altcat(F1): pi=00, p = (00,01,10,11) -> (0,0,1,0),
// h = (00,01,10,11) -> (1,1,1,0).
inline AltCategorizedPigeonInstance r1() {
    AltCategorizedPigeonInstance inst;
    inst.n = 1;
    inst.p = Oracle(TruthTable(2, 1, {0, 0, 1, 0}));
    inst.h = Oracle(TruthTable(2, 1, {1, 1, 1, 0}));
    inst.pi = BitString(2, 0);
    return inst;
}

// R2 = altcat-to-catone(R1): same p, hole function (1,0,1,1).
inline CategorizedPigeonInstance r2() {
    CategorizedPigeonInstance inst;
    inst.m1 = 1;
    inst.m2 = 1;
    inst.p = Oracle(TruthTable(2, 1, {0, 0, 1, 0}));
    inst.h = Oracle(TruthTable(2, 1, {1, 0, 1, 1}));
    inst.removed = {BitString(2, 0)};
    return inst;
}

// R3 = catone-to-pigeon(R2): v* = 01, f = (00,01,10,11) -> (11,00,11,01).
inline PigeonInstance r3() {
    PigeonInstance inst;
    inst.n = 2;
    inst.f = Oracle(TruthTable(2, 2, {3, 0, 3, 1}));
    inst.v_star = BitString(2, 1);
    return inst;
}

// L1: the line 00 -> 01 -> 10 with source 00; node 11 is an isolated self
// loop. The only sink is 10.
inline LineGraphInstance l1() {
    LineGraphInstance inst;
    inst.n = 2;
    inst.succ = Oracle(TruthTable(2, 2, {1, 2, 2, 3}));
    inst.pred = Oracle(TruthTable(2, 2, {0, 0, 1, 3}));
    inst.sources = {BitString(2, 0)};
    return inst;
}

inline BitString bits(std::string_view s) { return BitString::parse(s); }

}  // namespace fixtures
