#pragma once

#include "tfnp/reductions.hpp"
#include "tfnp/solvers.hpp"

namespace tfnp {

// reduce -> solve -> pull back -> verify, in memory. ok is true iff the
// final certificate passes the original instance's verifier.
struct RoundtripReport {
    bool ok = false;
    Solution final_solution;
    Verdict final_verdict;
    bool short_circuited = false;
    SolveReport solve_report;  // meaningful when !short_circuited
    std::vector<StageTrace> trace;
};

RoundtripReport roundtrip(const Instance& original, const Chain& chain,
                          const std::string& method = "brute", const Caps& caps = default_caps());

}  // namespace tfnp
