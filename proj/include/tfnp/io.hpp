#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tfnp/problems.hpp"

namespace tfnp {

// FNV-1a 64-bit content hash rendered as "fnv1a64:<16 hex digits>". Used to
// tie provenance files to the canonical serialization of the instance they
// were produced from; an integrity check, not a cryptographic one.
std::string digest64(std::string_view text);

// Instance files (text, line oriented):
//   format: tfnp-instance v1
//   problem: <kind>
//   params: n=<int> [m1=<int> m2=<int> k=<int> basic=0|1 injective=0|1]
//   oracle <name>: table in=<w> out=<r>     followed by 2^w 'map <in> -> <out>' lines
//   oracle <name>: circuit                  followed by a circuit block
//   anchors: / removed: / sources: / target: lines of MSB-first bit strings
std::string serialize_instance(const Instance& inst);
Instance parse_instance(std::string_view text);

std::string instance_digest(const Instance& inst);

// Solution files: 'solution: <variant>' plus one bit string per line,
// optionally followed by a metrics block (queries/method/elapsed_ms).
struct SolutionMetrics {
    uint64_t queries = 0;
    std::string method;
    int64_t elapsed_ms = 0;
};

std::string serialize_solution(const Solution& s, const std::optional<SolutionMetrics>& metrics = {});
Solution parse_solution(std::string_view text, std::optional<SolutionMetrics>* metrics = nullptr);

// Inline literal form, e.g. "triangle(00,01,11)" or "preimage(11)".
Solution parse_solution_literal(std::string_view text);

}  // namespace tfnp
