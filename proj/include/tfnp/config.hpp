#pragma once

namespace tfnp {

// Enumeration caps are configuration, not constants. Exceeding a cap is a
// clean usage error, never silent truncation.
struct Caps {
    int pigeon_enum_bits = 20;       // brute_pigeon / brute_categorized / brute_sink domain
    int triangle_node_bits = 16;     // brute_triangle: node width 2n, full triple scan
    int max_sources = 64;            // sink-of-line known-source list
    int max_removed = 64;            // categorized-pigeon removed list (also the k cap)
    int generator_resample_limit = 64;
};

inline const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

}  // namespace tfnp
