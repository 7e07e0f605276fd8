#include "tfnp/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tfnp/error.hpp"
#include "tfnp/rng.hpp"

namespace tfnp {

int DenseColoring::colors_used() const {
    std::vector<int> seen;
    for (int i = 0; i < nodes; ++i)
        for (int j = i + 1; j < nodes; ++j)
            if (std::find(seen.begin(), seen.end(), color(i, j)) == seen.end())
                seen.push_back(color(i, j));
    return int(seen.size());
}

std::optional<std::array<int, 3>> DenseColoring::find_bichromatic() const {
    for (int i = 0; i < nodes; ++i) {
        for (int j = i + 1; j < nodes; ++j) {
            for (int k = j + 1; k < nodes; ++k) {
                int a = color(i, j), b = color(i, k), c = color(j, k);
                bool two_equal = (a == b && a != c) || (a == c && a != b) || (b == c && b != a);
                if (two_equal) return std::array<int, 3>{i, j, k};
            }
        }
    }
    return std::nullopt;
}

size_t DenseColoring::triangle_count() const {
    size_t n = size_t(nodes);
    return n * (n - 1) * (n - 2) / 6;
}

std::string DenseColoring::serialize() const {
    std::ostringstream out;
    out << "format: tfnp-coloring v1\n";
    out << "nodes: " << nodes << "\n";
    out << "colors: " << colors_used() << "\n";
    for (int i = 0; i < nodes; ++i)
        for (int j = i + 1; j < nodes; ++j) out << "edge " << i << " " << j << " -> " << color(i, j) << "\n";
    return out.str();
}

namespace {

// Field arithmetic for q in {2,3,4,5,7}. GF(4) is a hard-coded table;
// the rest are prime fields.
struct SmallField {
    int q;
    bool gf4;

    explicit SmallField(int order) : q(order), gf4(order == 4) {
        if (order != 2 && order != 3 && order != 4 && order != 5 && order != 7)
            throw UsageError("unsupported field order q=" + std::to_string(order) +
                             " (supported: 2, 3, 4, 5, 7)");
    }

    int sub(int a, int b) const {
        if (gf4) return a ^ b;
        return ((a - b) % q + q) % q;
    }
    int mul(int a, int b) const {
        if (gf4) {
            static const int t[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
            return t[a][b];
        }
        return (a * b) % q;
    }
    int inv(int a) const {
        for (int x = 1; x < q; ++x)
            if (mul(a, x) == 1) return x;
        throw std::logic_error("field inverse of zero");
    }
};

}  // namespace

DenseColoring gen_swell(int q) {
    SmallField field(q);
    DenseColoring out;
    out.nodes = q * q;
    out.color_of.assign(size_t(out.nodes) * size_t(out.nodes), 0);
    for (int i = 0; i < out.nodes; ++i) {
        for (int j = i + 1; j < out.nodes; ++j) {
            int d1 = field.sub(j / q, i / q);
            int d2 = field.sub(j % q, i % q);
            int cls = (d1 == 0) ? q : field.mul(d2, field.inv(d1));
            out.set_color(i, j, cls);
        }
    }
    // The construction is verified rather than trusted.
    if (out.colors_used() != q + 1)
        throw std::logic_error("gen_swell: expected exactly q+1 colors");
    if (out.find_bichromatic())
        throw std::logic_error("gen_swell: produced a bichromatic triangle");
    return out;
}

// ---------------------------------------------------------------------------
// Ward-Szabo sampler

namespace {

int floor_log2(uint64_t v) {
    int r = -1;
    while (v) {
        v >>= 1;
        ++r;
    }
    return r;
}

Oracle ws_table_sample(int n, uint64_t palette_cap, Xorshift64Star& rng, bool& two_colors) {
    const int w = 2 * n;
    const uint64_t nodes = uint64_t{1} << w;
    std::vector<uint64_t> rows(size_t{1} << (2 * w), 0);
    uint64_t first_color = 0;
    bool any = false;
    two_colors = false;
    for (uint64_t u = 0; u < nodes; ++u) {
        for (uint64_t v = u + 1; v < nodes; ++v) {
            uint64_t col = rng.next_below(palette_cap);
            rows[size_t((u << w) | v)] = col;
            rows[size_t((v << w) | u)] = col;
            if (!any) {
                first_color = col;
                any = true;
            } else if (col != first_color) {
                two_colors = true;
            }
        }
    }
    return Oracle(TruthTable(2 * w, n, std::move(rows)));
}

Oracle ws_circuit_sample(int n, uint64_t palette_cap, Xorshift64Star& rng) {
    const int w = 2 * n;
    const int jbits = floor_log2(palette_cap);
    CircuitBuilder b(2 * w, "C");
    auto x = b.input_span(0, w);
    auto y = b.input_span(w, w);
    Ref lt = b.less(x, y);
    auto lo = b.select(lt, y, x);
    auto hi = b.select(lt, x, y);
    std::vector<Ref> wires = lo;
    wires.insert(wires.end(), hi.begin(), hi.end());

    std::vector<Ref> outs;
    for (int bit = 0; bit < n; ++bit) {
        if (bit < n - jbits) {
            outs.push_back(b.constant_bit(false));
            continue;
        }
        // Parity of a random wire subset plus one AND term for nonlinearity.
        Ref acc{};
        bool have = false;
        for (size_t i = 0; i < wires.size(); ++i) {
            if (rng.next() & 1) {
                acc = have ? b.xor_(acc, wires[i]) : wires[i];
                have = true;
            }
        }
        if (!have) acc = wires[size_t(rng.next_below(wires.size()))];
        Ref r1 = wires[size_t(rng.next_below(wires.size()))];
        Ref r2 = wires[size_t(rng.next_below(wires.size()))];
        outs.push_back(b.xor_(acc, b.and_(r1, r2)));
    }
    return Oracle(b.build(outs));
}

// Lexicographically smallest (a,b,c) with C(a,b) != C(a,c); scans at most
// star_budget anchor stars.
bool scan_anchors(const Oracle& coloring, int node_width, uint64_t star_budget, BitString& a,
                  BitString& b, BitString& c) {
    const uint64_t nodes = uint64_t{1} << node_width;
    for (uint64_t av = 0; av < std::min(nodes, star_budget); ++av) {
        uint64_t bv = (av == 0) ? 1 : 0;
        uint64_t col_ab = coloring.eval_value((av << node_width) | bv);
        for (uint64_t cv = 0; cv < nodes; ++cv) {
            if (cv == av || cv == bv) continue;
            if (coloring.eval_value((av << node_width) | cv) != col_ab) {
                a = BitString(node_width, av);
                b = BitString(node_width, bv);
                c = BitString(node_width, cv);
                return true;
            }
        }
    }
    return false;
}

}  // namespace

WardSzaboInstance gen_ws(int n, uint64_t seed, uint64_t palette_cap, OracleBackend backend,
                         const Caps& caps) {
    if (n < 1) throw UsageError("gen_ws: n must be >= 1");
    const uint64_t full_palette = uint64_t{1} << n;
    if (palette_cap == 0) palette_cap = full_palette;
    if (palette_cap > full_palette)
        throw UsageError("gen_ws: palette cap exceeds the 2^n color space");
    bool use_table = backend == OracleBackend::Table ||
                     (backend == OracleBackend::Auto && 4 * n <= caps.pigeon_enum_bits);
    if (use_table && 4 * n > caps.pigeon_enum_bits)
        throw UsageError("gen_ws: table backend needs 4n <= " + std::to_string(caps.pigeon_enum_bits));
    if (2 * n > 32) throw UsageError("gen_ws: n too large");

    Xorshift64Star rng(seed);
    for (int attempt = 0; attempt < caps.generator_resample_limit; ++attempt) {
        WardSzaboInstance inst;
        inst.n = n;
        if (use_table) {
            bool two_colors = false;
            inst.coloring = ws_table_sample(n, palette_cap, rng, two_colors);
            if (!two_colors) continue;
        } else {
            inst.coloring = ws_circuit_sample(n, palette_cap, rng);
        }
        if (scan_anchors(inst.coloring, inst.node_width(), use_table ? (uint64_t{1} << (2 * n)) : 8,
                         inst.a, inst.b, inst.c))
            return inst;
    }
    throw UsageError("gen_ws: degenerate seed (no two-colored star found after " +
                     std::to_string(caps.generator_resample_limit) + " resamples)");
}

PigeonInstance gen_pigeon(int n, uint64_t seed, PigeonMode mode, const Caps& caps) {
    if (n < 1) throw UsageError("gen_pigeon: n must be >= 1");
    if (n > caps.pigeon_enum_bits)
        throw UsageError("gen_pigeon: n exceeds the enumeration cap");
    Xorshift64Star rng(seed);
    const uint64_t domain = uint64_t{1} << n;
    std::vector<uint64_t> rows(size_t(domain), 0);
    if (mode == PigeonMode::Permutation) {
        std::iota(rows.begin(), rows.end(), uint64_t{0});
        for (uint64_t i = domain - 1; i > 0; --i)
            std::swap(rows[size_t(i)], rows[size_t(rng.next_below(i + 1))]);
    } else {
        for (uint64_t i = 0; i < domain; ++i) rows[size_t(i)] = rng.next_below(domain);
    }
    PigeonInstance inst;
    inst.n = n;
    inst.f = Oracle(TruthTable(n, n, std::move(rows)));
    inst.v_star = BitString(n, rng.next_below(domain));
    return inst;
}

LineGraphInstance gen_lines(int n, uint64_t seed, int k, const Caps& caps) {
    if (n < 1) throw UsageError("gen_lines: n must be >= 1");
    if (n > caps.pigeon_enum_bits) throw UsageError("gen_lines: n exceeds the enumeration cap");
    const uint64_t domain = uint64_t{1} << n;
    if (k < 1 || k > caps.max_sources || uint64_t(2 * k) > domain)
        throw UsageError("gen_lines: infeasible k (need 1 <= k and 2k <= 2^n and k <= " +
                         std::to_string(caps.max_sources) + ")");

    Xorshift64Star rng(seed);
    std::vector<uint64_t> order(size_t(domain), 0);
    std::iota(order.begin(), order.end(), uint64_t{0});
    for (uint64_t i = domain - 1; i > 0; --i)
        std::swap(order[size_t(i)], order[size_t(rng.next_below(i + 1))]);

    std::vector<uint64_t> succ(size_t(domain), 0), pred(size_t(domain), 0);
    std::iota(succ.begin(), succ.end(), uint64_t{0});
    std::iota(pred.begin(), pred.end(), uint64_t{0});

    LineGraphInstance inst;
    inst.n = n;
    uint64_t used = 0;
    for (int line = 0; line < k; ++line) {
        uint64_t reserve = uint64_t(2 * (k - 1 - line));
        uint64_t avail = domain - used - reserve;
        uint64_t extra_max = std::min<uint64_t>(6, avail - 2);
        uint64_t len = 2 + rng.next_below(extra_max + 1);
        for (uint64_t i = 0; i + 1 < len; ++i) {
            uint64_t u = order[size_t(used + i)], v = order[size_t(used + i + 1)];
            succ[size_t(u)] = v;
            pred[size_t(v)] = u;
        }
        inst.sources.push_back(BitString(n, order[size_t(used)]));
        used += len;
    }
    inst.succ = Oracle(TruthTable(n, n, std::move(succ)));
    inst.pred = Oracle(TruthTable(n, n, std::move(pred)));
    return inst;
}

}  // namespace tfnp
