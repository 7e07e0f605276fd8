#include "tfnp/solvers.hpp"

#include <chrono>
#include <set>
#include <unordered_map>

#include "tfnp/error.hpp"
#include "tfnp/reductions.hpp"

namespace tfnp {

namespace {

using Clock = std::chrono::steady_clock;

int64_t ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void check_cap(int bits, int cap, const char* what) {
    if (bits > cap)
        throw UsageError(std::string(what) + ": domain of " + std::to_string(bits) +
                         " bits exceeds the enumeration cap of " + std::to_string(cap));
}

// Smallest-first collision bookkeeping: per class key, the two smallest
// elements seen.
struct PairTracker {
    std::unordered_map<uint64_t, std::pair<uint64_t, uint64_t>> classes;
    static constexpr uint64_t none = ~uint64_t{0};

    void add(uint64_t key, uint64_t x) {
        auto it = classes.find(key);
        if (it == classes.end()) {
            classes.emplace(key, std::make_pair(x, none));
        } else if (it->second.second == none) {
            it->second.second = x;
        }
    }

    // Lexicographically smallest pair across all classes with two members.
    std::optional<std::pair<uint64_t, uint64_t>> smallest() const {
        std::optional<std::pair<uint64_t, uint64_t>> best;
        for (const auto& [key, pr] : classes) {
            if (pr.second == none) continue;
            if (!best || pr < *best) best = pr;
        }
        return best;
    }
};

}  // namespace

PartitionBuckets PartitionBuckets::build(const Oracle& p, const std::vector<BitString>& removed) {
    PartitionBuckets out;
    out.key_width = p.output_width();
    std::set<uint64_t> skip;
    for (const BitString& pi : removed) skip.insert(pi.value());
    uint64_t domain = uint64_t{1} << p.input_width();
    for (uint64_t x = 0; x < domain; ++x) {
        if (skip.count(x)) continue;
        out.buckets[p.eval_value(x)].push_back(x);
    }
    return out;
}

SolveReport brute_pigeon(const PigeonInstance& inst, const Caps& caps) {
    check_cap(inst.n, caps.pigeon_enum_bits, "brute_pigeon");
    auto start = Clock::now();
    CountingOracle f(inst.f);
    const uint64_t domain = uint64_t{1} << inst.n;
    const uint64_t target = inst.v_star.value();

    std::vector<uint64_t> values(size_t(domain), 0);
    for (uint64_t x = 0; x < domain; ++x) {
        values[size_t(x)] = f.eval_value(x);
        if (values[size_t(x)] == target)
            return {Preimage{BitString(inst.n, x)}, f.count(), "brute", ms_since(start)};
    }
    PairTracker pairs;
    for (uint64_t x = 0; x < domain; ++x) pairs.add(values[size_t(x)], x);
    auto best = pairs.smallest();
    if (!best)
        throw RejectionError("brute_pigeon: no preimage and no collision; f cannot be total");
    return {Collision(BitString(inst.n, best->first), BitString(inst.n, best->second)), f.count(), "brute",
            ms_since(start)};
}

namespace {

// Shared hole-then-collide scan. hole_pred decides the first solution type
// for a non-removed element from its (p,h) values.
template <class HolePred>
SolveReport categorized_scan(const Oracle& p_oracle, const Oracle& h_oracle,
                             const std::vector<BitString>& removed, int width, HolePred hole_pred,
                             const Caps& caps, const char* who) {
    check_cap(width, caps.pigeon_enum_bits, who);
    auto start = Clock::now();
    CountingOracle p(p_oracle), h(h_oracle);
    const uint64_t domain = uint64_t{1} << width;
    std::set<uint64_t> skip;
    for (const BitString& pi : removed) skip.insert(pi.value());

    std::vector<uint64_t> hv(size_t(domain), 0), pv(size_t(domain), 0);
    std::optional<uint64_t> hole;
    for (uint64_t x = 0; x < domain; ++x) {
        if (skip.count(x)) continue;
        hv[size_t(x)] = h.eval_value(x);
        pv[size_t(x)] = p.eval_value(x);
        if (!hole && hole_pred(pv[size_t(x)], hv[size_t(x)])) {
            hole = x;
            break;
        }
    }
    uint64_t queries = p.count() + h.count();
    if (hole)
        return {HoleHit{BitString(width, *hole)}, queries, "brute", ms_since(start)};

    PairTracker pairs;
    for (uint64_t x = 0; x < domain; ++x) {
        if (skip.count(x)) continue;
        pairs.add((pv[size_t(x)] << h_oracle.output_width()) | hv[size_t(x)], x);
    }
    auto best = pairs.smallest();
    if (!best)
        throw RejectionError(std::string(who) + ": no hole hit and no in-bucket collision; totality violated");
    return {Collision(BitString(width, best->first), BitString(width, best->second)), queries, "brute",
            ms_since(start)};
}

}  // namespace

SolveReport brute_categorized(const CategorizedPigeonInstance& inst, const Caps& caps) {
    // Hole values h(removed) cost |removed| extra queries up front.
    CountingOracle h(inst.h);
    std::set<uint64_t> holes;
    for (const BitString& pi : inst.removed) holes.insert(h.eval_value(pi.value()));
    SolveReport report = categorized_scan(
        inst.p, inst.h, inst.removed, inst.element_width(),
        [&](uint64_t, uint64_t hx) { return holes.count(hx) > 0; }, caps, "brute_categorized");
    report.queries += h.count();
    return report;
}

SolveReport brute_alt_categorized(const AltCategorizedPigeonInstance& inst, const Caps& caps) {
    return categorized_scan(
        inst.p, inst.h, {inst.pi}, inst.element_width(),
        [](uint64_t px, uint64_t hx) { return px == hx; }, caps, "brute_alt_categorized");
}

SolveReport brute_sink(const LineGraphInstance& inst, const Caps& caps) {
    check_cap(inst.n, caps.pigeon_enum_bits, "brute_sink");
    auto start = Clock::now();
    CountingOracle succ(inst.succ), pred(inst.pred);
    const uint64_t domain = uint64_t{1} << inst.n;
    for (uint64_t x = 0; x < domain; ++x) {
        if (pred.eval_value(succ.eval_value(x)) != x)
            return {Sink{BitString(inst.n, x)}, succ.count() + pred.count(), "brute", ms_since(start)};
    }
    throw RejectionError("brute_sink: no sink found; the source promise cannot hold");
}

TriangleScan brute_triangle(const WardSzaboInstance& inst, const Caps& caps) {
    check_cap(inst.node_width(), caps.triangle_node_bits, "brute_triangle");
    auto start = Clock::now();
    CountingOracle c(inst.coloring);
    const int w = inst.node_width();
    const uint64_t nodes = uint64_t{1} << w;

    auto color = [&](uint64_t u, uint64_t v) { return c.eval_value((u << w) | v); };
    auto touches_anchor = [&](uint64_t v) {
        return v == inst.a.value() || v == inst.b.value() || v == inst.c.value();
    };

    for (uint64_t x = 0; x + 2 < nodes; ++x) {
        for (uint64_t y = x + 1; y + 1 < nodes; ++y) {
            for (uint64_t z = y + 1; z < nodes; ++z) {
                if (inst.basic_required && !touches_anchor(x) && !touches_anchor(y) && !touches_anchor(z))
                    continue;
                uint64_t cxy = color(x, y), cyx = color(y, x);
                if (cxy != cyx)
                    return {Solution(SymmetryViolation{BitString(w, x), BitString(w, y)}), c.count(),
                            ms_since(start)};
                uint64_t cxz = color(x, z), czx = color(z, x);
                if (cxz != czx)
                    return {Solution(SymmetryViolation{BitString(w, x), BitString(w, z)}), c.count(),
                            ms_since(start)};
                uint64_t cyz = color(y, z), czy = color(z, y);
                if (cyz != czy)
                    return {Solution(SymmetryViolation{BitString(w, y), BitString(w, z)}), c.count(),
                            ms_since(start)};
                // Two equal edges and one differing: bichromatic.
                bool two_equal = (cxy == cxz && cxy != cyz) || (cxy == cyz && cxy != cxz) ||
                                 (cxz == cyz && cxz != cxy);
                if (two_equal)
                    return {Solution(Triangle(BitString(w, x), BitString(w, y), BitString(w, z))), c.count(),
                            ms_since(start)};
            }
        }
    }
    return {std::nullopt, c.count(), ms_since(start)};
}

SolveReport guided_ward_szabo(const WardSzaboInstance& inst, GuidedSearchState* state, const Caps& caps) {
    check_cap(inst.node_width(), caps.pigeon_enum_bits, "guided_ward_szabo");
    auto start = Clock::now();
    CountingOracle c(inst.coloring);
    const int w = inst.node_width();
    const uint64_t nodes = uint64_t{1} << w;
    const uint64_t big_n = uint64_t{1} << inst.n;  // N = 2^n, the class-size target
    const uint64_t a = inst.a.value();

    auto color = [&](uint64_t u, uint64_t v) { return c.eval_value((u << w) | v); };
    auto finish = [&](Solution s) -> SolveReport {
        if (state) state->queries = c.count();
        return {std::move(s), c.count(), "guided", ms_since(start)};
    };

    // Phase 1: bucket every edge at a by color; N^2 - 1 edges into at most
    // N colors leave some class with at least N members.
    std::vector<std::vector<uint64_t>> classes;
    classes.resize(size_t(big_n));
    uint64_t col_ab = 0, col_ac = 0;
    for (uint64_t v = 0; v < nodes; ++v) {
        if (v == a) continue;
        uint64_t col = color(a, v);
        classes[size_t(col)].push_back(v);
        if (v == inst.b.value()) col_ab = col;
        if (v == inst.c.value()) col_ac = col;
    }
    uint64_t chi = big_n;
    for (uint64_t col = 0; col < big_n; ++col) {
        if (classes[size_t(col)].size() >= big_n) {
            chi = col;
            break;
        }
    }
    if (chi == big_n)
        throw std::logic_error("guided_ward_szabo: pigeonhole guarantee failed; no color class reaches N");

    const std::vector<uint64_t>& heavy = classes[size_t(chi)];
    std::vector<uint64_t> working(heavy.begin(), heavy.begin() + ptrdiff_t(big_n));
    const uint64_t d = (col_ab != chi) ? inst.b.value() : inst.c.value();
    const uint64_t col_ad = (col_ab != chi) ? col_ab : col_ac;

    if (state) {
        state->chosen_color = BitString(inst.n, chi);
        state->heavy_class.clear();
        for (uint64_t v : heavy) state->heavy_class.push_back(BitString(w, v));
        state->working_set.clear();
        for (uint64_t v : working) state->working_set.push_back(BitString(w, v));
        state->off_class_anchor = BitString(w, d);
    }

    // Phase 2: any non-chi edge inside the working set closes a triangle
    // at a.
    for (size_t i = 0; i < working.size(); ++i) {
        for (size_t j = i + 1; j < working.size(); ++j) {
            if (color(working[i], working[j]) != chi)
                return finish(Triangle(inst.a, BitString(w, working[i]), BitString(w, working[j])));
        }
    }

    // Phase 3: the working set is a chi-clique. N+1 colors C(d, w) for
    // w in W u {a} must repeat.
    std::vector<uint64_t> seq = working;
    seq.push_back(a);
    std::vector<uint64_t> vals(seq.size(), 0);
    for (size_t i = 0; i < seq.size(); ++i) {
        vals[i] = color(d, seq[i]);
        if (seq[i] == a && vals[i] != col_ad)
            return finish(SymmetryViolation{inst.a, BitString(w, d)});
    }
    for (size_t i = 0; i < seq.size(); ++i) {
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (vals[i] != vals[j]) continue;
            // a sits last in seq, so seq[i] != a.
            uint64_t y = seq[i], z = seq[j];
            if (vals[i] == chi) return finish(Triangle(inst.a, BitString(w, d), BitString(w, y)));
            if (z == a) return finish(Triangle(inst.a, BitString(w, d), BitString(w, y)));
            return finish(Triangle(BitString(w, d), BitString(w, y), BitString(w, z)));
        }
    }
    throw std::logic_error("guided_ward_szabo: pigeonhole guarantee failed in phase 3");
}

SolveReport solve(const Instance& inst, const std::string& method, const Caps& caps) {
    if (method != "brute" && method != "guided")
        throw UsageError("unknown solve method '" + method + "' (expected brute or guided)");
    struct V {
        const std::string& method;
        const Caps& caps;
        SolveReport operator()(const WardSzaboInstance& i) {
            if (method == "guided") return guided_ward_szabo(i, nullptr, caps);
            TriangleScan scan = brute_triangle(i, caps);
            if (!scan.solution)
                throw RejectionError("brute_triangle: no bichromatic triangle; the coloring breaks the "
                                     "at-most-N-colors promise");
            return {*scan.solution, scan.queries, "brute", scan.elapsed_ms};
        }
        SolveReport operator()(const PigeonInstance& i) { return with_brute(brute_pigeon(i, caps)); }
        SolveReport operator()(const CategorizedPigeonInstance& i) {
            return with_brute(brute_categorized(i, caps));
        }
        SolveReport operator()(const AltCategorizedPigeonInstance& i) {
            return with_brute(brute_alt_categorized(i, caps));
        }
        SolveReport operator()(const LineGraphInstance& i) { return with_brute(brute_sink(i, caps)); }

        SolveReport with_brute(SolveReport r) {
            if (method == "guided")
                throw UsageError("the guided method only applies to ward-szabo instances");
            return r;
        }
    };
    return std::visit(V{method, caps}, inst);
}

}  // namespace tfnp
