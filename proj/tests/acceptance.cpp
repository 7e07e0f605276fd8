// Acceptance suite: one self-contained check per shipping criterion, one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "independent_checks.hpp"
#include "tfnp/generators.hpp"
#include "tfnp/io.hpp"
#include "tfnp/pipeline.hpp"
#include "tfnp/rng.hpp"

using namespace tfnp;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

WardSzaboInstance k4_instance(uint64_t edge_bits, uint64_t a, uint64_t b, uint64_t c) {
    std::array<uint64_t, 6> edges{};
    for (int e = 0; e < 6; ++e) edges[size_t(e)] = (edge_bits >> e) & 1;
    WardSzaboInstance inst;
    inst.n = 1;
    inst.coloring = fixtures::k4_coloring(edges);
    inst.a = BitString(2, a);
    inst.b = BitString(2, b);
    inst.c = BitString(2, c);
    return inst;
}

Instance to_circuit(const Instance& inst) {
    if (const auto* ws = std::get_if<WardSzaboInstance>(&inst)) {
        WardSzaboInstance c = *ws;
        c.coloring = Oracle(table_to_circuit(tabulate(c.coloring), "C"));
        return c;
    }
    if (const auto* pg = std::get_if<PigeonInstance>(&inst)) {
        PigeonInstance c = *pg;
        c.f = Oracle(table_to_circuit(tabulate(c.f), "f"));
        return c;
    }
    const auto& line = std::get<LineGraphInstance>(inst);
    LineGraphInstance c = line;
    c.succ = Oracle(table_to_circuit(tabulate(c.succ), "S"));
    c.pred = Oracle(table_to_circuit(tabulate(c.pred), "P"));
    return c;
}

// 1. Exhaustive n=1 chain soundness over every symmetric two-colored K4
//    table and every admissible anchor triple.
bool criterion_exhaustive_chain(std::string& detail) {
    Chain chain = builtin_chain("ws2pigeon");
    int tables = 0, runs = 0, ok = 0;
    for (uint64_t edge_bits = 1; edge_bits < 63; ++edge_bits) {
        ++tables;
        for (uint64_t a = 0; a < 4; ++a)
            for (uint64_t b = 0; b < 4; ++b)
                for (uint64_t c = 0; c < 4; ++c) {
                    if (a == b || b == c || a == c) continue;
                    WardSzaboInstance inst = k4_instance(edge_bits, a, b, c);
                    if (!validate_instance(Instance(inst)).ok()) continue;
                    ++runs;
                    if (roundtrip(Instance(inst), chain).ok) ++ok;
                }
    }
    detail = std::to_string(tables) + " tables, " + std::to_string(ok) + "/" + std::to_string(runs) +
             " anchored roundtrips ok";
    return tables == 62 && runs > 0 && ok == runs;
}

// 2. Randomized chain soundness at n=2 and n=3 with table oracles.
bool criterion_random_chain(std::string& detail) {
    Chain chain = builtin_chain("ws2pigeon");
    int ok2 = 0, ok3 = 0;
    for (uint64_t seed = 1; seed <= 1000; ++seed)
        if (roundtrip(Instance(gen_ws(2, seed)), chain).ok) ++ok2;
    for (uint64_t seed = 1; seed <= 200; ++seed)
        if (roundtrip(Instance(gen_ws(3, seed)), chain).ok) ++ok3;
    detail = std::to_string(ok2) + "/1000 at n=2, " + std::to_string(ok3) + "/200 at n=3";
    return ok2 == 1000 && ok3 == 200;
}

// 3. Tightness witness: slope colorings use exactly q+1 colors with zero
//    bichromatic triangles.
bool criterion_tightness(std::string& detail) {
    size_t triangles_total = 0;
    for (int q : {2, 3, 4, 5, 7}) {
        DenseColoring c = gen_swell(q);
        triangles_total += c.triangle_count();
        if (c.colors_used() != q + 1) {
            detail = "q=" + std::to_string(q) + " used " + std::to_string(c.colors_used()) + " colors";
            return false;
        }
        if (c.find_bichromatic()) {
            detail = "q=" + std::to_string(q) + " has a bichromatic triangle";
            return false;
        }
    }
    detail = "q in {2,3,4,5,7}; " + std::to_string(triangles_total) + " triangles scanned, 0 bichromatic";
    return true;
}

// 4. Lower bound at N=4: every two-coloring of K4 using both colors
//    contains a bichromatic triangle.
bool criterion_lower_bound(std::string& detail) {
    int checked = 0;
    for (uint64_t edge_bits = 1; edge_bits < 63; ++edge_bits) {
        DenseColoring c;
        c.nodes = 4;
        c.color_of.assign(16, 0);
        int e = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) c.set_color(i, j, int((edge_bits >> e++) & 1));
        if (!c.find_bichromatic()) {
            detail = "assignment " + std::to_string(edge_bits) + " is swell with 2 colors";
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + "/62 two-colorings contain a bichromatic triangle";
    return checked == 62;
}

// 5. Guided-solver query bound and correctness across n=2..6.
bool criterion_guided(std::string& detail) {
    Xorshift64Star seeds(0xABCDEF);
    uint64_t max_queries = 0;
    for (int n = 2; n <= 6; ++n) {
        const uint64_t bound = 2 * (uint64_t{1} << (2 * n)) + (uint64_t{1} << n) + 2;
        for (int trial = 0; trial < 50; ++trial) {
            WardSzaboInstance inst = gen_ws(n, seeds.next());
            GuidedSearchState state;
            SolveReport report = guided_ward_szabo(inst, &state);
            if (report.queries > bound) {
                detail = "n=" + std::to_string(n) + ": " + std::to_string(report.queries) +
                         " queries exceed " + std::to_string(bound);
                return false;
            }
            max_queries = std::max(max_queries, report.queries);
            WardSzaboInstance basic = inst;
            basic.basic_required = true;
            if (!verify_ward_szabo(basic, report.solution).ok()) {
                detail = "n=" + std::to_string(n) + ": returned certificate not basic/accepted";
                return false;
            }
            if (n <= 4 && !brute_triangle(inst).solution.has_value()) {
                detail = "n=" + std::to_string(n) + ": brute scan found no triangle";
                return false;
            }
        }
    }
    detail = "50 seeds per n in 2..6; max queries " + std::to_string(max_queries) +
             " within 2*4^n + 2^n + 2";
    return true;
}

// 6. PPADS chain: line instances through mssol2pigeon, brute-solved and
//    pulled back to verified sinks.
bool criterion_ppads_chain(std::string& detail) {
    Chain chain = builtin_chain("mssol2pigeon");
    int ok = 0, runs = 0;
    for (uint64_t seed = 1; seed <= 500; ++seed) {
        int n = 2 + int(seed % 9);  // 2..10
        int kmax = std::min(8, int(uint64_t{1} << (n - 1)));
        int k = 1 + int(seed % uint64_t(kmax));
        LineGraphInstance inst = gen_lines(n, seed, k);
        ++runs;
        RoundtripReport report = roundtrip(Instance(inst), chain);
        if (report.ok && std::holds_alternative<Sink>(report.final_solution)) ++ok;
    }
    detail = std::to_string(ok) + "/" + std::to_string(runs) + " verified sinks (n<=10, k<=8)";
    return ok == runs && runs == 500;
}

// 7. Totality sweeps: brute solvers return a verified solution on every
//    exhaustively enumerated small instance.
bool criterion_totality(std::string& detail) {
    int cat_ok = 0;
    for (uint64_t p = 0; p < 16; ++p)
        for (uint64_t h = 0; h < 16; ++h)
            for (uint64_t pi = 0; pi < 4; ++pi) {
                CategorizedPigeonInstance inst;
                inst.m1 = 1;
                inst.m2 = 1;
                inst.p = Oracle(TruthTable(2, 1, {p & 1, (p >> 1) & 1, (p >> 2) & 1, (p >> 3) & 1}));
                inst.h = Oracle(TruthTable(2, 1, {h & 1, (h >> 1) & 1, (h >> 2) & 1, (h >> 3) & 1}));
                inst.removed = {BitString(2, pi)};
                if (verify_categorized(inst, brute_categorized(inst).solution).ok()) ++cat_ok;
            }
    int pigeon_ok = 0, pigeon_runs = 0;
    for (uint64_t f = 0; f < 4; ++f)
        for (uint64_t v = 0; v < 2; ++v) {
            PigeonInstance inst;
            inst.n = 1;
            inst.f = Oracle(TruthTable(1, 1, {f & 1, (f >> 1) & 1}));
            inst.v_star = BitString(1, v);
            ++pigeon_runs;
            if (verify_pigeon(inst, brute_pigeon(inst).solution).ok()) ++pigeon_ok;
        }
    for (uint64_t f = 0; f < 256; ++f)
        for (uint64_t v = 0; v < 4; ++v) {
            PigeonInstance inst;
            inst.n = 2;
            inst.f = Oracle(TruthTable(2, 2, {f & 3, (f >> 2) & 3, (f >> 4) & 3, (f >> 6) & 3}));
            inst.v_star = BitString(2, v);
            ++pigeon_runs;
            if (verify_pigeon(inst, brute_pigeon(inst).solution).ok()) ++pigeon_ok;
        }
    detail = std::to_string(cat_ok) + "/1024 categorized, " + std::to_string(pigeon_ok) + "/" +
             std::to_string(pigeon_runs) + " pigeon";
    return cat_ok == 1024 && pigeon_ok == pigeon_runs;
}

// 8. Size growth: circuit-path transforms stay within their declared affine
//    bounds; measured intercepts and chain totals reported.
bool criterion_size_growth(std::string& detail) {
    struct Measured {
        double beta = 1.0;
        long long alpha_hat = 0;  // max over runs of out - beta*in
        size_t runs = 0;
        bool within = true;
    };
    std::map<std::string, Measured> measured;

    auto feed = [&](const Chain& chain, const Instance& inst) {
        ComposeResult composed = compose(chain, inst);
        for (const StageTrace& t : composed.trace) {
            if (!t.circuit_path) continue;
            Measured& m = measured[t.reduction];
            m.beta = t.declared_beta;
            m.runs += 1;
            long long slack = (long long)t.out_gates - (long long)(t.declared_beta * double(t.in_gates));
            m.alpha_hat = std::max(m.alpha_hat, slack);
            if (double(t.out_gates) > double(t.declared_alpha) + t.declared_beta * double(t.in_gates))
                m.within = false;
        }
        return composed;
    };

    Chain ws_chain = builtin_chain("ws2pigeon");
    feed(ws_chain, to_circuit(Instance(fixtures::f1())));
    for (uint64_t seed : {10ull, 11ull}) feed(ws_chain, Instance(gen_ws(2, seed, 0, OracleBackend::Circuit)));
    feed(ws_chain, Instance(gen_ws(3, 12, 0, OracleBackend::Circuit)));

    Chain pigeon_chain = builtin_chain("pigeon2altcat");
    Chain cat_chain{"pigeon2cat", {{"pigeon-to-categorized", {.k = 3}}}};
    for (uint64_t seed : {20ull, 21ull}) {
        Instance pigeon = to_circuit(Instance(gen_pigeon(2 + int(seed % 2), seed)));
        feed(pigeon_chain, pigeon);
        feed(cat_chain, pigeon);
    }

    Chain line_chain = builtin_chain("mssol2pigeon");
    feed(line_chain, to_circuit(Instance(fixtures::l1())));
    for (uint64_t seed : {30ull, 31ull}) feed(line_chain, to_circuit(Instance(gen_lines(4, seed, 3))));

    bool all_within = true;
    std::string report;
    for (const auto& [name, m] : measured) {
        if (!m.within) all_within = false;
        report += name + " (alpha^=" + std::to_string(m.alpha_hat) + ", beta=" +
                  std::to_string(int(m.beta)) + ", runs=" + std::to_string(m.runs) + "); ";
    }
    ComposeResult ws_total = compose(ws_chain, to_circuit(Instance(fixtures::f1())));
    report += "ws2pigeon chain total " + std::to_string(ws_total.trace.front().in_gates) + " -> " +
              std::to_string(ws_total.trace.back().out_gates) + " gates";
    detail = report;
    return all_within && measured.size() >= 8;
}

// 9. Serialization: parse . serialize is the identity across the corpus.
bool criterion_serialization(std::string& detail) {
    std::vector<Instance> corpus = {Instance(fixtures::f1()),  Instance(fixtures::r1()),
                                    Instance(fixtures::r2()),  Instance(fixtures::r3()),
                                    Instance(fixtures::l1())};
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        corpus.push_back(Instance(gen_ws(2, seed)));
        corpus.push_back(Instance(gen_pigeon(3, seed)));
        corpus.push_back(Instance(gen_lines(4, seed, 2)));
    }
    corpus.push_back(Instance(gen_ws(3, 7, 0, OracleBackend::Circuit)));
    corpus.push_back(to_circuit(Instance(fixtures::l1())));
    Chain chain = builtin_chain("ws2pigeon");
    ComposeResult composed = compose(chain, Instance(fixtures::f1()));
    for (const Instance& inst : composed.instances) corpus.push_back(inst);

    int checked = 0;
    for (const Instance& inst : corpus) {
        std::string text = serialize_instance(inst);
        if (serialize_instance(parse_instance(text)) != text) {
            detail = "instance round trip drifted (kind " +
                     std::string(problem_kind_name(kind_of(inst))) + ")";
            return false;
        }
        ++checked;
    }
    std::vector<Circuit> circuits = {equality_comparator(3), mux_circuit(2),
                                     const_string_circuit(BitString(3, 5)),
                                     table_to_circuit(tabulate(fixtures::r3().f))};
    for (const Circuit& c : circuits) {
        std::string text = c.serialize();
        if (!(Circuit::parse(text) == c) || Circuit::parse(text).serialize() != text) {
            detail = "circuit round trip drifted (" + c.name() + ")";
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " artifacts round-trip bit-exactly";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"exhaustive n=1 ws2pigeon roundtrips (62 symmetric K4 tables, all anchors)", 5.0,
         criterion_exhaustive_chain},
        {"randomized ws2pigeon roundtrips (1000 at n=2, 200 at n=3)", 60.0, criterion_random_chain},
        {"swell tightness witness for q in {2,3,4,5,7}", 5.0, criterion_tightness},
        {"lower bound at N=4: two colors always give a bichromatic triangle", 1.0, criterion_lower_bound},
        {"guided solver query bound and basic certificates, n in 2..6", 60.0, criterion_guided},
        {"mssol2pigeon chain: 500 line instances to verified sinks", 30.0, criterion_ppads_chain},
        {"totality sweeps: categorized (1024) and pigeon (n=1,2) brute solvers", 10.0, criterion_totality},
        {"size growth within declared affine bounds (measured alpha, beta)", 30.0, criterion_size_growth},
        {"serialization: parse of serialize is the identity on the corpus", 10.0, criterion_serialization},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            ok = false;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            ok = false;
            detail += " [over budget]";
        }
        std::printf("[%s] criterion %zu: %s — %s (%.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), detail.c_str(), secs, c.budget_seconds);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
