// tfnpkit: generate, reduce, solve, pull back, and verify oracle search
// problem instances. Exit codes: 0 success / accepted, 1 rejected
// certificate or solver failure, 2 usage error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tfnp/error.hpp"
#include "tfnp/generators.hpp"
#include "tfnp/io.hpp"
#include "tfnp/pipeline.hpp"

namespace {

using namespace tfnp;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

// -s accepts either a solution file path or an inline literal like
// triangle(00,01,11).
Solution load_solution(const std::string& arg) {
    if (arg.find('(') != std::string::npos && !std::filesystem::exists(arg))
        return parse_solution_literal(arg);
    return parse_solution(read_file(arg));
}

Chain load_chain(const std::string& arg) {
    if (is_builtin_chain(arg)) return normalize_chain(builtin_chain(arg));
    if (std::filesystem::exists(arg)) return normalize_chain(parse_chain_manifest(read_file(arg)));
    throw UsageError("unknown chain '" + arg +
                     "' (built-ins: ws2pigeon, pigeon2altcat, mssol2pigeon; or pass a manifest file)");
}

void apply_k_override(Chain& chain, int k) {
    for (ChainStage& s : chain.stages)
        if (s.reduction == "pigeon-to-categorized") s.params.k = k;
}

void print_trace(const std::vector<StageTrace>& trace) {
    for (size_t t = 0; t < trace.size(); ++t) {
        const StageTrace& s = trace[t];
        std::cout << "  stage " << t << ": " << s.reduction << " (" << problem_kind_name(s.from) << " -> "
                  << problem_kind_name(s.to) << ")";
        if (s.circuit_path) {
            long long measured_alpha =
                (long long)s.out_gates - (long long)(s.declared_beta * double(s.in_gates));
            std::cout << " gates " << s.in_gates << " -> " << s.out_gates << " (bound "
                      << s.declared_alpha << " + " << s.declared_beta << "*in; measured alpha "
                      << measured_alpha << ")";
        } else {
            std::cout << " [table path]";
        }
        std::cout << "\n";
    }
}

int cmd_gen(const std::string& kind, int n, uint64_t seed, int q, uint64_t colors, int k,
            const std::string& mode, const std::string& out_path) {
    if (kind == "swell") {
        DenseColoring coloring = gen_swell(q);
        std::string text = coloring.serialize();
        write_file(out_path, text);
        std::cout << "swell coloring of K_" << coloring.nodes << ": " << coloring.colors_used()
                  << " colors, 0 bichromatic triangles among " << coloring.triangle_count() << "\n";
        std::cout << "wrote " << out_path << " digest " << digest64(text) << "\n";
        return 0;
    }
    Instance inst;
    if (kind == "ws") {
        inst = gen_ws(n, seed, colors);
    } else if (kind == "pigeon") {
        inst = gen_pigeon(n, seed, mode == "permutation" ? PigeonMode::Permutation : PigeonMode::Random);
    } else if (kind == "lines") {
        inst = gen_lines(n, seed, k);
    } else {
        throw UsageError("unknown generator kind '" + kind + "' (swell, ws, pigeon, lines)");
    }
    Verdict v = validate_instance(inst);
    if (!v.ok()) throw UsageError("generated instance failed validation: " + v.code);
    std::string text = serialize_instance(inst);
    write_file(out_path, text);
    std::cout << "wrote " << out_path << " digest " << digest64(text) << "\n";
    return 0;
}

int cmd_reduce(const std::string& chain_arg, const std::string& in_path, const std::string& out_path,
               const std::string& prov_path, int k) {
    Chain chain = load_chain(chain_arg);
    apply_k_override(chain, k);
    Instance original = load_instance(in_path);
    ComposeResult composed = compose(chain, original);
    print_trace(composed.trace);
    if (composed.immediate) {
        std::string text = serialize_solution(*composed.immediate);
        write_file(out_path, text);
        std::cout << "short-circuit: immediate solution " << solution_text(*composed.immediate)
                  << " written to " << out_path << " (no reduced instance)\n";
        return 0;
    }
    write_file(out_path, serialize_instance(composed.reduced()));
    write_file(prov_path, serialize_provenance(composed.provenance));
    std::cout << "reduced " << problem_kind_name(kind_of(original)) << " -> "
              << problem_kind_name(kind_of(composed.reduced())) << "; wrote " << out_path << " and "
              << prov_path << "\n";
    return 0;
}

int cmd_solve(const std::string& in_path, const std::string& method, const std::string& out_path) {
    Instance inst = load_instance(in_path);
    SolveReport report = solve(inst, method);
    SolutionMetrics metrics{report.queries, report.method, report.elapsed_ms};
    std::string text = serialize_solution(report.solution, metrics);
    if (!out_path.empty()) write_file(out_path, text);
    std::cout << text;
    if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_pullback(const std::string& in_path, const std::string& prov_path, const std::string& sol_arg,
                 const std::string& out_path) {
    Instance original = load_instance(in_path);
    Provenance prov = parse_provenance(read_file(prov_path));
    Solution reduced = load_solution(sol_arg);
    Solution pulled = pullback_with_provenance(prov, original, reduced);
    std::string text = serialize_solution(pulled);
    if (!out_path.empty()) write_file(out_path, text);
    std::cout << "pulled back to " << solution_text(pulled) << "\n";
    return 0;
}

int cmd_verify(const std::string& in_path, const std::string& sol_arg) {
    Instance inst = load_instance(in_path);
    if (sol_arg.empty()) {
        Verdict v = validate_instance(inst);
        if (v.ok()) {
            std::cout << "instance valid\n";
            return 0;
        }
        std::cout << "instance invalid: " << v.code << " (" << v.detail << ")\n";
        return 1;
    }
    Solution sol = load_solution(sol_arg);
    Verdict v = verify(inst, sol);
    if (v.usage()) throw UsageError(v.code + ": " + v.detail);
    if (v.ok()) {
        std::cout << "accepted " << solution_text(sol) << "\n";
        return 0;
    }
    std::cout << "rejected " << solution_text(sol) << ": " << v.code << " (" << v.detail << ")\n";
    return 1;
}

int cmd_roundtrip(const std::string& in_path, const std::string& chain_arg, const std::string& method,
                  int k) {
    Chain chain = load_chain(chain_arg);
    apply_k_override(chain, k);
    Instance original = load_instance(in_path);
    RoundtripReport report = roundtrip(original, chain, method);
    print_trace(report.trace);
    if (report.short_circuited)
        std::cout << "short-circuit solution: " << solution_text(report.final_solution) << "\n";
    else
        std::cout << "reduced solve: " << solution_text(report.solve_report.solution) << " ("
                  << report.solve_report.queries << " queries)\n";
    if (report.ok) {
        std::cout << "roundtrip ok: " << solution_text(report.final_solution) << "\n";
        return 0;
    }
    std::cout << "roundtrip FAILED: " << report.final_verdict.code << " ("
              << report.final_verdict.detail << ")\n";
    return 1;
}

int cmd_stats(const std::string& in_path, const std::string& chain_arg, int k) {
    Chain chain = load_chain(chain_arg);
    apply_k_override(chain, k);
    Instance original = load_instance(in_path);
    ComposeResult composed = compose(chain, original);
    std::cout << "chain " << chain.name << " on " << problem_kind_name(kind_of(original)) << ":\n";
    print_trace(composed.trace);
    size_t in_total = composed.trace.empty() ? 0 : composed.trace.front().in_gates;
    size_t out_total = composed.trace.empty() ? 0 : composed.trace.back().out_gates;
    bool all_circuit = true;
    bool all_within = true;
    for (const StageTrace& s : composed.trace) {
        if (!s.circuit_path) all_circuit = false;
        if (s.circuit_path &&
            double(s.out_gates) > double(s.declared_alpha) + s.declared_beta * double(s.in_gates))
            all_within = false;
    }
    if (composed.immediate) {
        std::cout << "short-circuited with " << solution_text(*composed.immediate) << "\n";
    } else if (all_circuit) {
        std::cout << "chain total: " << in_total << " -> " << out_total << " gates; declared bounds "
                  << (all_within ? "hold" : "VIOLATED") << "\n";
        if (!all_within) return 1;
    } else {
        std::cout << "chain ran on the table path; gate-growth bounds apply to circuit-backed runs\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oracle search problems: generators, reductions, solvers, verifiers"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate an instance or a swell coloring");
    std::string gen_kind, gen_mode = "random", gen_out = "instance.tfnp";
    int gen_n = 1, gen_q = 3, gen_k = 1;
    uint64_t gen_seed = 1, gen_colors = 0;
    gen->add_option("kind", gen_kind, "swell | ws | pigeon | lines")->required();
    gen->add_option("--n", gen_n, "bit-width parameter");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--q", gen_q, "field order for swell (2,3,4,5,7)");
    gen->add_option("--colors", gen_colors, "palette cap for ws (default 2^n)");
    gen->add_option("--k", gen_k, "line count for lines");
    gen->add_option("--mode", gen_mode, "pigeon mode: permutation | random");
    gen->add_option("-o,--out", gen_out, "output file");

    auto* reduce = app.add_subcommand("reduce", "apply a reduction chain");
    std::string red_chain, red_in, red_out = "reduced.tfnp", red_prov = "provenance.tfnp";
    int red_k = 1;
    reduce->add_option("chain", red_chain, "chain name or manifest file")->required();
    reduce->add_option("-i,--in", red_in, "instance file")->required();
    reduce->add_option("-o,--out", red_out, "reduced instance output");
    reduce->add_option("-t,--provenance", red_prov, "provenance output");
    reduce->add_option("--k", red_k, "k for pigeon-to-categorized stages");

    auto* solve_cmd = app.add_subcommand("solve", "solve an instance by enumeration");
    std::string sol_in, sol_method = "brute", sol_out;
    solve_cmd->add_option("-i,--in", sol_in, "instance file")->required();
    solve_cmd->add_option("--method", sol_method, "brute | guided");
    solve_cmd->add_option("-o,--out", sol_out, "solution output file");

    auto* pull = app.add_subcommand("pullback", "map a reduced solution back to the original");
    std::string pull_in, pull_prov, pull_sol, pull_out;
    pull->add_option("-i,--in", pull_in, "original instance file")->required();
    pull->add_option("-t,--provenance", pull_prov, "provenance file")->required();
    pull->add_option("-s,--solution", pull_sol, "reduced solution file or literal")->required();
    pull->add_option("-o,--out", pull_out, "pulled-back solution output");

    auto* verify_cmd = app.add_subcommand("verify", "verify a solution (or validate an instance)");
    std::string ver_in, ver_sol;
    verify_cmd->add_option("-i,--in", ver_in, "instance file")->required();
    verify_cmd->add_option("-s,--solution", ver_sol, "solution file or literal such as triangle(00,01,11)");

    auto* rt = app.add_subcommand("roundtrip", "reduce, solve, pull back, verify");
    std::string rt_in, rt_chain, rt_method = "brute";
    int rt_k = 1;
    rt->add_option("-i,--in", rt_in, "instance file")->required();
    rt->add_option("-c,--chain", rt_chain, "chain name or manifest file")->required();
    rt->add_option("--method", rt_method, "solver for the reduced instance");
    rt->add_option("--k", rt_k, "k for pigeon-to-categorized stages");

    auto* stats = app.add_subcommand("stats", "per-stage size growth of a chain");
    std::string st_in, st_chain;
    int st_k = 1;
    stats->add_option("-i,--in", st_in, "instance file")->required();
    stats->add_option("-c,--chain", st_chain, "chain name or manifest file")->required();
    stats->add_option("--k", st_k, "k for pigeon-to-categorized stages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_seed, gen_q, gen_colors, gen_k, gen_mode, gen_out);
        if (reduce->parsed()) return cmd_reduce(red_chain, red_in, red_out, red_prov, red_k);
        if (solve_cmd->parsed()) return cmd_solve(sol_in, sol_method, sol_out);
        if (pull->parsed()) return cmd_pullback(pull_in, pull_prov, pull_sol, pull_out);
        if (verify_cmd->parsed()) return cmd_verify(ver_in, ver_sol);
        if (rt->parsed()) return cmd_roundtrip(rt_in, rt_chain, rt_method, rt_k);
        if (stats->parsed()) return cmd_stats(st_in, st_chain, st_k);
    } catch (const RejectionError& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
