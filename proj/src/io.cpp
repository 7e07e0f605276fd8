#include "tfnp/io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

#include "tfnp/error.hpp"

namespace tfnp {

std::string digest64(std::string_view text) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int i = 15; i >= 0; --i) out += hex[(h >> (4 * i)) & 0xf];
    return out;
}

namespace {

void write_oracle(std::ostringstream& out, const std::string& name, const Oracle& o) {
    if (o.is_circuit()) {
        out << "oracle " << name << ": circuit\n";
        out << o.circuit().serialize();
    } else {
        const TruthTable& t = o.table();
        out << "oracle " << name << ": table in=" << t.input_width() << " out=" << t.output_width()
            << "\n";
        for (uint64_t x = 0; x < t.size(); ++x) {
            out << "map " << BitString(t.input_width(), x).str() << " -> "
                << BitString(t.output_width(), t.row(x)).str() << "\n";
        }
    }
}

void write_bits_line(std::ostringstream& out, const char* label, const std::vector<BitString>& list) {
    out << label << ":";
    for (const BitString& b : list) out << " " << b.str();
    out << "\n";
}

struct InstanceWriter {
    std::ostringstream out;

    std::string operator()(const WardSzaboInstance& i) {
        header("ward-szabo", "n=" + std::to_string(i.n) + " basic=" + (i.basic_required ? "1" : "0"));
        write_oracle(out, "C", i.coloring);
        write_bits_line(out, "anchors", {i.a, i.b, i.c});
        return out.str();
    }
    std::string operator()(const PigeonInstance& i) {
        header("pigeon", "n=" + std::to_string(i.n));
        write_oracle(out, "f", i.f);
        out << "target: " << i.v_star.str() << "\n";
        return out.str();
    }
    std::string operator()(const CategorizedPigeonInstance& i) {
        header("categorized-pigeon", "m1=" + std::to_string(i.m1) + " m2=" + std::to_string(i.m2) +
                                         " k=" + std::to_string(i.removed.size()) +
                                         " injective=" + (i.injective_flag ? "1" : "0"));
        write_oracle(out, "p", i.p);
        write_oracle(out, "h", i.h);
        write_bits_line(out, "removed", i.removed);
        return out.str();
    }
    std::string operator()(const AltCategorizedPigeonInstance& i) {
        header("alt-categorized-pigeon", "n=" + std::to_string(i.n));
        write_oracle(out, "p", i.p);
        write_oracle(out, "h", i.h);
        write_bits_line(out, "removed", {i.pi});
        return out.str();
    }
    std::string operator()(const LineGraphInstance& i) {
        header("sink-of-line", "n=" + std::to_string(i.n) + " k=" + std::to_string(i.sources.size()));
        write_oracle(out, "S", i.succ);
        write_oracle(out, "P", i.pred);
        write_bits_line(out, "sources", i.sources);
        return out.str();
    }

    void header(const char* kind, const std::string& params) {
        out << "format: tfnp-instance v1\n";
        out << "problem: " << kind << "\n";
        out << "params: " << params << "\n";
    }
};

}  // namespace

std::string serialize_instance(const Instance& inst) {
    return std::visit(InstanceWriter{}, inst);
}

std::string instance_digest(const Instance& inst) {
    return digest64(serialize_instance(inst));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lines {
    std::vector<std::string> items;   // stripped, comment-free lines
    std::vector<int> numbers;         // original 1-based line numbers
    size_t at = 0;

    explicit Lines(std::string_view text) {
        int line_no = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos) {
                if (pos > text.size()) break;
                continue;
            }
            if (line[first] == '#') continue;
            size_t last = line.find_last_not_of(" \t");
            items.emplace_back(line.substr(first, last - first + 1));
            numbers.push_back(line_no);
            if (pos > text.size()) break;
        }
    }

    bool done() const { return at >= items.size(); }
    const std::string& peek() const { return items[at]; }
    int line_no() const { return at < numbers.size() ? numbers[at] : (numbers.empty() ? 0 : numbers.back()); }
    const std::string& take() { return items[at++]; }
};

[[noreturn]] void fail(const Lines& lines, const std::string& msg) {
    throw ParseError("line " + std::to_string(lines.line_no()) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int to_int(const std::string& s, const Lines& lines, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        fail(lines, std::string("bad ") + what + " '" + s + "'");
    return v;
}

// key=value pairs on a params line
std::map<std::string, std::string> parse_kv(const std::vector<std::string>& toks, size_t from,
                                            const Lines& lines) {
    std::map<std::string, std::string> kv;
    for (size_t i = from; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos) fail(lines, "expected key=value, got '" + toks[i] + "'");
        kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return kv;
}

std::string expect_prefixed(Lines& lines, const std::string& prefix) {
    if (lines.done()) throw ParseError("unexpected end of file; expected '" + prefix + "...'");
    const std::string& line = lines.peek();
    if (line.rfind(prefix, 0) != 0) fail(lines, "expected '" + prefix + "...', got '" + line + "'");
    std::string rest = line.substr(prefix.size());
    size_t first = rest.find_first_not_of(" \t");
    lines.take();
    return first == std::string::npos ? std::string() : rest.substr(first);
}

Oracle parse_oracle_block(Lines& lines, const std::string& want_name) {
    if (lines.done()) throw ParseError("unexpected end of file; expected oracle block");
    auto toks = tokens_of(lines.peek());
    if (toks.size() < 3 || toks[0] != "oracle")
        fail(lines, "expected 'oracle " + want_name + ": ...'");
    std::string name = toks[1];
    if (!name.empty() && name.back() == ':') name.pop_back();
    if (name != want_name) fail(lines, "expected oracle '" + want_name + "', got '" + name + "'");
    std::string backend = toks[2];

    if (backend == "circuit") {
        lines.take();
        // Re-assemble the circuit block: header line through outputs line.
        if (lines.done()) throw ParseError("unexpected end of file inside circuit block");
        std::ostringstream block;
        bool closed = false;
        while (!lines.done()) {
            const std::string& l = lines.take();
            block << l << "\n";
            if (l.rfind("outputs:", 0) == 0) {
                closed = true;
                break;
            }
        }
        if (!closed) throw ParseError("circuit block missing 'outputs:' line");
        return Oracle(Circuit::parse(block.str()));
    }
    if (backend == "table") {
        auto kv = parse_kv(toks, 3, lines);
        if (!kv.count("in") || !kv.count("out")) fail(lines, "table oracle needs in= and out=");
        int in_w = to_int(kv["in"], lines, "table input width");
        int out_w = to_int(kv["out"], lines, "table output width");
        lines.take();
        if (in_w < 1 || in_w > 24) throw ParseError("table input width out of supported range 1..24");
        size_t need = size_t{1} << in_w;
        std::vector<uint64_t> rows(need, 0);
        std::vector<bool> seen(need, false);
        for (size_t i = 0; i < need; ++i) {
            if (lines.done()) throw ParseError("incomplete table: expected " + std::to_string(need) + " map lines");
            auto mt = tokens_of(lines.peek());
            if (mt.size() != 4 || mt[0] != "map" || mt[2] != "->")
                fail(lines, "expected 'map <in> -> <out>'");
            BitString in_bits = BitString::parse(mt[1]);
            BitString out_bits = BitString::parse(mt[3]);
            if (in_bits.width() != in_w) fail(lines, "map input width inconsistent with table header");
            if (out_bits.width() != out_w) fail(lines, "map output width inconsistent with table header");
            if (seen[size_t(in_bits.value())]) fail(lines, "duplicate map entry for " + mt[1]);
            seen[size_t(in_bits.value())] = true;
            rows[size_t(in_bits.value())] = out_bits.value();
            lines.take();
        }
        return Oracle(TruthTable(in_w, out_w, std::move(rows)));
    }
    fail(lines, "unknown oracle backend '" + backend + "' (expected circuit or table)");
}

std::vector<BitString> parse_bits_line(Lines& lines, const std::string& label) {
    std::string rest = expect_prefixed(lines, label + ":");
    std::vector<BitString> out;
    for (const std::string& t : tokens_of(rest)) out.push_back(BitString::parse(t));
    return out;
}

int kv_int(std::map<std::string, std::string>& kv, const std::string& key, const Lines& lines) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw ParseError("params line missing required '" + key + "='");
    return to_int(it->second, lines, key.c_str());
}

int kv_int_or(std::map<std::string, std::string>& kv, const std::string& key, int fallback,
              const Lines& lines) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : to_int(it->second, lines, key.c_str());
}

}  // namespace

Instance parse_instance(std::string_view text) {
    Lines lines(text);
    std::string fmt = expect_prefixed(lines, "format:");
    if (fmt != "tfnp-instance v1") throw ParseError("unsupported format '" + fmt + "'");
    std::string kind_name = expect_prefixed(lines, "problem:");
    auto kind = problem_kind_from_name(kind_name);
    if (!kind) throw ParseError("unknown problem kind '" + kind_name + "'");
    auto params_toks = tokens_of(expect_prefixed(lines, "params:"));
    auto kv = parse_kv(params_toks, 0, lines);

    switch (*kind) {
        case ProblemKind::WardSzabo: {
            WardSzaboInstance i;
            i.n = kv_int(kv, "n", lines);
            i.basic_required = kv_int_or(kv, "basic", 0, lines) != 0;
            i.coloring = parse_oracle_block(lines, "C");
            auto anchors = parse_bits_line(lines, "anchors");
            if (anchors.size() != 3) throw ParseError("anchors line must list exactly three nodes");
            i.a = anchors[0];
            i.b = anchors[1];
            i.c = anchors[2];
            return i;
        }
        case ProblemKind::Pigeon: {
            PigeonInstance i;
            i.n = kv_int(kv, "n", lines);
            i.f = parse_oracle_block(lines, "f");
            std::string t = expect_prefixed(lines, "target:");
            i.v_star = BitString::parse(t);
            return i;
        }
        case ProblemKind::Categorized: {
            CategorizedPigeonInstance i;
            i.m1 = kv_int(kv, "m1", lines);
            i.m2 = kv_int(kv, "m2", lines);
            i.injective_flag = kv_int_or(kv, "injective", 0, lines) != 0;
            int k = kv_int_or(kv, "k", -1, lines);
            i.p = parse_oracle_block(lines, "p");
            i.h = parse_oracle_block(lines, "h");
            i.removed = parse_bits_line(lines, "removed");
            if (k >= 0 && size_t(k) != i.removed.size())
                throw ParseError("params k disagrees with the removed list length");
            return i;
        }
        case ProblemKind::AltCategorized: {
            AltCategorizedPigeonInstance i;
            i.n = kv_int(kv, "n", lines);
            i.p = parse_oracle_block(lines, "p");
            i.h = parse_oracle_block(lines, "h");
            auto removed = parse_bits_line(lines, "removed");
            if (removed.size() != 1) throw ParseError("alt-categorized-pigeon takes exactly one removed element");
            i.pi = removed[0];
            return i;
        }
        case ProblemKind::SinkOfLine: {
            LineGraphInstance i;
            i.n = kv_int(kv, "n", lines);
            int k = kv_int_or(kv, "k", -1, lines);
            i.succ = parse_oracle_block(lines, "S");
            i.pred = parse_oracle_block(lines, "P");
            i.sources = parse_bits_line(lines, "sources");
            if (k >= 0 && size_t(k) != i.sources.size())
                throw ParseError("params k disagrees with the source list length");
            return i;
        }
    }
    throw ParseError("unreachable");
}

// ---------------------------------------------------------------------------
// Solutions

std::string serialize_solution(const Solution& s, const std::optional<SolutionMetrics>& metrics) {
    std::ostringstream out;
    out << "solution: " << solution_variant_name(s) << "\n";
    struct V {
        std::ostringstream& out;
        void operator()(const Triangle& t) { out << t.x.str() << "\n" << t.y.str() << "\n" << t.z.str() << "\n"; }
        void operator()(const SymmetryViolation& v) { out << v.x.str() << "\n" << v.y.str() << "\n"; }
        void operator()(const Preimage& p) { out << p.x.str() << "\n"; }
        void operator()(const Collision& c) { out << c.x.str() << "\n" << c.y.str() << "\n"; }
        void operator()(const HoleHit& h) { out << h.x.str() << "\n"; }
        void operator()(const Sink& k) { out << k.x.str() << "\n"; }
    };
    std::visit(V{out}, s);
    if (metrics) {
        out << "queries: " << metrics->queries << "\n";
        out << "method: " << metrics->method << "\n";
        out << "elapsed_ms: " << metrics->elapsed_ms << "\n";
    }
    return out.str();
}

namespace {

Solution make_solution(const std::string& variant, const std::vector<BitString>& payload) {
    auto need = [&](size_t n) {
        if (payload.size() != n)
            throw ParseError("solution variant '" + variant + "' takes " + std::to_string(n) +
                             " element(s), got " + std::to_string(payload.size()));
    };
    if (variant == "triangle") {
        need(3);
        return Triangle(payload[0], payload[1], payload[2]);
    }
    if (variant == "symmetry-violation") {
        need(2);
        return SymmetryViolation{payload[0], payload[1]};
    }
    if (variant == "preimage") {
        need(1);
        return Preimage{payload[0]};
    }
    if (variant == "collision") {
        need(2);
        return Collision(payload[0], payload[1]);
    }
    if (variant == "hole-hit") {
        need(1);
        return HoleHit{payload[0]};
    }
    if (variant == "sink") {
        need(1);
        return Sink{payload[0]};
    }
    throw ParseError("unknown solution variant '" + variant + "'");
}

}  // namespace

Solution parse_solution(std::string_view text, std::optional<SolutionMetrics>* metrics) {
    Lines lines(text);
    std::string variant = expect_prefixed(lines, "solution:");
    std::vector<BitString> payload;
    SolutionMetrics m;
    bool have_metrics = false;
    while (!lines.done()) {
        const std::string& l = lines.peek();
        if (l.rfind("queries:", 0) == 0) {
            m.queries = uint64_t(to_int(tokens_of(l)[1], lines, "queries"));
            have_metrics = true;
            lines.take();
        } else if (l.rfind("method:", 0) == 0) {
            m.method = tokens_of(l)[1];
            have_metrics = true;
            lines.take();
        } else if (l.rfind("elapsed_ms:", 0) == 0) {
            m.elapsed_ms = to_int(tokens_of(l)[1], lines, "elapsed_ms");
            have_metrics = true;
            lines.take();
        } else {
            payload.push_back(BitString::parse(lines.take()));
        }
    }
    if (metrics) *metrics = have_metrics ? std::optional<SolutionMetrics>(m) : std::nullopt;
    return make_solution(variant, payload);
}

Solution parse_solution_literal(std::string_view text) {
    size_t open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')')
        throw ParseError("expected '<variant>(<bits>,...)', got '" + std::string(text) + "'");
    std::string variant(text.substr(0, open));
    std::string_view args = text.substr(open + 1, text.size() - open - 2);
    std::vector<BitString> payload;
    size_t pos = 0;
    while (pos <= args.size() && !args.empty()) {
        size_t comma = args.find(',', pos);
        if (comma == std::string_view::npos) comma = args.size();
        payload.push_back(BitString::parse(args.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == args.size()) break;
    }
    return make_solution(variant, payload);
}

}  // namespace tfnp
