#include "tfnp/circuit.hpp"

#include <charconv>
#include <sstream>

#include "tfnp/error.hpp"

namespace tfnp {

int gate_arity(GateOp op) {
    switch (op) {
        case GateOp::Const0:
        case GateOp::Const1: return 0;
        case GateOp::Not: return 1;
        case GateOp::And:
        case GateOp::Or:
        case GateOp::Xor: return 2;
    }
    return 0;
}

std::string_view gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::Const0: return "CONST0";
        case GateOp::Const1: return "CONST1";
        case GateOp::Not: return "NOT";
        case GateOp::And: return "AND";
        case GateOp::Or: return "OR";
        case GateOp::Xor: return "XOR";
    }
    return "?";
}

namespace {

bool parse_gate_op(std::string_view s, GateOp& out) {
    if (s == "CONST0") out = GateOp::Const0;
    else if (s == "CONST1") out = GateOp::Const1;
    else if (s == "NOT") out = GateOp::Not;
    else if (s == "AND") out = GateOp::And;
    else if (s == "OR") out = GateOp::Or;
    else if (s == "XOR") out = GateOp::Xor;
    else return false;
    return true;
}

void check_ref(const Ref& r, int input_width, int gate_index, const char* what) {
    if (r.kind == Ref::Kind::Input) {
        if (r.index < 0 || r.index >= input_width)
            throw UsageError(std::string(what) + ": input reference out of range");
    } else {
        if (r.index < 0)
            throw UsageError(std::string(what) + ": negative gate reference");
        if (r.index >= gate_index)
            throw UsageError(std::string(what) + ": forward reference to g" + std::to_string(r.index));
    }
}

std::string ref_text(const Ref& r) {
    return (r.kind == Ref::Kind::Input ? "in" : "g") + std::to_string(r.index);
}

}  // namespace

Circuit::Circuit(std::string name, int input_width, std::vector<Gate> gates, std::vector<Ref> outputs)
    : name_(std::move(name)), input_width_(input_width), gates_(std::move(gates)), outputs_(std::move(outputs)) {
    if (input_width_ < 1) throw UsageError("circuit input width must be >= 1");
    if (outputs_.empty()) throw UsageError("circuit must have at least one output");
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        int ar = gate_arity(g.op);
        if (ar >= 1) check_ref(g.a, input_width_, int(i), "gate operand");
        if (ar == 2) check_ref(g.b, input_width_, int(i), "gate operand");
    }
    for (const Ref& r : outputs_) check_ref(r, input_width_, int(gates_.size()), "output");
}

uint64_t Circuit::eval_value(uint64_t x) const {
    // One forward pass; wire values are single bits.
    std::vector<uint8_t> vals(gates_.size());
    auto wire = [&](const Ref& r) -> uint8_t {
        if (r.kind == Ref::Kind::Input)
            return uint8_t((x >> (input_width_ - 1 - r.index)) & 1);
        return vals[size_t(r.index)];
    };
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        switch (g.op) {
            case GateOp::Const0: vals[i] = 0; break;
            case GateOp::Const1: vals[i] = 1; break;
            case GateOp::Not: vals[i] = uint8_t(1 - wire(g.a)); break;
            case GateOp::And: vals[i] = uint8_t(wire(g.a) & wire(g.b)); break;
            case GateOp::Or: vals[i] = uint8_t(wire(g.a) | wire(g.b)); break;
            case GateOp::Xor: vals[i] = uint8_t(wire(g.a) ^ wire(g.b)); break;
        }
    }
    uint64_t out = 0;
    for (const Ref& r : outputs_) out = (out << 1) | wire(r);
    return out;
}

BitString Circuit::eval(const BitString& x) const {
    if (x.width() != input_width_)
        throw UsageError("circuit '" + name_ + "' expects " + std::to_string(input_width_) +
                         " input bits, got " + std::to_string(x.width()));
    return BitString(output_width(), eval_value(x.value()));
}

std::string Circuit::serialize() const {
    std::ostringstream out;
    out << "circuit " << name_ << " in=" << input_width_ << " out=" << output_width() << "\n";
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        out << "g" << i << " = " << gate_op_name(g.op);
        int ar = gate_arity(g.op);
        if (ar >= 1) out << " " << ref_text(g.a);
        if (ar == 2) out << " " << ref_text(g.b);
        out << "\n";
    }
    out << "outputs:";
    for (const Ref& r : outputs_) out << " " << ref_text(r);
    out << "\n";
    return out.str();
}

namespace {

struct LineSplitter {
    std::string_view text;
    size_t pos = 0;
    int line_no = 0;

    bool next(std::string_view& line) {
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            // skip blanks and comments
            size_t first = line.find_first_not_of(" \t");
            if (first == std::string_view::npos) continue;
            if (line[first] == '#') continue;
            return true;
        }
        return false;
    }
};

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

int parse_int(std::string_view s, int line_no, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + std::string(s) + "'");
    return v;
}

Ref parse_ref(std::string_view s, int line_no, int input_width, int gate_index) {
    if (s.size() > 2 && s.substr(0, 2) == "in") {
        int i = parse_int(s.substr(2), line_no, "input index");
        if (i < 0 || i >= input_width)
            throw ParseError("line " + std::to_string(line_no) + ": input reference " + std::string(s) +
                             " out of range for width " + std::to_string(input_width));
        return Ref::input(i);
    }
    if (s.size() > 1 && s[0] == 'g') {
        int i = parse_int(s.substr(1), line_no, "gate index");
        if (i < 0 || i >= gate_index)
            throw ParseError("line " + std::to_string(line_no) + ": forward reference to " + std::string(s));
        return Ref::gate(i);
    }
    throw ParseError("line " + std::to_string(line_no) + ": bad wire reference '" + std::string(s) + "'");
}

}  // namespace

Circuit Circuit::parse(std::string_view text) {
    LineSplitter lines{text};
    std::string_view line;
    if (!lines.next(line)) throw ParseError("empty circuit text");

    auto toks = split_tokens(line);
    if (toks.size() != 4 || toks[0] != "circuit" || toks[2].substr(0, 3) != "in=" || toks[3].substr(0, 4) != "out=")
        throw ParseError("line " + std::to_string(lines.line_no) +
                         ": expected 'circuit <name> in=<w> out=<r>'");
    std::string name(toks[1]);
    int in_w = parse_int(toks[2].substr(3), lines.line_no, "input width");
    int out_w = parse_int(toks[3].substr(4), lines.line_no, "output width");
    if (in_w < 1) throw ParseError("line " + std::to_string(lines.line_no) + ": input width must be >= 1");
    if (out_w < 1) throw ParseError("line " + std::to_string(lines.line_no) + ": output width must be >= 1");

    std::vector<Gate> gates;
    std::vector<Ref> outputs;
    bool saw_outputs = false;
    while (lines.next(line)) {
        toks = split_tokens(line);
        if (!toks.empty() && toks[0] == "outputs:") {
            if (int(toks.size()) - 1 != out_w)
                throw ParseError("line " + std::to_string(lines.line_no) + ": expected " +
                                 std::to_string(out_w) + " output refs, got " + std::to_string(toks.size() - 1));
            for (size_t i = 1; i < toks.size(); ++i)
                outputs.push_back(parse_ref(toks[i], lines.line_no, in_w, int(gates.size())));
            saw_outputs = true;
            break;
        }
        // gate line: g<i> = <OP> <ref> [<ref>]
        if (toks.size() < 3 || toks[1] != "=")
            throw ParseError("line " + std::to_string(lines.line_no) + ": expected 'g<i> = <OP> ...'");
        std::string_view gname = toks[0];
        if (gname.size() < 2 || gname[0] != 'g')
            throw ParseError("line " + std::to_string(lines.line_no) + ": bad gate name '" + std::string(gname) + "'");
        int idx = parse_int(gname.substr(1), lines.line_no, "gate index");
        if (idx != int(gates.size()))
            throw ParseError("line " + std::to_string(lines.line_no) + ": gate index " + std::to_string(idx) +
                             " out of order, expected g" + std::to_string(gates.size()));
        GateOp op;
        if (!parse_gate_op(toks[2], op))
            throw ParseError("line " + std::to_string(lines.line_no) + ": unknown op '" + std::string(toks[2]) + "'");
        int ar = gate_arity(op);
        if (int(toks.size()) - 3 != ar)
            throw ParseError("line " + std::to_string(lines.line_no) + ": op " + std::string(gate_op_name(op)) +
                             " takes " + std::to_string(ar) + " operand(s), got " + std::to_string(toks.size() - 3));
        Gate g;
        g.op = op;
        if (ar >= 1) g.a = parse_ref(toks[3], lines.line_no, in_w, int(gates.size()));
        if (ar == 2) g.b = parse_ref(toks[4], lines.line_no, in_w, int(gates.size()));
        gates.push_back(g);
    }
    if (!saw_outputs) throw ParseError("circuit text missing 'outputs:' line");
    return Circuit(std::move(name), in_w, std::move(gates), std::move(outputs));
}

CircuitBuilder::CircuitBuilder(int input_width, std::string name)
    : name_(std::move(name)), input_width_(input_width) {
    if (input_width_ < 1) throw UsageError("circuit input width must be >= 1");
}

Ref CircuitBuilder::input(int i) const {
    if (i < 0 || i >= input_width_) throw UsageError("builder input index out of range");
    return Ref::input(i);
}

std::vector<Ref> CircuitBuilder::input_span(int from, int count) const {
    std::vector<Ref> refs;
    refs.reserve(size_t(count));
    for (int i = 0; i < count; ++i) refs.push_back(input(from + i));
    return refs;
}

Ref CircuitBuilder::constant_bit(bool b) {
    return op(b ? GateOp::Const1 : GateOp::Const0, Ref{});
}

std::vector<Ref> CircuitBuilder::constant(const BitString& v) {
    std::vector<Ref> refs;
    refs.reserve(size_t(v.width()));
    for (int i = 0; i < v.width(); ++i) refs.push_back(constant_bit(v.bit(i)));
    return refs;
}

Ref CircuitBuilder::op(GateOp o, Ref a, Ref b) {
    int ar = gate_arity(o);
    if (ar >= 1) check_ref(a, input_width_, int(gates_.size()), "builder operand");
    if (ar == 2) check_ref(b, input_width_, int(gates_.size()), "builder operand");
    // Unused operand slots stay defaulted so gate equality is structural.
    Gate g{o, Ref{}, Ref{}};
    if (ar >= 1) g.a = a;
    if (ar == 2) g.b = b;
    gates_.push_back(g);
    return Ref::gate(int(gates_.size()) - 1);
}

Ref CircuitBuilder::equals(const std::vector<Ref>& a, const std::vector<Ref>& b) {
    if (a.size() != b.size() || a.empty()) throw UsageError("equals operands must have equal nonzero length");
    Ref acc{};
    for (size_t i = 0; i < a.size(); ++i) {
        Ref same = not_(xor_(a[i], b[i]));
        acc = (i == 0) ? same : and_(acc, same);
    }
    return acc;
}

Ref CircuitBuilder::less(const std::vector<Ref>& a, const std::vector<Ref>& b) {
    if (a.size() != b.size() || a.empty()) throw UsageError("less operands must have equal nonzero length");
    // MSB-first scan: a<b at the first differing bit with a=0, b=1.
    Ref result{};
    Ref prefix_eq{};
    for (size_t i = 0; i < a.size(); ++i) {
        Ref here = and_(not_(a[i]), b[i]);
        Ref term = (i == 0) ? here : and_(prefix_eq, here);
        result = (i == 0) ? term : or_(result, term);
        if (i + 1 < a.size()) {
            Ref same = not_(xor_(a[i], b[i]));
            prefix_eq = (i == 0) ? same : and_(prefix_eq, same);
        }
    }
    return result;
}

std::vector<Ref> CircuitBuilder::select(Ref sel, const std::vector<Ref>& when0, const std::vector<Ref>& when1) {
    if (when0.size() != when1.size() || when0.empty())
        throw UsageError("select operands must have equal nonzero length");
    Ref nsel = not_(sel);
    std::vector<Ref> out;
    out.reserve(when0.size());
    for (size_t i = 0; i < when0.size(); ++i)
        out.push_back(or_(and_(nsel, when0[i]), and_(sel, when1[i])));
    return out;
}

std::vector<Ref> CircuitBuilder::embed(const Circuit& sub, const std::vector<Ref>& args) {
    if (int(args.size()) != sub.input_width())
        throw UsageError("embed: circuit '" + sub.name() + "' expects " + std::to_string(sub.input_width()) +
                         " args, got " + std::to_string(args.size()));
    int base = int(gates_.size());
    auto remap = [&](const Ref& r) -> Ref {
        if (r.kind == Ref::Kind::Input) return args[size_t(r.index)];
        return Ref::gate(base + r.index);
    };
    for (const Gate& g : sub.gates()) {
        Gate h = g;
        int ar = gate_arity(g.op);
        if (ar >= 1) h.a = remap(g.a);
        if (ar == 2) h.b = remap(g.b);
        gates_.push_back(h);
    }
    std::vector<Ref> outs;
    outs.reserve(sub.outputs().size());
    for (const Ref& r : sub.outputs()) outs.push_back(remap(r));
    return outs;
}

Circuit CircuitBuilder::build(const std::vector<Ref>& outputs) {
    return Circuit(name_, input_width_, gates_, outputs);
}

Circuit identity_circuit(int width) {
    CircuitBuilder b(width, "id");
    return b.build(b.input_span(0, width));
}

Circuit equality_comparator(int width) {
    if (width < 1) throw UsageError("comparator width must be >= 1");
    CircuitBuilder b(2 * width, "eq");
    Ref r = b.equals(b.input_span(0, width), b.input_span(width, width));
    return b.build({r});
}

Circuit mux_circuit(int width) {
    if (width < 1) throw UsageError("mux width must be >= 1");
    CircuitBuilder b(1 + 2 * width, "mux");
    auto out = b.select(b.input(0), b.input_span(1, width), b.input_span(1 + width, width));
    return b.build(out);
}

Circuit const_string_circuit(const BitString& v) {
    // One ignored input bit keeps the circuit well-formed.
    CircuitBuilder b(1, "const");
    return b.build(b.constant(v));
}

}  // namespace tfnp
