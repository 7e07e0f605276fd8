#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tfnp/bitstring.hpp"

namespace tfnp {

enum class GateOp { Const0, Const1, Not, And, Or, Xor };

int gate_arity(GateOp op);
std::string_view gate_op_name(GateOp op);

// Wire reference: an input wire or the output of an earlier gate.
struct Ref {
    enum class Kind { Input, Gate };
    Kind kind = Kind::Input;
    int index = 0;

    static Ref input(int i) { return Ref{Kind::Input, i}; }
    static Ref gate(int i) { return Ref{Kind::Gate, i}; }
    friend bool operator==(const Ref&, const Ref&) = default;
};

struct Gate {
    GateOp op = GateOp::Const0;
    Ref a{};
    Ref b{};
    friend bool operator==(const Gate&, const Gate&) = default;
};

// Straight-line boolean program in single-assignment form: every operand
// names an input wire or a strictly earlier gate, so one forward pass
// evaluates the whole program. Immutable after construction.
//
// Text format (UTF-8, line oriented):
//   circuit <name> in=<w> out=<r>
//   g<i> = <OP> <ref> [<ref>]        one line per gate, i counted from 0
//   outputs: <ref> ... <ref>         exactly r refs
// where <ref> is in<j> or g<k> with k strictly less than the gate's index,
// and <OP> is one of CONST0 CONST1 NOT AND OR XOR.
class Circuit {
  public:
    Circuit(std::string name, int input_width, std::vector<Gate> gates, std::vector<Ref> outputs);

    const std::string& name() const { return name_; }
    int input_width() const { return input_width_; }
    int output_width() const { return int(outputs_.size()); }
    size_t gate_count() const { return gates_.size(); }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<Ref>& outputs() const { return outputs_; }

    BitString eval(const BitString& x) const;
    uint64_t eval_value(uint64_t x) const;  // unchecked fast path

    std::string serialize() const;
    static Circuit parse(std::string_view text);

    // Gate-for-gate identity; the name participates so serialized round
    // trips are bit-exact.
    friend bool operator==(const Circuit&, const Circuit&) = default;

  private:
    std::string name_;
    int input_width_;
    std::vector<Gate> gates_;
    std::vector<Ref> outputs_;
};

// Incrementally builds a gate list. Refs returned by builder methods stay
// valid for the lifetime of the builder.
class CircuitBuilder {
  public:
    explicit CircuitBuilder(int input_width, std::string name = "c");

    int input_width() const { return input_width_; }

    Ref input(int i) const;
    std::vector<Ref> input_span(int from, int count) const;

    Ref constant_bit(bool b);
    std::vector<Ref> constant(const BitString& v);

    Ref op(GateOp o, Ref a, Ref b = Ref{});
    Ref not_(Ref a) { return op(GateOp::Not, a); }
    Ref and_(Ref a, Ref b) { return op(GateOp::And, a, b); }
    Ref or_(Ref a, Ref b) { return op(GateOp::Or, a, b); }
    Ref xor_(Ref a, Ref b) { return op(GateOp::Xor, a, b); }

    // 1 iff the two equal-length operand vectors carry equal values.
    Ref equals(const std::vector<Ref>& a, const std::vector<Ref>& b);
    // 1 iff a < b as MSB-first unsigned values.
    Ref less(const std::vector<Ref>& a, const std::vector<Ref>& b);
    // Bitwise select: sel=0 yields when0, sel=1 yields when1.
    std::vector<Ref> select(Ref sel, const std::vector<Ref>& when0, const std::vector<Ref>& when1);
    // Inlines sub with its input wires bound to args; returns its outputs.
    std::vector<Ref> embed(const Circuit& sub, const std::vector<Ref>& args);

    size_t gate_count() const { return gates_.size(); }
    Circuit build(const std::vector<Ref>& outputs);

  private:
    std::string name_;
    int input_width_;
    std::vector<Gate> gates_;
};

// Stock gadgets. Measured gate counts stay within the bounds noted here;
// the unit tests pin them.
Circuit identity_circuit(int width);                    // width gates... none: outputs are input refs (0 gates)
Circuit equality_comparator(int width);                 // in=2w out=1, <= 3w gates
Circuit mux_circuit(int width);                         // in=1+2w (sel,a,b) out=w, <= 3w+1 gates; sel=0 -> a
Circuit const_string_circuit(const BitString& v);       // in=1 (ignored), w gates

}  // namespace tfnp
