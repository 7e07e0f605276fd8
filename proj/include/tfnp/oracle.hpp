#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "tfnp/circuit.hpp"

namespace tfnp {

// Complete output listing indexed by input value (MSB-first integer).
class TruthTable {
  public:
    TruthTable(int input_width, int output_width, std::vector<uint64_t> rows);

    static TruthTable from_function(int input_width, int output_width,
                                    const std::function<uint64_t(uint64_t)>& f);

    int input_width() const { return input_width_; }
    int output_width() const { return output_width_; }
    size_t size() const { return rows_.size(); }
    uint64_t row(uint64_t x) const { return rows_[size_t(x)]; }
    const std::vector<uint64_t>& rows() const { return rows_; }

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

  private:
    int input_width_;
    int output_width_;
    std::vector<uint64_t> rows_;
};

// Uniform access to a total function on fixed-width bit strings, backed by
// either a circuit or an explicit truth table. Both backends honor the same
// contract: same input, same output, always.
class Oracle {
  public:
    Oracle() : backend_(TruthTable(1, 1, {0, 0})) {}
    explicit Oracle(Circuit c) : backend_(std::move(c)) {}
    explicit Oracle(TruthTable t) : backend_(std::move(t)) {}

    int input_width() const;
    int output_width() const;

    BitString eval(const BitString& x) const;
    uint64_t eval_value(uint64_t x) const;  // unchecked fast path

    bool is_circuit() const { return std::holds_alternative<Circuit>(backend_); }
    const Circuit& circuit() const { return std::get<Circuit>(backend_); }
    const TruthTable& table() const { return std::get<TruthTable>(backend_); }

    // Gate count for circuit backends, 0 for tables. Reduction size
    // accounting only applies on the circuit path.
    size_t gate_count() const { return is_circuit() ? circuit().gate_count() : 0; }

    friend bool operator==(const Oracle&, const Oracle&) = default;

  private:
    std::variant<Circuit, TruthTable> backend_;
};

// Sum-of-minterms circuit evaluating identically to the table on every
// input. Gate count <= 2^w * (w + r) + w + 2 for w inputs and r outputs.
Circuit table_to_circuit(const TruthTable& t, std::string name = "t");

// Circuit whose output is f's output bits followed by g's output bits.
// Both oracles must share an input width; table backends are inlined via
// table_to_circuit first.
Circuit concat_outputs(const Oracle& f, const Oracle& g, std::string name = "fg");

// Inlines an oracle application into a builder; table backends are
// converted with table_to_circuit (refusing tables wider than 16 inputs).
std::vector<Ref> embed_oracle(CircuitBuilder& b, const Oracle& o, const std::vector<Ref>& args);

// Materializes any oracle as a truth table (input width capped by the
// caller; intended for desk-scale checks).
TruthTable tabulate(const Oracle& o);

}  // namespace tfnp
