#include "tfnp/oracle.hpp"

#include "tfnp/error.hpp"

namespace tfnp {

namespace {

uint64_t width_mask(int width) {
    return width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

}  // namespace

TruthTable::TruthTable(int input_width, int output_width, std::vector<uint64_t> rows)
    : input_width_(input_width), output_width_(output_width), rows_(std::move(rows)) {
    if (input_width_ < 1 || input_width_ > 32)
        throw UsageError("truth table input width must be in 1..32");
    if (output_width_ < 1 || output_width_ > 64)
        throw UsageError("truth table output width must be in 1..64");
    if (rows_.size() != (size_t{1} << input_width_))
        throw UsageError("incomplete table: expected " + std::to_string(size_t{1} << input_width_) +
                         " rows, got " + std::to_string(rows_.size()));
    for (uint64_t v : rows_)
        if ((v & ~width_mask(output_width_)) != 0)
            throw UsageError("table row value does not fit output width");
}

TruthTable TruthTable::from_function(int input_width, int output_width,
                                     const std::function<uint64_t(uint64_t)>& f) {
    std::vector<uint64_t> rows;
    rows.resize(size_t{1} << input_width);
    for (uint64_t x = 0; x < rows.size(); ++x) rows[size_t(x)] = f(x);
    return TruthTable(input_width, output_width, std::move(rows));
}

int Oracle::input_width() const {
    return is_circuit() ? circuit().input_width() : table().input_width();
}

int Oracle::output_width() const {
    return is_circuit() ? circuit().output_width() : table().output_width();
}

BitString Oracle::eval(const BitString& x) const {
    if (x.width() != input_width())
        throw UsageError("oracle expects " + std::to_string(input_width()) + " input bits, got " +
                         std::to_string(x.width()));
    return BitString(output_width(), eval_value(x.value()));
}

uint64_t Oracle::eval_value(uint64_t x) const {
    return is_circuit() ? circuit().eval_value(x) : table().row(x);
}

Circuit table_to_circuit(const TruthTable& t, std::string name) {
    int w = t.input_width();
    int r = t.output_width();
    CircuitBuilder b(w, std::move(name));

    std::vector<Ref> neg;
    neg.reserve(size_t(w));
    for (int i = 0; i < w; ++i) neg.push_back(b.not_(b.input(i)));

    // Minterm per input value, shared across output bits.
    std::vector<Ref> minterm(t.size());
    for (uint64_t x = 0; x < t.size(); ++x) {
        Ref acc{};
        for (int i = 0; i < w; ++i) {
            bool hi = (x >> (w - 1 - i)) & 1;
            Ref lit = hi ? b.input(i) : neg[size_t(i)];
            acc = (i == 0) ? lit : b.and_(acc, lit);
        }
        minterm[size_t(x)] = acc;
    }

    std::vector<Ref> outs;
    outs.reserve(size_t(r));
    for (int j = 0; j < r; ++j) {
        Ref acc{};
        bool any = false;
        for (uint64_t x = 0; x < t.size(); ++x) {
            if ((t.row(x) >> (r - 1 - j)) & 1) {
                acc = any ? b.or_(acc, minterm[size_t(x)]) : minterm[size_t(x)];
                any = true;
            }
        }
        outs.push_back(any ? acc : b.constant_bit(false));
    }
    return b.build(outs);
}

Circuit concat_outputs(const Oracle& f, const Oracle& g, std::string name) {
    if (f.input_width() != g.input_width())
        throw UsageError("concat_outputs: input widths differ (" + std::to_string(f.input_width()) +
                         " vs " + std::to_string(g.input_width()) + ")");
    CircuitBuilder b(f.input_width(), std::move(name));
    auto args = b.input_span(0, f.input_width());
    auto fo = embed_oracle(b, f, args);
    auto go = embed_oracle(b, g, args);
    fo.insert(fo.end(), go.begin(), go.end());
    return b.build(fo);
}

std::vector<Ref> embed_oracle(CircuitBuilder& b, const Oracle& o, const std::vector<Ref>& args) {
    if (o.is_circuit()) return b.embed(o.circuit(), args);
    if (o.input_width() > 16)
        throw UsageError("refusing to inline a truth table with " + std::to_string(o.input_width()) +
                         " input bits as a circuit");
    return b.embed(table_to_circuit(o.table()), args);
}

TruthTable tabulate(const Oracle& o) {
    if (o.input_width() > 24)
        throw UsageError("refusing to tabulate an oracle with " + std::to_string(o.input_width()) +
                         " input bits");
    return TruthTable::from_function(o.input_width(), o.output_width(),
                                     [&](uint64_t x) { return o.eval_value(x); });
}

}  // namespace tfnp
