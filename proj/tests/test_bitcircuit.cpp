#include <doctest.h>

#include "fixtures.hpp"
#include "tfnp/error.hpp"
#include "tfnp/oracle.hpp"
#include "tfnp/rng.hpp"

using namespace tfnp;
using fixtures::bits;

TEST_CASE("bit strings render MSB-first and order lexicographically") {
    BitString b(4, 0b1010);
    CHECK(b.str() == "1010");
    CHECK(b.bit(0) == true);
    CHECK(b.bit(3) == false);
    CHECK(BitString::parse("1010") == b);
    CHECK(b.prefix(2) == bits("10"));
    CHECK(b.suffix(2) == bits("10"));
    CHECK(BitString::concat(bits("10"), bits("1")) == bits("101"));

    CHECK(bits("01") < bits("10"));
    CHECK(bits("0011") < bits("0100"));
    CHECK_THROWS_AS((void)(bits("01") < bits("011")), UsageError);
    CHECK_THROWS_AS(BitString(0, 0), UsageError);
    CHECK_THROWS_AS(BitString(2, 4), UsageError);
    CHECK_THROWS_AS(BitString::parse("10x"), ParseError);
}

TEST_CASE("circuit evaluation: identity, constants, xor") {
    Circuit id = identity_circuit(2);
    CHECK(id.eval(bits("10")) == bits("10"));
    CHECK(id.eval(bits("01")) == bits("01"));

    CircuitBuilder cb(2, "zero");
    Circuit zero = cb.build({cb.constant_bit(false)});
    CHECK(zero.eval(bits("10")) == bits("0"));
    CHECK(zero.eval(bits("11")) == bits("0"));

    CircuitBuilder xb(2, "x");
    Circuit xr = xb.build({xb.xor_(xb.input(0), xb.input(1))});
    CHECK(xr.eval(bits("10")) == bits("1"));
    CHECK(xr.eval(bits("00")) == bits("0"));
    CHECK(xr.eval(bits("11")) == bits("0"));

    SUBCASE("repeated evaluation is pure") {
        for (int i = 0; i < 4; ++i) CHECK(xr.eval_value(2) == 1);
    }
}

TEST_CASE("equality comparator") {
    Circuit eq = equality_comparator(2);
    CHECK(eq.eval(bits("1010")) == bits("1"));
    CHECK(eq.eval(bits("1001")) == bits("0"));

    SUBCASE("agrees with == exhaustively up to width 3") {
        for (int w = 1; w <= 3; ++w) {
            Circuit c = equality_comparator(w);
            for (uint64_t a = 0; a < (uint64_t{1} << w); ++a)
                for (uint64_t b = 0; b < (uint64_t{1} << w); ++b)
                    CHECK(c.eval_value((a << w) | b) == (a == b ? 1 : 0));
        }
    }
    SUBCASE("gate count within 3w") {
        for (int w = 1; w <= 8; ++w) CHECK(equality_comparator(w).gate_count() <= size_t(3 * w));
    }
}

TEST_CASE("mux selects between operands") {
    Circuit m = mux_circuit(2);
    // layout: sel, a(2), b(2)
    CHECK(m.eval(bits("00111")) == bits("01"));
    CHECK(m.eval(bits("10111")) == bits("11"));
    CHECK(m.eval(bits("11000")) == bits("00"));
    for (int w = 1; w <= 8; ++w) CHECK(mux_circuit(w).gate_count() <= size_t(3 * w + 1));
}

TEST_CASE("const_string ignores its input") {
    Circuit c = const_string_circuit(bits("101"));
    CHECK(c.eval(bits("0")) == bits("101"));
    CHECK(c.eval(bits("1")) == bits("101"));
    CHECK(c.gate_count() == 3);
}

TEST_CASE("table_to_circuit evaluates identically to the table") {
    SUBCASE("fixture F1 coloring") {
        const Oracle& c = fixtures::f1().coloring;
        Circuit circ = table_to_circuit(c.table());
        CHECK(circ.eval(bits("0010")) == bits("1"));  // C(00,10) = 1
        for (uint64_t x = 0; x < 16; ++x) CHECK(circ.eval_value(x) == c.eval_value(x));
        // the serialized form evaluates the same way after a parse
        Circuit reparsed = Circuit::parse(circ.serialize());
        CHECK(reparsed.eval(bits("0110")) == bits("1"));  // C(01,10) = 1
    }
    SUBCASE("random tables up to width 8") {
        Xorshift64Star rng(42);
        for (int w = 1; w <= 8; ++w) {
            int r = 1 + int(rng.next_below(4));
            TruthTable t = TruthTable::from_function(w, r, [&](uint64_t) {
                return rng.next_below(uint64_t{1} << r);
            });
            Circuit circ = table_to_circuit(t);
            for (uint64_t x = 0; x < t.size(); ++x) CHECK(circ.eval_value(x) == t.row(x));
            CHECK(circ.gate_count() <= (size_t{1} << w) * size_t(w + r) + size_t(w) + 2);
        }
    }
}

TEST_CASE("concat_outputs juxtaposes output bits") {
    SUBCASE("re-assembles a 2-bit input from its bits") {
        CircuitBuilder ub(2, "hi");
        Circuit upper = ub.build({ub.input(0)});
        CircuitBuilder lb(2, "lo");
        Circuit lower = lb.build({lb.input(1)});
        Circuit both = concat_outputs(Oracle(upper), Oracle(lower));
        CHECK(both.eval(bits("01")) == bits("01"));
        CHECK(both.eval(bits("10")) == bits("10"));
    }
    SUBCASE("const1 next to negation") {
        CircuitBuilder cb(1, "one");
        Circuit one = cb.build({cb.constant_bit(true)});
        CircuitBuilder nb(1, "not");
        Circuit neg = nb.build({nb.not_(nb.input(0))});
        Circuit both = concat_outputs(Oracle(one), Oracle(neg));
        CHECK(both.eval(bits("0")) == bits("11"));
        CHECK(both.eval(bits("1")) == bits("10"));
    }
    SUBCASE("fixture p,h tables at x=10") {
        auto r1 = fixtures::r1();
        Circuit f = concat_outputs(r1.p, r1.h);
        CHECK(f.eval(bits("10")) == bits("11"));
    }
    SUBCASE("width mismatch is a usage error") {
        CHECK_THROWS_AS(concat_outputs(Oracle(identity_circuit(2)), Oracle(identity_circuit(3))),
                        UsageError);
    }
    SUBCASE("gate count is the sum of the parts") {
        CircuitBuilder ab(3, "a");
        Circuit a = ab.build({ab.and_(ab.input(0), ab.input(1))});
        CircuitBuilder bb(3, "b");
        Circuit b = bb.build({bb.xor_(bb.input(1), bb.input(2))});
        CHECK(concat_outputs(Oracle(a), Oracle(b)).gate_count() == a.gate_count() + b.gate_count());
    }
}

TEST_CASE("serialize/parse round trip is gate-for-gate") {
    Circuit eq = equality_comparator(2);
    Circuit back = Circuit::parse(eq.serialize());
    CHECK(back == eq);
    CHECK(back.serialize() == eq.serialize());

    SUBCASE("random circuits round trip byte-exact") {
        Xorshift64Star rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            int w = 1 + int(rng.next_below(6));
            CircuitBuilder b(w, "r" + std::to_string(trial));
            std::vector<Ref> pool;
            for (int i = 0; i < w; ++i) pool.push_back(b.input(i));
            for (int g = 0; g < 12; ++g) {
                GateOp op = static_cast<GateOp>(rng.next_below(6));
                Ref a = pool[size_t(rng.next_below(pool.size()))];
                Ref c = pool[size_t(rng.next_below(pool.size()))];
                pool.push_back(b.op(op, a, c));
            }
            Circuit circ = b.build({pool.back(), pool.front()});
            std::string text = circ.serialize();
            CHECK(Circuit::parse(text) == circ);
            CHECK(Circuit::parse(text).serialize() == text);
        }
    }
}

TEST_CASE("circuit parser rejects malformed text with line numbers") {
    SUBCASE("forward reference") {
        auto text = "circuit c in=1 out=1\ng0 = NOT g1\ng1 = NOT in0\noutputs: g0\n";
        CHECK_THROWS_WITH_AS(Circuit::parse(text), "line 2: forward reference to g1", ParseError);
    }
    SUBCASE("unknown op") {
        auto text = "circuit c in=1 out=1\ng0 = NAND in0 in0\noutputs: g0\n";
        CHECK_THROWS_WITH_AS(Circuit::parse(text), "line 2: unknown op 'NAND'", ParseError);
    }
    SUBCASE("arity error") {
        auto text = "circuit c in=1 out=1\ng0 = NOT in0 in0\noutputs: g0\n";
        CHECK_THROWS_AS(Circuit::parse(text), ParseError);
    }
    SUBCASE("input reference out of width") {
        auto text = "circuit c in=1 out=1\ng0 = NOT in1\noutputs: g0\n";
        CHECK_THROWS_AS(Circuit::parse(text), ParseError);
    }
    SUBCASE("wrong output count") {
        auto text = "circuit c in=1 out=2\ng0 = NOT in0\noutputs: g0\n";
        CHECK_THROWS_AS(Circuit::parse(text), ParseError);
    }
    SUBCASE("missing outputs line") {
        CHECK_THROWS_AS(Circuit::parse("circuit c in=1 out=1\ng0 = NOT in0\n"), ParseError);
    }
}

TEST_CASE("oracle backends agree on the evaluation contract") {
    Xorshift64Star rng(99);
    TruthTable t = TruthTable::from_function(4, 2, [&](uint64_t) { return rng.next_below(4); });
    Oracle table_backed{t};
    Oracle circuit_backed{table_to_circuit(t)};
    for (uint64_t x = 0; x < 16; ++x)
        CHECK(table_backed.eval_value(x) == circuit_backed.eval_value(x));
    CHECK_THROWS_AS(table_backed.eval(bits("001")), UsageError);
    CHECK_THROWS_AS(TruthTable(2, 1, {0, 1, 0}), UsageError);  // incomplete table
}
