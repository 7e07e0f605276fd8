#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tfnp/config.hpp"
#include "tfnp/oracle.hpp"

namespace tfnp {

enum class ProblemKind { WardSzabo, Pigeon, Categorized, AltCategorized, SinkOfLine };

std::string_view problem_kind_name(ProblemKind k);
std::optional<ProblemKind> problem_kind_from_name(std::string_view s);

// Node-pair edge coloring on K_{2^{2n}}: coloring C takes two 2n-bit nodes
// (4n input bits) to an n-bit color. The anchors a, b, c witness two
// distinct colors at a. basic_required narrows triangle solutions to ones
// meeting the anchor set.
struct WardSzaboInstance {
    int n = 1;
    Oracle coloring;  // 4n -> n
    BitString a, b, c;
    bool basic_required = false;

    int node_width() const { return 2 * n; }
    int color_width() const { return n; }
    BitString color(const BitString& x, const BitString& y) const {
        return coloring.eval(BitString::concat(x, y));
    }
};

struct PigeonInstance {
    int n = 1;
    Oracle f;  // n -> n
    BitString v_star;
};

// Two-stage pigeonhole: partition function p, hole function h, and the
// ordered removed list. injective_flag asserts h is injective on the list.
struct CategorizedPigeonInstance {
    int m1 = 1, m2 = 1;
    Oracle p;  // (m1+m2) -> m1
    Oracle h;  // (m1+m2) -> m2
    std::vector<BitString> removed;
    bool injective_flag = false;

    int element_width() const { return m1 + m2; }
};

// The m1=m2, k=1 variant whose hole-hit solutions satisfy h(x) = p(x)
// instead of referencing the removed element.
struct AltCategorizedPigeonInstance {
    int n = 1;
    Oracle p;  // 2n -> n
    Oracle h;  // 2n -> n
    BitString pi;

    int element_width() const { return 2 * n; }
};

// Successor/predecessor line graph with a list of known sources, each
// satisfying P(s) = s != S(s).
struct LineGraphInstance {
    int n = 1;
    Oracle succ;  // n -> n
    Oracle pred;  // n -> n
    std::vector<BitString> sources;
};

using Instance = std::variant<WardSzaboInstance, PigeonInstance, CategorizedPigeonInstance,
                              AltCategorizedPigeonInstance, LineGraphInstance>;

ProblemKind kind_of(const Instance& inst);
int element_width_of(const Instance& inst);

// ---------------------------------------------------------------------------
// Certificates. Triangles and collisions are canonicalized to sorted payload
// order on construction; verifiers treat them as unordered anyway.

struct Triangle {
    BitString x, y, z;
    Triangle() = default;
    Triangle(BitString a, BitString b, BitString c);
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct SymmetryViolation {
    BitString x, y;
    friend bool operator==(const SymmetryViolation&, const SymmetryViolation&) = default;
};

struct Preimage {
    BitString x;
    friend bool operator==(const Preimage&, const Preimage&) = default;
};

struct Collision {
    BitString x, y;
    Collision() = default;
    Collision(BitString a, BitString b);
    friend bool operator==(const Collision&, const Collision&) = default;
};

struct HoleHit {
    BitString x;
    friend bool operator==(const HoleHit&, const HoleHit&) = default;
};

struct Sink {
    BitString x;
    friend bool operator==(const Sink&, const Sink&) = default;
};

using Solution = std::variant<Triangle, SymmetryViolation, Preimage, Collision, HoleHit, Sink>;

std::string_view solution_variant_name(const Solution& s);
std::string solution_text(const Solution& s);  // e.g. "triangle(00,01,11)"

// ---------------------------------------------------------------------------
// Verdicts are three-valued so harnesses can tell a wrong answer from a
// malformed query. `code` is a stable machine-readable slug.

struct Verdict {
    enum class State { Accepted, Rejected, Usage };
    State state = State::Accepted;
    std::string code;
    std::string detail;

    bool ok() const { return state == State::Accepted; }
    bool usage() const { return state == State::Usage; }

    static Verdict accepted() { return Verdict{State::Accepted, "", ""}; }
    static Verdict rejected(std::string code, std::string detail) {
        return Verdict{State::Rejected, std::move(code), std::move(detail)};
    }
    static Verdict usage_error(std::string code, std::string detail) {
        return Verdict{State::Usage, std::move(code), std::move(detail)};
    }
};

Verdict verify_ward_szabo(const WardSzaboInstance& inst, const Solution& s);
Verdict verify_pigeon(const PigeonInstance& inst, const Solution& s);
Verdict verify_categorized(const CategorizedPigeonInstance& inst, const Solution& s);
Verdict verify_alt_categorized(const AltCategorizedPigeonInstance& inst, const Solution& s);
Verdict verify_sink(const LineGraphInstance& inst, const Solution& s);

// Dispatch on the instance kind.
Verdict verify(const Instance& inst, const Solution& s);

// Checks every type invariant by direct evaluation; rejection names the
// violated clause.
Verdict validate_instance(const Instance& inst, const Caps& caps = default_caps());

}  // namespace tfnp
