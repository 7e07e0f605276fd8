#include "tfnp/problems.hpp"

#include <algorithm>
#include <set>

#include "tfnp/error.hpp"

namespace tfnp {

std::string_view problem_kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::WardSzabo: return "ward-szabo";
        case ProblemKind::Pigeon: return "pigeon";
        case ProblemKind::Categorized: return "categorized-pigeon";
        case ProblemKind::AltCategorized: return "alt-categorized-pigeon";
        case ProblemKind::SinkOfLine: return "sink-of-line";
    }
    return "?";
}

std::optional<ProblemKind> problem_kind_from_name(std::string_view s) {
    if (s == "ward-szabo") return ProblemKind::WardSzabo;
    if (s == "pigeon") return ProblemKind::Pigeon;
    if (s == "categorized-pigeon") return ProblemKind::Categorized;
    if (s == "alt-categorized-pigeon") return ProblemKind::AltCategorized;
    if (s == "sink-of-line") return ProblemKind::SinkOfLine;
    return std::nullopt;
}

ProblemKind kind_of(const Instance& inst) {
    struct V {
        ProblemKind operator()(const WardSzaboInstance&) { return ProblemKind::WardSzabo; }
        ProblemKind operator()(const PigeonInstance&) { return ProblemKind::Pigeon; }
        ProblemKind operator()(const CategorizedPigeonInstance&) { return ProblemKind::Categorized; }
        ProblemKind operator()(const AltCategorizedPigeonInstance&) { return ProblemKind::AltCategorized; }
        ProblemKind operator()(const LineGraphInstance&) { return ProblemKind::SinkOfLine; }
    };
    return std::visit(V{}, inst);
}

int element_width_of(const Instance& inst) {
    struct V {
        int operator()(const WardSzaboInstance& i) { return i.node_width(); }
        int operator()(const PigeonInstance& i) { return i.n; }
        int operator()(const CategorizedPigeonInstance& i) { return i.element_width(); }
        int operator()(const AltCategorizedPigeonInstance& i) { return i.element_width(); }
        int operator()(const LineGraphInstance& i) { return i.n; }
    };
    return std::visit(V{}, inst);
}

Triangle::Triangle(BitString a, BitString b, BitString c) : x(a), y(b), z(c) {
    if (x.width() == y.width() && y.width() == z.width()) {
        if (y < x) std::swap(x, y);
        if (z < y) std::swap(y, z);
        if (y < x) std::swap(x, y);
    }
}

Collision::Collision(BitString a, BitString b) : x(a), y(b) {
    if (x.width() == y.width() && y < x) std::swap(x, y);
}

std::string_view solution_variant_name(const Solution& s) {
    struct V {
        std::string_view operator()(const Triangle&) { return "triangle"; }
        std::string_view operator()(const SymmetryViolation&) { return "symmetry-violation"; }
        std::string_view operator()(const Preimage&) { return "preimage"; }
        std::string_view operator()(const Collision&) { return "collision"; }
        std::string_view operator()(const HoleHit&) { return "hole-hit"; }
        std::string_view operator()(const Sink&) { return "sink"; }
    };
    return std::visit(V{}, s);
}

std::string solution_text(const Solution& s) {
    struct V {
        std::string operator()(const Triangle& t) {
            return "triangle(" + t.x.str() + "," + t.y.str() + "," + t.z.str() + ")";
        }
        std::string operator()(const SymmetryViolation& v) {
            return "symmetry-violation(" + v.x.str() + "," + v.y.str() + ")";
        }
        std::string operator()(const Preimage& p) { return "preimage(" + p.x.str() + ")"; }
        std::string operator()(const Collision& c) {
            return "collision(" + c.x.str() + "," + c.y.str() + ")";
        }
        std::string operator()(const HoleHit& h) { return "hole-hit(" + h.x.str() + ")"; }
        std::string operator()(const Sink& k) { return "sink(" + k.x.str() + ")"; }
    };
    return std::visit(V{}, s);
}

namespace {

Verdict width_usage(const char* what, int want, int got) {
    return Verdict::usage_error("width-mismatch", std::string(what) + " width " + std::to_string(got) +
                                                      ", instance expects " + std::to_string(want));
}

Verdict wrong_variant(const Solution& s, const char* accepted) {
    return Verdict::usage_error("wrong-variant", std::string(solution_variant_name(s)) +
                                                     " not accepted here; expected " + accepted);
}

bool contains(const std::vector<BitString>& list, const BitString& x) {
    return std::find(list.begin(), list.end(), x) != list.end();
}

// Bichromatic pattern with a distinguished apex u: C(u,v) = C(u,w) != C(v,w).
bool apex_pattern(const WardSzaboInstance& inst, const BitString& u, const BitString& v,
                  const BitString& w) {
    BitString uv = inst.color(u, v);
    if (uv != inst.color(u, w)) return false;
    return uv != inst.color(v, w);
}

}  // namespace

Verdict verify_ward_szabo(const WardSzaboInstance& inst, const Solution& s) {
    const int w = inst.node_width();
    if (const Triangle* t = std::get_if<Triangle>(&s)) {
        if (t->x.width() != w || t->y.width() != w || t->z.width() != w)
            return width_usage("triangle node", w, t->x.width());
        if (t->x == t->y || t->y == t->z || t->x == t->z)
            return Verdict::rejected("not-distinct", "triangle vertices must be pairwise distinct");
        // The certificate is an unordered vertex set; try all three apex
        // assignments of the pattern C(x,y) = C(x,z) != C(y,z).
        bool bichromatic = apex_pattern(inst, t->x, t->y, t->z) ||
                           apex_pattern(inst, t->y, t->z, t->x) ||
                           apex_pattern(inst, t->z, t->x, t->y);
        if (!bichromatic)
            return Verdict::rejected("not-bichromatic", "no apex assignment gives two equal and one differing color");
        if (inst.basic_required) {
            bool touches = false;
            for (const BitString* v : {&t->x, &t->y, &t->z})
                if (*v == inst.a || *v == inst.b || *v == inst.c) touches = true;
            if (!touches)
                return Verdict::rejected("not-basic", "triangle does not meet the anchor set");
        }
        return Verdict::accepted();
    }
    if (const SymmetryViolation* v = std::get_if<SymmetryViolation>(&s)) {
        if (v->x.width() != w || v->y.width() != w) return width_usage("node", w, v->x.width());
        if (v->x == v->y) return Verdict::rejected("not-distinct", "violation nodes must differ");
        if (inst.color(v->x, v->y) == inst.color(v->y, v->x))
            return Verdict::rejected("pair-symmetric", "C(x,y) = C(y,x) for the given pair");
        return Verdict::accepted();
    }
    return wrong_variant(s, "triangle or symmetry-violation");
}

Verdict verify_pigeon(const PigeonInstance& inst, const Solution& s) {
    if (const Preimage* p = std::get_if<Preimage>(&s)) {
        if (p->x.width() != inst.n) return width_usage("element", inst.n, p->x.width());
        if (inst.f.eval(p->x) != inst.v_star)
            return Verdict::rejected("preimage-mismatch", "f(x) != v*");
        return Verdict::accepted();
    }
    if (const Collision* c = std::get_if<Collision>(&s)) {
        if (c->x.width() != inst.n || c->y.width() != inst.n)
            return width_usage("element", inst.n, c->x.width());
        if (c->x == c->y) return Verdict::rejected("not-distinct", "collision elements must differ");
        if (inst.f.eval(c->x) != inst.f.eval(c->y))
            return Verdict::rejected("values-differ", "f(x) != f(y)");
        return Verdict::accepted();
    }
    return wrong_variant(s, "preimage or collision");
}

Verdict verify_categorized(const CategorizedPigeonInstance& inst, const Solution& s) {
    const int w = inst.element_width();
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) {
        if (h->x.width() != w) return width_usage("element", w, h->x.width());
        if (contains(inst.removed, h->x))
            return Verdict::rejected("is-removed-element", h->x.str() + " is a removed element");
        BitString hx = inst.h.eval(h->x);
        for (const BitString& pi : inst.removed)
            if (inst.h.eval(pi) == hx) return Verdict::accepted();
        return Verdict::rejected("not-in-hole-set", "h(x) is not in h(removed)");
    }
    if (const Collision* c = std::get_if<Collision>(&s)) {
        if (c->x.width() != w || c->y.width() != w) return width_usage("element", w, c->x.width());
        if (c->x == c->y) return Verdict::rejected("not-distinct", "collision elements must differ");
        if (contains(inst.removed, c->x) || contains(inst.removed, c->y))
            return Verdict::rejected("is-removed-element", "collision element is removed");
        if (inst.p.eval(c->x) != inst.p.eval(c->y))
            return Verdict::rejected("partition-differs", "p(x) != p(y)");
        if (inst.h.eval(c->x) != inst.h.eval(c->y))
            return Verdict::rejected("hole-differs", "h(x) != h(y)");
        return Verdict::accepted();
    }
    return wrong_variant(s, "hole-hit or collision");
}

Verdict verify_alt_categorized(const AltCategorizedPigeonInstance& inst, const Solution& s) {
    const int w = inst.element_width();
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) {
        if (h->x.width() != w) return width_usage("element", w, h->x.width());
        if (h->x == inst.pi)
            return Verdict::rejected("is-removed-element", h->x.str() + " is the removed element");
        if (inst.h.eval(h->x) != inst.p.eval(h->x))
            return Verdict::rejected("hole-neq-partition", "h(x) != p(x)");
        return Verdict::accepted();
    }
    if (const Collision* c = std::get_if<Collision>(&s)) {
        if (c->x.width() != w || c->y.width() != w) return width_usage("element", w, c->x.width());
        if (c->x == c->y) return Verdict::rejected("not-distinct", "collision elements must differ");
        if (c->x == inst.pi || c->y == inst.pi)
            return Verdict::rejected("is-removed-element", "collision element is the removed element");
        if (inst.p.eval(c->x) != inst.p.eval(c->y))
            return Verdict::rejected("partition-differs", "p(x) != p(y)");
        if (inst.h.eval(c->x) != inst.h.eval(c->y))
            return Verdict::rejected("hole-differs", "h(x) != h(y)");
        return Verdict::accepted();
    }
    return wrong_variant(s, "hole-hit or collision");
}

Verdict verify_sink(const LineGraphInstance& inst, const Solution& s) {
    if (const Sink* k = std::get_if<Sink>(&s)) {
        if (k->x.width() != inst.n) return width_usage("node", inst.n, k->x.width());
        if (inst.pred.eval(inst.succ.eval(k->x)) == k->x)
            return Verdict::rejected("not-a-sink", "P(S(x)) = x");
        return Verdict::accepted();
    }
    return wrong_variant(s, "sink");
}

Verdict verify(const Instance& inst, const Solution& s) {
    struct V {
        const Solution& s;
        Verdict operator()(const WardSzaboInstance& i) { return verify_ward_szabo(i, s); }
        Verdict operator()(const PigeonInstance& i) { return verify_pigeon(i, s); }
        Verdict operator()(const CategorizedPigeonInstance& i) { return verify_categorized(i, s); }
        Verdict operator()(const AltCategorizedPigeonInstance& i) { return verify_alt_categorized(i, s); }
        Verdict operator()(const LineGraphInstance& i) { return verify_sink(i, s); }
    };
    return std::visit(V{s}, inst);
}

namespace {

Verdict validate_ws(const WardSzaboInstance& i) {
    if (i.n < 1) return Verdict::rejected("bad-params", "n must be >= 1");
    if (i.coloring.input_width() != 4 * i.n || i.coloring.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "coloring oracle must map 4n bits to n bits");
    for (const BitString* v : {&i.a, &i.b, &i.c})
        if (v->width() != i.node_width())
            return Verdict::rejected("width-mismatch", "anchor width must be 2n");
    if (i.a == i.b || i.b == i.c || i.a == i.c)
        return Verdict::rejected("anchors-not-distinct", "a, b, c must be pairwise distinct");
    if (i.color(i.a, i.b) == i.color(i.a, i.c))
        return Verdict::rejected("anchor-colors-equal", "C(a,b) = C(a,c)");
    return Verdict::accepted();
}

Verdict validate_pigeon(const PigeonInstance& i) {
    if (i.n < 1) return Verdict::rejected("bad-params", "n must be >= 1");
    if (i.f.input_width() != i.n || i.f.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "f must map n bits to n bits");
    if (i.v_star.width() != i.n)
        return Verdict::rejected("width-mismatch", "v* width must be n");
    return Verdict::accepted();
}

Verdict validate_categorized(const CategorizedPigeonInstance& i, const Caps& caps) {
    if (i.m1 < 1 || i.m2 < 1) return Verdict::rejected("bad-params", "m1, m2 must be >= 1");
    const int w = i.element_width();
    if (i.p.input_width() != w || i.p.output_width() != i.m1)
        return Verdict::rejected("width-mismatch", "p must map m1+m2 bits to m1 bits");
    if (i.h.input_width() != w || i.h.output_width() != i.m2)
        return Verdict::rejected("width-mismatch", "h must map m1+m2 bits to m2 bits");
    const size_t k = i.removed.size();
    if (k < 1) return Verdict::rejected("removed-count", "removed list must not be empty");
    if (i.m1 < 63 && k >= (size_t{1} << i.m1))
        return Verdict::rejected("removed-count", "k must be < 2^m1");
    if (k > size_t(caps.max_removed))
        return Verdict::rejected("removed-cap", "removed list exceeds the configured cap");
    std::set<BitString> seen;
    for (const BitString& pi : i.removed) {
        if (pi.width() != w) return Verdict::rejected("width-mismatch", "removed element width must be m1+m2");
        if (!seen.insert(pi).second)
            return Verdict::rejected("removed-duplicate", "removed element " + pi.str() + " repeats");
    }
    if (i.injective_flag) {
        std::set<BitString> holes;
        for (const BitString& pi : i.removed)
            if (!holes.insert(i.h.eval(pi)).second)
                return Verdict::rejected("not-injective-on-removed",
                                         "h collides on removed elements despite the injective flag");
    }
    return Verdict::accepted();
}

Verdict validate_alt(const AltCategorizedPigeonInstance& i) {
    if (i.n < 1) return Verdict::rejected("bad-params", "n must be >= 1");
    const int w = i.element_width();
    if (i.p.input_width() != w || i.p.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "p must map 2n bits to n bits");
    if (i.h.input_width() != w || i.h.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "h must map 2n bits to n bits");
    if (i.pi.width() != w) return Verdict::rejected("width-mismatch", "removed element width must be 2n");
    return Verdict::accepted();
}

Verdict validate_lines(const LineGraphInstance& i, const Caps& caps) {
    if (i.n < 1) return Verdict::rejected("bad-params", "n must be >= 1");
    if (i.succ.input_width() != i.n || i.succ.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "S must map n bits to n bits");
    if (i.pred.input_width() != i.n || i.pred.output_width() != i.n)
        return Verdict::rejected("width-mismatch", "P must map n bits to n bits");
    if (i.sources.empty()) return Verdict::rejected("sources-empty", "at least one known source required");
    if (i.sources.size() > size_t(caps.max_sources))
        return Verdict::rejected("source-cap", "source list exceeds the configured cap");
    std::set<BitString> seen;
    for (const BitString& s : i.sources) {
        if (s.width() != i.n) return Verdict::rejected("width-mismatch", "source width must be n");
        if (!seen.insert(s).second)
            return Verdict::rejected("source-duplicate", "source " + s.str() + " repeats");
        if (i.pred.eval(s) != s)
            return Verdict::rejected("source-pred", "P(s) != s for source " + s.str());
        if (i.succ.eval(s) == s)
            return Verdict::rejected("source-succ", "S(s) = s for source " + s.str());
    }
    return Verdict::accepted();
}

}  // namespace

Verdict validate_instance(const Instance& inst, const Caps& caps) {
    struct V {
        const Caps& caps;
        Verdict operator()(const WardSzaboInstance& i) { return validate_ws(i); }
        Verdict operator()(const PigeonInstance& i) { return validate_pigeon(i); }
        Verdict operator()(const CategorizedPigeonInstance& i) { return validate_categorized(i, caps); }
        Verdict operator()(const AltCategorizedPigeonInstance& i) { return validate_alt(i); }
        Verdict operator()(const LineGraphInstance& i) { return validate_lines(i, caps); }
    };
    return std::visit(V{caps}, inst);
}

}  // namespace tfnp
