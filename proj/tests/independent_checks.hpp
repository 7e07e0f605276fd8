#pragma once

// Independent certificate checkers and exhaustive certificate enumeration,
// written directly against the problem definitions. These never call the
// library verifiers; the suites cross-check the two against each other and
// use the enumeration as the ground truth for pullback soundness.

#include <optional>
#include <vector>

#include "tfnp/problems.hpp"

namespace indep {

using namespace tfnp;

inline uint64_t edge_color(const WardSzaboInstance& i, uint64_t u, uint64_t v) {
    return i.coloring.eval_value((u << i.node_width()) | v);
}

inline bool triangle_ok(const WardSzaboInstance& i, uint64_t x, uint64_t y, uint64_t z) {
    if (x == y || y == z || x == z) return false;
    uint64_t tri[3] = {x, y, z};
    for (int apex = 0; apex < 3; ++apex) {
        uint64_t u = tri[apex], v = tri[(apex + 1) % 3], w = tri[(apex + 2) % 3];
        if (edge_color(i, u, v) == edge_color(i, u, w) && edge_color(i, u, v) != edge_color(i, v, w))
            return true;
    }
    return false;
}

inline bool basic_triangle_ok(const WardSzaboInstance& i, uint64_t x, uint64_t y, uint64_t z) {
    if (!triangle_ok(i, x, y, z)) return false;
    if (!i.basic_required) return true;
    for (uint64_t v : {x, y, z})
        if (v == i.a.value() || v == i.b.value() || v == i.c.value()) return true;
    return false;
}

inline bool symviol_ok(const WardSzaboInstance& i, uint64_t x, uint64_t y) {
    return x != y && edge_color(i, x, y) != edge_color(i, y, x);
}

inline bool pigeon_preimage_ok(const PigeonInstance& i, uint64_t x) {
    return i.f.eval_value(x) == i.v_star.value();
}

inline bool pigeon_collision_ok(const PigeonInstance& i, uint64_t x, uint64_t y) {
    return x != y && i.f.eval_value(x) == i.f.eval_value(y);
}

inline bool cat_removed(const CategorizedPigeonInstance& i, uint64_t x) {
    for (const BitString& pi : i.removed)
        if (pi.value() == x) return true;
    return false;
}

inline bool cat_holehit_ok(const CategorizedPigeonInstance& i, uint64_t x) {
    if (cat_removed(i, x)) return false;
    for (const BitString& pi : i.removed)
        if (i.h.eval_value(x) == i.h.eval_value(pi.value())) return true;
    return false;
}

inline bool cat_collision_ok(const CategorizedPigeonInstance& i, uint64_t x, uint64_t y) {
    if (x == y || cat_removed(i, x) || cat_removed(i, y)) return false;
    return i.p.eval_value(x) == i.p.eval_value(y) && i.h.eval_value(x) == i.h.eval_value(y);
}

inline bool alt_holehit_ok(const AltCategorizedPigeonInstance& i, uint64_t x) {
    return x != i.pi.value() && i.h.eval_value(x) == i.p.eval_value(x);
}

inline bool alt_collision_ok(const AltCategorizedPigeonInstance& i, uint64_t x, uint64_t y) {
    if (x == y || x == i.pi.value() || y == i.pi.value()) return false;
    return i.p.eval_value(x) == i.p.eval_value(y) && i.h.eval_value(x) == i.h.eval_value(y);
}

inline bool sink_ok(const LineGraphInstance& i, uint64_t x) {
    return i.pred.eval_value(i.succ.eval_value(x)) != x;
}

// Every certificate the definitions accept, for desk-scale domains.
inline std::vector<Solution> enumerate_certs(const Instance& inst) {
    std::vector<Solution> out;
    if (const auto* ws = std::get_if<WardSzaboInstance>(&inst)) {
        const int w = ws->node_width();
        const uint64_t nodes = uint64_t{1} << w;
        for (uint64_t x = 0; x < nodes; ++x)
            for (uint64_t y = x + 1; y < nodes; ++y) {
                if (symviol_ok(*ws, x, y))
                    out.push_back(SymmetryViolation{BitString(w, x), BitString(w, y)});
                for (uint64_t z = y + 1; z < nodes; ++z)
                    if (basic_triangle_ok(*ws, x, y, z))
                        out.push_back(Triangle(BitString(w, x), BitString(w, y), BitString(w, z)));
            }
        return out;
    }
    if (const auto* pg = std::get_if<PigeonInstance>(&inst)) {
        const uint64_t domain = uint64_t{1} << pg->n;
        for (uint64_t x = 0; x < domain; ++x) {
            if (pigeon_preimage_ok(*pg, x)) out.push_back(Preimage{BitString(pg->n, x)});
            for (uint64_t y = x + 1; y < domain; ++y)
                if (pigeon_collision_ok(*pg, x, y))
                    out.push_back(Collision(BitString(pg->n, x), BitString(pg->n, y)));
        }
        return out;
    }
    if (const auto* cat = std::get_if<CategorizedPigeonInstance>(&inst)) {
        const int w = cat->element_width();
        const uint64_t domain = uint64_t{1} << w;
        for (uint64_t x = 0; x < domain; ++x) {
            if (cat_holehit_ok(*cat, x)) out.push_back(HoleHit{BitString(w, x)});
            for (uint64_t y = x + 1; y < domain; ++y)
                if (cat_collision_ok(*cat, x, y)) out.push_back(Collision(BitString(w, x), BitString(w, y)));
        }
        return out;
    }
    if (const auto* alt = std::get_if<AltCategorizedPigeonInstance>(&inst)) {
        const int w = alt->element_width();
        const uint64_t domain = uint64_t{1} << w;
        for (uint64_t x = 0; x < domain; ++x) {
            if (alt_holehit_ok(*alt, x)) out.push_back(HoleHit{BitString(w, x)});
            for (uint64_t y = x + 1; y < domain; ++y)
                if (alt_collision_ok(*alt, x, y)) out.push_back(Collision(BitString(w, x), BitString(w, y)));
        }
        return out;
    }
    const auto& line = std::get<LineGraphInstance>(inst);
    const uint64_t domain = uint64_t{1} << line.n;
    for (uint64_t x = 0; x < domain; ++x)
        if (sink_ok(line, x)) out.push_back(Sink{BitString(line.n, x)});
    return out;
}

// The independent view of whether a given certificate is good, matching the
// wrong-variant/width conventions of the library only loosely: returns
// false on a mismatched variant.
inline bool cert_ok(const Instance& inst, const Solution& s) {
    if (const auto* ws = std::get_if<WardSzaboInstance>(&inst)) {
        if (const auto* t = std::get_if<Triangle>(&s))
            return basic_triangle_ok(*ws, t->x.value(), t->y.value(), t->z.value());
        if (const auto* v = std::get_if<SymmetryViolation>(&s))
            return symviol_ok(*ws, v->x.value(), v->y.value());
        return false;
    }
    if (const auto* pg = std::get_if<PigeonInstance>(&inst)) {
        if (const auto* p = std::get_if<Preimage>(&s)) return pigeon_preimage_ok(*pg, p->x.value());
        if (const auto* c = std::get_if<Collision>(&s))
            return pigeon_collision_ok(*pg, c->x.value(), c->y.value());
        return false;
    }
    if (const auto* cat = std::get_if<CategorizedPigeonInstance>(&inst)) {
        if (const auto* h = std::get_if<HoleHit>(&s)) return cat_holehit_ok(*cat, h->x.value());
        if (const auto* c = std::get_if<Collision>(&s))
            return cat_collision_ok(*cat, c->x.value(), c->y.value());
        return false;
    }
    if (const auto* alt = std::get_if<AltCategorizedPigeonInstance>(&inst)) {
        if (const auto* h = std::get_if<HoleHit>(&s)) return alt_holehit_ok(*alt, h->x.value());
        if (const auto* c = std::get_if<Collision>(&s))
            return alt_collision_ok(*alt, c->x.value(), c->y.value());
        return false;
    }
    const auto& line = std::get<LineGraphInstance>(inst);
    if (const auto* k = std::get_if<Sink>(&s)) return sink_ok(line, k->x.value());
    return false;
}

}  // namespace indep
