#include "tfnp/reductions.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "tfnp/error.hpp"
#include "tfnp/io.hpp"

namespace tfnp {

namespace {

// 1^i 0^(k-i), MSB-first.
BitString ones_prefix(int k, int i) {
    uint64_t ones = (i == 64) ? ~uint64_t{0} : (uint64_t{1} << i) - 1;
    return BitString(k, ones << (k - i));
}

bool all_tables(std::initializer_list<const Oracle*> oracles) {
    for (const Oracle* o : oracles)
        if (o->is_circuit()) return false;
    return true;
}

size_t instance_gates(const Instance& inst) {
    struct V {
        size_t operator()(const WardSzaboInstance& i) { return i.coloring.gate_count(); }
        size_t operator()(const PigeonInstance& i) { return i.f.gate_count(); }
        size_t operator()(const CategorizedPigeonInstance& i) {
            return i.p.gate_count() + i.h.gate_count();
        }
        size_t operator()(const AltCategorizedPigeonInstance& i) {
            return i.p.gate_count() + i.h.gate_count();
        }
        size_t operator()(const LineGraphInstance& i) {
            return i.succ.gate_count() + i.pred.gate_count();
        }
    };
    return std::visit(V{}, inst);
}

bool instance_all_circuit(const Instance& inst) {
    struct V {
        bool operator()(const WardSzaboInstance& i) { return i.coloring.is_circuit(); }
        bool operator()(const PigeonInstance& i) { return i.f.is_circuit(); }
        bool operator()(const CategorizedPigeonInstance& i) {
            return i.p.is_circuit() && i.h.is_circuit();
        }
        bool operator()(const AltCategorizedPigeonInstance& i) {
            return i.p.is_circuit() && i.h.is_circuit();
        }
        bool operator()(const LineGraphInstance& i) {
            return i.succ.is_circuit() && i.pred.is_circuit();
        }
    };
    return std::visit(V{}, inst);
}

// ---------------------------------------------------------------------------
// symmetrize: C'(x,y) = C(min(x,y), max(x,y)); anchors unchanged. If the
// anchor inequality does not survive (possible only when an anchor pair is
// asymmetric under C), the asymmetric pair is itself a solution, so the
// transform short-circuits with it.

TransformOut symmetrize_transform(const WardSzaboInstance& i) {
    const int w = i.node_width();
    Oracle sym;
    if (all_tables({&i.coloring})) {
        sym = Oracle(TruthTable::from_function(2 * w, i.n, [&](uint64_t v) {
            uint64_t x = v >> w, y = v & ((uint64_t{1} << w) - 1);
            uint64_t lo = std::min(x, y), hi = std::max(x, y);
            return i.coloring.eval_value((lo << w) | hi);
        }));
    } else {
        CircuitBuilder b(2 * w, "Csym");
        auto x = b.input_span(0, w);
        auto y = b.input_span(w, w);
        Ref lt = b.less(x, y);
        auto lo = b.select(lt, y, x);
        auto hi = b.select(lt, x, y);
        std::vector<Ref> args = lo;
        args.insert(args.end(), hi.begin(), hi.end());
        sym = Oracle(b.build(embed_oracle(b, i.coloring, args)));
    }

    WardSzaboInstance out = i;
    out.coloring = sym;
    if (out.color(out.a, out.b) != out.color(out.a, out.c)) return Instance(out);

    // The inequality broke: one anchor pair must be asymmetric in C.
    if (i.color(i.a, i.b) != i.color(i.b, i.a)) return Solution(SymmetryViolation{i.a, i.b});
    if (i.color(i.a, i.c) != i.color(i.c, i.a)) return Solution(SymmetryViolation{i.a, i.c});
    throw std::logic_error("symmetrize: anchor inequality broke without an asymmetric anchor pair");
}

Solution symmetrize_pullback(const WardSzaboInstance& src, const Solution& s) {
    const Triangle* t = std::get_if<Triangle>(&s);
    if (!t)
        throw UsageError("symmetrize pullback expects a triangle; the symmetrized coloring admits no "
                         "symmetry violations");
    const BitString* pairs[3][2] = {{&t->x, &t->y}, {&t->x, &t->z}, {&t->y, &t->z}};
    for (auto& pr : pairs)
        if (src.color(*pr[0], *pr[1]) != src.color(*pr[1], *pr[0]))
            return SymmetryViolation{*pr[0], *pr[1]};
    return *t;
}

// ---------------------------------------------------------------------------
// ws-to-basic: identity transform with the basic flag set.

TransformOut ws_to_basic_transform(const WardSzaboInstance& i) {
    WardSzaboInstance out = i;
    out.basic_required = true;
    return Instance(out);
}

// ---------------------------------------------------------------------------
// basic-to-altcat: removed element a; p(x) = C(a,x); h(x) = C(b,x) when
// C(a,x) != C(a,b), else C(c,x). Requires a symmetric coloring.

TransformOut basic_to_altcat_transform(const WardSzaboInstance& i) {
    if (i.color(i.a, i.b) == i.color(i.a, i.c))
        throw UsageError("basic-to-altcat: instance violates C(a,b) != C(a,c)");
    const int w = i.node_width();
    const BitString col_ab = i.color(i.a, i.b);

    AltCategorizedPigeonInstance out;
    out.n = i.n;
    out.pi = i.a;
    if (all_tables({&i.coloring})) {
        out.p = Oracle(TruthTable::from_function(w, i.n, [&](uint64_t x) {
            return i.coloring.eval_value((i.a.value() << w) | x);
        }));
        out.h = Oracle(TruthTable::from_function(w, i.n, [&](uint64_t x) {
            uint64_t ax = i.coloring.eval_value((i.a.value() << w) | x);
            uint64_t anchor = (ax == col_ab.value()) ? i.c.value() : i.b.value();
            return i.coloring.eval_value((anchor << w) | x);
        }));
    } else {
        {
            CircuitBuilder b(w, "p");
            auto args = b.constant(i.a);
            auto x = b.input_span(0, w);
            args.insert(args.end(), x.begin(), x.end());
            out.p = Oracle(b.build(embed_oracle(b, i.coloring, args)));
        }
        {
            CircuitBuilder b(w, "h");
            auto x = b.input_span(0, w);
            auto make_args = [&](const BitString& anchor) {
                auto args = b.constant(anchor);
                args.insert(args.end(), x.begin(), x.end());
                return args;
            };
            auto col_ax = embed_oracle(b, i.coloring, make_args(i.a));
            Ref same = b.equals(col_ax, b.constant(col_ab));
            auto col_bx = embed_oracle(b, i.coloring, make_args(i.b));
            auto col_cx = embed_oracle(b, i.coloring, make_args(i.c));
            out.h = Oracle(b.build(b.select(same, col_bx, col_cx)));
        }
    }
    return Instance(out);
}

Solution basic_to_altcat_pullback(const WardSzaboInstance& src, const Solution& s) {
    const BitString &a = src.a, &b = src.b, &c = src.c;
    const BitString col_ab = src.color(a, b);

    if (const HoleHit* h = std::get_if<HoleHit>(&s)) {
        const BitString& x = h->x;
        if (src.color(a, x) != col_ab) return Triangle(a, b, x);
        return Triangle(a, c, x);
    }
    if (const Collision* col = std::get_if<Collision>(&s)) {
        const BitString &x = col->x, &y = col->y;
        // The proof's case analysis, branch on which anchor the hole
        // function used for x (and, since p(x) = p(y), for y too).
        const BitString col_ax = src.color(a, x);
        const BitString& d = (col_ax != col_ab) ? b : c;
        if (col_ax == src.color(d, x)) return Triangle(a, d, x);
        if (src.color(x, y) != col_ax) return Triangle(a, x, y);
        return Triangle(d, x, y);
    }
    throw UsageError("basic-to-altcat pullback expects hole-hit or collision");
}

// ---------------------------------------------------------------------------
// altcat-to-catone: same p and removed element; only the hole function
// changes, folding the h(x) = p(x) solutions into hits on h(pi).

TransformOut altcat_to_catone_transform(const AltCategorizedPigeonInstance& i) {
    const int w = i.element_width();
    const BitString h_pi = i.h.eval(i.pi);

    CategorizedPigeonInstance out;
    out.m1 = i.n;
    out.m2 = i.n;
    out.p = i.p;
    out.removed = {i.pi};
    out.injective_flag = false;
    if (all_tables({&i.p, &i.h})) {
        out.h = Oracle(TruthTable::from_function(w, i.n, [&](uint64_t x) {
            uint64_t hv = i.h.eval_value(x), pv = i.p.eval_value(x);
            if (x == i.pi.value() || hv == pv) return h_pi.value();
            if (hv == h_pi.value()) return pv;
            return hv;
        }));
    } else {
        CircuitBuilder b(w, "hhat");
        auto x = b.input_span(0, w);
        auto hv = embed_oracle(b, i.h, x);
        auto pv = embed_oracle(b, i.p, x);
        auto hpi = b.constant(h_pi);
        Ref case1 = b.or_(b.equals(x, b.constant(i.pi)), b.equals(hv, pv));
        Ref case2 = b.equals(hv, hpi);
        auto inner = b.select(case2, hv, pv);
        out.h = Oracle(b.build(b.select(case1, inner, hpi)));
    }
    return Instance(out);
}

Solution altcat_to_catone_pullback(const AltCategorizedPigeonInstance& src, const Solution& s) {
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) return *h;
    if (const Collision* col = std::get_if<Collision>(&s)) {
        if (src.h.eval(col->x) == src.p.eval(col->x)) return HoleHit{col->x};
        if (src.h.eval(col->y) == src.p.eval(col->y)) return HoleHit{col->y};
        return *col;
    }
    throw UsageError("altcat-to-catone pullback expects hole-hit or collision");
}

// ---------------------------------------------------------------------------
// catone-to-pigeon: v* = 0^m1 h(pi); f maps pi to 1^m1 h(pi) and everything
// else to p(x) h(x).

TransformOut catone_to_pigeon_transform(const CategorizedPigeonInstance& i) {
    if (i.removed.size() != 1)
        throw UsageError("catone-to-pigeon requires exactly one removed element, got k=" +
                         std::to_string(i.removed.size()));
    const BitString& pi = i.removed[0];
    const BitString h_pi = i.h.eval(pi);
    const int w = i.element_width();
    const BitString f_pi = BitString::concat(BitString::ones(i.m1), h_pi);

    PigeonInstance out;
    out.n = w;
    out.v_star = BitString::concat(BitString::zeros(i.m1), h_pi);
    if (all_tables({&i.p, &i.h})) {
        out.f = Oracle(TruthTable::from_function(w, w, [&](uint64_t x) {
            if (x == pi.value()) return f_pi.value();
            return (i.p.eval_value(x) << i.m2) | i.h.eval_value(x);
        }));
    } else {
        CircuitBuilder b(w, "f");
        auto x = b.input_span(0, w);
        auto ph = embed_oracle(b, i.p, x);
        auto hv = embed_oracle(b, i.h, x);
        ph.insert(ph.end(), hv.begin(), hv.end());
        Ref is_pi = b.equals(x, b.constant(pi));
        out.f = Oracle(b.build(b.select(is_pi, ph, b.constant(f_pi))));
    }
    return Instance(out);
}

Solution catone_to_pigeon_pullback(const CategorizedPigeonInstance& src, const Solution& s) {
    const BitString& pi = src.removed[0];
    if (const Preimage* p = std::get_if<Preimage>(&s)) return HoleHit{p->x};
    if (const Collision* col = std::get_if<Collision>(&s)) {
        if (col->x == pi) return HoleHit{col->y};
        if (col->y == pi) return HoleHit{col->x};
        return *col;
    }
    throw UsageError("catone-to-pigeon pullback expects preimage or collision");
}

// ---------------------------------------------------------------------------
// pigeon-to-altcat: pi = 0^2n, p(x,y) = x, and h simulates f on the second
// half while redirecting exact hits so no spurious solutions appear.

TransformOut pigeon_to_altcat_transform(const PigeonInstance& i) {
    const int n = i.n;
    AltCategorizedPigeonInstance out;
    out.n = n;
    out.pi = BitString::zeros(2 * n);
    if (all_tables({&i.f})) {
        uint64_t mask = (uint64_t{1} << n) - 1;
        out.p = Oracle(TruthTable::from_function(2 * n, n, [&](uint64_t v) { return v >> n; }));
        out.h = Oracle(TruthTable::from_function(2 * n, n, [&](uint64_t v) {
            uint64_t x = v >> n, y = v & mask;
            uint64_t fy = i.f.eval_value(y);
            if (fy == i.v_star.value()) return x;
            if (fy == x) return i.v_star.value();
            return fy;
        }));
    } else {
        {
            CircuitBuilder b(2 * n, "p");
            out.p = Oracle(b.build(b.input_span(0, n)));
        }
        {
            CircuitBuilder b(2 * n, "h");
            auto x = b.input_span(0, n);
            auto y = b.input_span(n, n);
            auto fy = embed_oracle(b, i.f, y);
            auto vstar = b.constant(i.v_star);
            Ref hit = b.equals(fy, vstar);
            Ref match = b.equals(fy, x);
            auto inner = b.select(match, fy, vstar);
            out.h = Oracle(b.build(b.select(hit, inner, x)));
        }
    }
    return Instance(out);
}

Solution pigeon_to_altcat_pullback(const PigeonInstance& src, const Solution& s) {
    const int n = src.n;
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) return Preimage{h->x.suffix(n)};
    if (const Collision* col = std::get_if<Collision>(&s)) {
        BitString y1 = col->x.suffix(n), y2 = col->y.suffix(n);
        if (src.f.eval(y1) == src.v_star) return Preimage{y1};
        if (src.f.eval(y2) == src.v_star) return Preimage{y2};
        return Collision(y1, y2);
    }
    throw UsageError("pigeon-to-altcat pullback expects hole-hit or collision");
}

// ---------------------------------------------------------------------------
// pigeon-to-categorized: removed list (1^i 0^(k-i), 0^n) for i in [k];
// h maps removed elements to v* and everything else through f.

std::vector<BitString> pigeon_to_categorized_removed(int k, int n) {
    std::vector<BitString> removed;
    removed.reserve(size_t(k));
    for (int i = 1; i <= k; ++i)
        removed.push_back(BitString::concat(ones_prefix(k, i), BitString::zeros(n)));
    return removed;
}

TransformOut pigeon_to_categorized_transform(const PigeonInstance& i, const StageParams& params) {
    const int k = params.k;
    const int n = i.n;
    if (k < 1 || k > default_caps().max_removed)
        throw UsageError("pigeon-to-categorized: k out of range (1.." +
                         std::to_string(default_caps().max_removed) + ")");
    CategorizedPigeonInstance out;
    out.m1 = k;
    out.m2 = n;
    out.removed = pigeon_to_categorized_removed(k, n);
    out.injective_flag = false;
    if (all_tables({&i.f})) {
        uint64_t mask = (uint64_t{1} << n) - 1;
        std::set<uint64_t> removed_vals;
        for (const BitString& pi : out.removed) removed_vals.insert(pi.value());
        out.p = Oracle(TruthTable::from_function(k + n, k, [&](uint64_t v) { return v >> n; }));
        out.h = Oracle(TruthTable::from_function(k + n, n, [&](uint64_t v) {
            if (removed_vals.count(v)) return i.v_star.value();
            return i.f.eval_value(v & mask);
        }));
    } else {
        {
            CircuitBuilder b(k + n, "p");
            out.p = Oracle(b.build(b.input_span(0, k)));
        }
        {
            CircuitBuilder b(k + n, "h");
            auto all = b.input_span(0, k + n);
            auto x = b.input_span(k, n);
            Ref in_removed{};
            for (int j = 0; j < k; ++j) {
                Ref eq = b.equals(all, b.constant(out.removed[size_t(j)]));
                in_removed = (j == 0) ? eq : b.or_(in_removed, eq);
            }
            auto fx = embed_oracle(b, i.f, x);
            out.h = Oracle(b.build(b.select(in_removed, fx, b.constant(i.v_star))));
        }
    }
    return Instance(out);
}

Solution pigeon_to_categorized_pullback(const PigeonInstance& src, const Solution& s) {
    const int n = src.n;
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) return Preimage{h->x.suffix(n)};
    if (const Collision* col = std::get_if<Collision>(&s)) {
        BitString x = col->x.suffix(n), y = col->y.suffix(n);
        if (src.f.eval(x) == src.v_star) return Preimage{x};
        if (src.f.eval(y) == src.v_star) return Preimage{y};
        return Collision(x, y);
    }
    throw UsageError("pigeon-to-categorized pullback expects hole-hit or collision");
}

// ---------------------------------------------------------------------------
// injective-cat-to-pigeon: f = p(x) h(x); the v* prefix choice keeps f(pi_1)
// off the target.

TransformOut injective_cat_to_pigeon_transform(const CategorizedPigeonInstance& i) {
    if (!i.injective_flag)
        throw UsageError("injective-cat-to-pigeon requires the injective flag");
    std::set<BitString> holes;
    for (const BitString& pi : i.removed)
        if (!holes.insert(i.h.eval(pi)).second)
            throw UsageError("injective-cat-to-pigeon: h is not injective on the removed list");

    const int w = i.element_width();
    const BitString& pi1 = i.removed[0];
    const BitString h_pi1 = i.h.eval(pi1);
    const BitString prefix =
        (i.p.eval(pi1) != BitString::zeros(i.m1)) ? BitString::zeros(i.m1) : BitString::ones(i.m1);

    PigeonInstance out;
    out.n = w;
    out.v_star = BitString::concat(prefix, h_pi1);
    if (all_tables({&i.p, &i.h})) {
        out.f = Oracle(TruthTable::from_function(w, w, [&](uint64_t x) {
            return (i.p.eval_value(x) << i.m2) | i.h.eval_value(x);
        }));
    } else {
        out.f = Oracle(concat_outputs(i.p, i.h, "f"));
    }
    return Instance(out);
}

Solution injective_cat_to_pigeon_pullback(const CategorizedPigeonInstance& src, const Solution& s) {
    auto in_removed = [&](const BitString& x) {
        for (const BitString& pi : src.removed)
            if (pi == x) return true;
        return false;
    };
    if (const Preimage* p = std::get_if<Preimage>(&s)) return HoleHit{p->x};
    if (const Collision* col = std::get_if<Collision>(&s)) {
        bool xr = in_removed(col->x), yr = in_removed(col->y);
        if (xr && yr)
            throw std::logic_error("injective-cat-to-pigeon: both collision elements removed despite injectivity");
        if (yr) return HoleHit{col->x};
        if (xr) return HoleHit{col->y};
        return *col;
    }
    throw UsageError("injective-cat-to-pigeon pullback expects preimage or collision");
}

// ---------------------------------------------------------------------------
// mssol-to-injective-cat: removed list (1^i 0^(k-i), s_i); h follows the
// successor on valid nodes and dumps invalid ones on s_1. Invalid known
// sources short-circuit to an immediate sink.

bool line_node_valid(const LineGraphInstance& i, const BitString& x) {
    BitString sx = i.succ.eval(x);
    if (sx == x) return true;
    return i.pred.eval(sx) == x;
}

TransformOut mssol_to_injective_cat_transform(const LineGraphInstance& i) {
    for (const BitString& s : i.sources)
        if (!line_node_valid(i, s)) return Solution(Sink{s});

    const int k = int(i.sources.size());
    const int n = i.n;
    CategorizedPigeonInstance out;
    out.m1 = k;
    out.m2 = n;
    out.injective_flag = true;
    out.removed.reserve(size_t(k));
    for (int j = 1; j <= k; ++j)
        out.removed.push_back(BitString::concat(ones_prefix(k, j), i.sources[size_t(j - 1)]));

    if (all_tables({&i.succ, &i.pred})) {
        uint64_t mask = (uint64_t{1} << n) - 1;
        std::set<uint64_t> removed_vals;
        for (const BitString& pi : out.removed) removed_vals.insert(pi.value());
        uint64_t s1 = i.sources[0].value();
        out.p = Oracle(TruthTable::from_function(k + n, k, [&](uint64_t v) { return v >> n; }));
        out.h = Oracle(TruthTable::from_function(k + n, n, [&](uint64_t v) {
            if (removed_vals.count(v)) return v & mask;
            uint64_t x = v & mask;
            uint64_t sx = i.succ.eval_value(x);
            bool valid = (sx == x) || (i.pred.eval_value(sx) == x);
            return valid ? sx : s1;
        }));
    } else {
        {
            CircuitBuilder b(k + n, "p");
            out.p = Oracle(b.build(b.input_span(0, k)));
        }
        {
            CircuitBuilder b(k + n, "h");
            auto all = b.input_span(0, k + n);
            auto x = b.input_span(k, n);
            Ref in_removed{};
            for (int j = 0; j < k; ++j) {
                Ref eq = b.equals(all, b.constant(out.removed[size_t(j)]));
                in_removed = (j == 0) ? eq : b.or_(in_removed, eq);
            }
            auto sx = embed_oracle(b, i.succ, x);
            auto psx = embed_oracle(b, i.pred, sx);
            Ref valid = b.or_(b.equals(sx, x), b.equals(psx, x));
            auto inner = b.select(valid, b.constant(i.sources[0]), sx);
            out.h = Oracle(b.build(b.select(in_removed, inner, x)));
        }
    }
    return Instance(out);
}

Solution mssol_to_injective_cat_pullback(const LineGraphInstance& src, const Solution& s) {
    const int n = src.n;
    if (const HoleHit* h = std::get_if<HoleHit>(&s)) return Sink{h->x.suffix(n)};
    if (const Collision* col = std::get_if<Collision>(&s)) {
        BitString x1 = col->x.suffix(n), x2 = col->y.suffix(n);
        if (!line_node_valid(src, x1)) return Sink{x1};
        if (!line_node_valid(src, x2)) return Sink{x2};
        // Both valid with S(x1) = S(x2): exactly one is a fixed point of S,
        // and that one is the sink.
        if (src.succ.eval(x1) == x1) return Sink{x1};
        return Sink{x2};
    }
    throw UsageError("mssol-to-injective-cat pullback expects hole-hit or collision");
}

// ---------------------------------------------------------------------------
// Registry

template <class InstT>
const InstT& expect(const Instance& inst, const char* red) {
    const InstT* p = std::get_if<InstT>(&inst);
    if (!p)
        throw UsageError(std::string(red) + ": instance kind " +
                         std::string(problem_kind_name(kind_of(inst))) + " does not match");
    return *p;
}

std::vector<ReductionDef> make_registry() {
    std::vector<ReductionDef> defs;

    auto add = [&](ReductionDef def) { defs.push_back(std::move(def)); };

    add(ReductionDef{
        "symmetrize", ProblemKind::WardSzabo, ProblemKind::WardSzabo, 1.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            return 32 * size_t(std::get<WardSzaboInstance>(inst).n) + 8;
        },
        [](const Instance& inst, const StageParams&) {
            return symmetrize_transform(expect<WardSzaboInstance>(inst, "symmetrize"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return symmetrize_pullback(expect<WardSzaboInstance>(src, "symmetrize"), s);
        }});

    add(ReductionDef{
        "ws-to-basic", ProblemKind::WardSzabo, ProblemKind::WardSzabo, 1.0,
        [](const Instance&, const StageParams&) -> size_t { return 0; },
        [](const Instance& inst, const StageParams&) {
            return ws_to_basic_transform(expect<WardSzaboInstance>(inst, "ws-to-basic"));
        },
        [](const Instance&, const Solution& s, const StageParams&) { return s; }});

    add(ReductionDef{
        "basic-to-altcat", ProblemKind::WardSzabo, ProblemKind::AltCategorized, 4.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            return 20 * size_t(std::get<WardSzaboInstance>(inst).n) + 10;
        },
        [](const Instance& inst, const StageParams&) {
            return basic_to_altcat_transform(expect<WardSzaboInstance>(inst, "basic-to-altcat"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return basic_to_altcat_pullback(expect<WardSzaboInstance>(src, "basic-to-altcat"), s);
        }});

    add(ReductionDef{
        "altcat-to-catone", ProblemKind::AltCategorized, ProblemKind::Categorized, 2.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            return 30 * size_t(std::get<AltCategorizedPigeonInstance>(inst).n) + 10;
        },
        [](const Instance& inst, const StageParams&) {
            return altcat_to_catone_transform(expect<AltCategorizedPigeonInstance>(inst, "altcat-to-catone"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return altcat_to_catone_pullback(expect<AltCategorizedPigeonInstance>(src, "altcat-to-catone"), s);
        }});

    add(ReductionDef{
        "catone-to-pigeon", ProblemKind::Categorized, ProblemKind::Pigeon, 1.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            const auto& i = std::get<CategorizedPigeonInstance>(inst);
            return 10 * size_t(i.m1 + i.m2) + 8;
        },
        [](const Instance& inst, const StageParams&) {
            return catone_to_pigeon_transform(expect<CategorizedPigeonInstance>(inst, "catone-to-pigeon"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return catone_to_pigeon_pullback(expect<CategorizedPigeonInstance>(src, "catone-to-pigeon"), s);
        }});

    add(ReductionDef{
        "pigeon-to-altcat", ProblemKind::Pigeon, ProblemKind::AltCategorized, 1.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            return 16 * size_t(std::get<PigeonInstance>(inst).n) + 8;
        },
        [](const Instance& inst, const StageParams&) {
            return pigeon_to_altcat_transform(expect<PigeonInstance>(inst, "pigeon-to-altcat"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return pigeon_to_altcat_pullback(expect<PigeonInstance>(src, "pigeon-to-altcat"), s);
        }});

    add(ReductionDef{
        "pigeon-to-categorized", ProblemKind::Pigeon, ProblemKind::Categorized, 1.0,
        [](const Instance& inst, const StageParams& params) -> size_t {
            size_t k = size_t(params.k), n = size_t(std::get<PigeonInstance>(inst).n);
            return 4 * k * (k + n) + k + 6 * n + 8;
        },
        [](const Instance& inst, const StageParams& params) {
            return pigeon_to_categorized_transform(expect<PigeonInstance>(inst, "pigeon-to-categorized"),
                                                   params);
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return pigeon_to_categorized_pullback(expect<PigeonInstance>(src, "pigeon-to-categorized"), s);
        }});

    add(ReductionDef{
        "injective-cat-to-pigeon", ProblemKind::Categorized, ProblemKind::Pigeon, 1.0,
        [](const Instance&, const StageParams&) -> size_t { return 4; },
        [](const Instance& inst, const StageParams&) {
            return injective_cat_to_pigeon_transform(
                expect<CategorizedPigeonInstance>(inst, "injective-cat-to-pigeon"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return injective_cat_to_pigeon_pullback(
                expect<CategorizedPigeonInstance>(src, "injective-cat-to-pigeon"), s);
        }});

    add(ReductionDef{
        "mssol-to-injective-cat", ProblemKind::SinkOfLine, ProblemKind::Categorized, 1.0,
        [](const Instance& inst, const StageParams&) -> size_t {
            const auto& i = std::get<LineGraphInstance>(inst);
            size_t k = i.sources.size(), n = size_t(i.n);
            return 4 * k * (k + n) + k + 16 * n + 8;
        },
        [](const Instance& inst, const StageParams&) {
            return mssol_to_injective_cat_transform(expect<LineGraphInstance>(inst, "mssol-to-injective-cat"));
        },
        [](const Instance& src, const Solution& s, const StageParams&) {
            return mssol_to_injective_cat_pullback(expect<LineGraphInstance>(src, "mssol-to-injective-cat"), s);
        }});

    // Every pullback re-verifies its output and fails loudly; an unchecked
    // certificate never leaves this module.
    for (ReductionDef& d : defs) {
        auto raw = std::move(d.pullback);
        std::string name = d.name;
        d.pullback = [raw, name](const Instance& src, const Solution& s, const StageParams& params) {
            Solution out = raw(src, s, params);
            Verdict v = verify(src, out);
            if (!v.ok())
                throw std::logic_error(name + " pullback produced a certificate the source verifier rejects (" +
                                       v.code + ": " + v.detail + ")");
            return out;
        };
    }
    return defs;
}

}  // namespace

const std::vector<ReductionDef>& all_reductions() {
    static const std::vector<ReductionDef> defs = make_registry();
    return defs;
}

const ReductionDef& reduction_by_name(const std::string& name) {
    for (const ReductionDef& d : all_reductions())
        if (d.name == name) return d;
    throw UsageError("unknown reduction '" + name + "'");
}

// ---------------------------------------------------------------------------
// Chains

bool is_builtin_chain(const std::string& name) {
    return name == "ws2pigeon" || name == "pigeon2altcat" || name == "mssol2pigeon";
}

std::vector<std::string> builtin_chain_names() {
    return {"ws2pigeon", "pigeon2altcat", "mssol2pigeon"};
}

Chain builtin_chain(const std::string& name) {
    if (name == "ws2pigeon")
        return Chain{name,
                     {{"symmetrize", {}},
                      {"ws-to-basic", {}},
                      {"basic-to-altcat", {}},
                      {"altcat-to-catone", {}},
                      {"catone-to-pigeon", {}}}};
    if (name == "pigeon2altcat") return Chain{name, {{"pigeon-to-altcat", {}}}};
    if (name == "mssol2pigeon")
        return Chain{name, {{"mssol-to-injective-cat", {}}, {"injective-cat-to-pigeon", {}}}};
    throw UsageError("unknown chain '" + name + "'");
}

Chain parse_chain_manifest(std::string_view text) {
    Chain chain;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "chain:") {
            ls >> chain.name;
        } else if (head == "stage:") {
            std::string name;
            if (!(ls >> name))
                throw ParseError("line " + std::to_string(line_no) + ": stage line missing reduction name");
            ChainStage stage{name, {}};
            std::string opt;
            while (ls >> opt) {
                if (opt.rfind("k=", 0) == 0) {
                    int k = 0;
                    auto [p, ec] = std::from_chars(opt.data() + 2, opt.data() + opt.size(), k);
                    if (ec != std::errc() || p != opt.data() + opt.size())
                        throw ParseError("line " + std::to_string(line_no) + ": bad k value");
                    stage.params.k = k;
                } else {
                    throw ParseError("line " + std::to_string(line_no) + ": unknown stage option '" + opt + "'");
                }
            }
            chain.stages.push_back(std::move(stage));
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'chain:' or 'stage:'");
        }
    }
    if (chain.name.empty()) throw ParseError("chain manifest missing 'chain:' line");
    if (chain.stages.empty()) throw ParseError("chain manifest lists no stages");
    return chain;
}

std::string serialize_chain(const Chain& chain) {
    std::ostringstream out;
    out << "chain: " << chain.name << "\n";
    for (const ChainStage& s : chain.stages) {
        out << "stage: " << s.reduction;
        if (s.reduction == "pigeon-to-categorized") out << " k=" << s.params.k;
        out << "\n";
    }
    return out.str();
}

Chain normalize_chain(Chain chain) {
    std::vector<ChainStage> out;
    bool sym_seen = false;
    for (ChainStage& s : chain.stages) {
        if (s.reduction == "symmetrize") sym_seen = true;
        if (s.reduction == "basic-to-altcat" && !sym_seen) {
            out.push_back({"symmetrize", {}});
            sym_seen = true;
        }
        out.push_back(std::move(s));
    }
    chain.stages = std::move(out);
    return chain;
}

// ---------------------------------------------------------------------------
// Provenance

std::string serialize_provenance(const Provenance& p) {
    std::ostringstream out;
    out << "provenance: tfnp-provenance v1\n";
    out << "chain: " << p.chain_name << "\n";
    out << "original-kind: " << problem_kind_name(p.original_kind) << "\n";
    out << "original-digest: " << p.original_digest << "\n";
    for (const ChainStage& s : p.stages) {
        out << "stage: " << s.reduction;
        if (s.reduction == "pigeon-to-categorized") out << " k=" << s.params.k;
        out << "\n";
    }
    return out.str();
}

Provenance parse_provenance(std::string_view text) {
    Provenance p;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "provenance:") {
            std::string rest;
            std::getline(ls, rest);
            header = true;
        } else if (head == "chain:") {
            ls >> p.chain_name;
        } else if (head == "original-kind:") {
            std::string kn;
            ls >> kn;
            auto k = problem_kind_from_name(kn);
            if (!k) throw ParseError("line " + std::to_string(line_no) + ": unknown problem kind '" + kn + "'");
            p.original_kind = *k;
        } else if (head == "original-digest:") {
            ls >> p.original_digest;
        } else if (head == "stage:") {
            std::string name;
            ls >> name;
            ChainStage stage{name, {}};
            std::string opt;
            while (ls >> opt) {
                if (opt.rfind("k=", 0) == 0) stage.params.k = std::stoi(opt.substr(2));
            }
            p.stages.push_back(std::move(stage));
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unexpected '" + head + "' in provenance file");
        }
    }
    if (!header) throw ParseError("provenance file missing 'provenance:' header");
    if (p.original_digest.empty()) throw ParseError("provenance file missing original-digest");
    if (p.stages.empty()) throw ParseError("provenance file lists no stages");
    return p;
}

// ---------------------------------------------------------------------------
// Composition

ComposeResult compose(const Chain& chain, const Instance& original) {
    ComposeResult result;
    result.instances.push_back(original);
    result.provenance.chain_name = chain.name;
    result.provenance.original_kind = kind_of(original);
    result.provenance.original_digest = instance_digest(original);
    result.provenance.stages = chain.stages;

    for (size_t t = 0; t < chain.stages.size(); ++t) {
        const ChainStage& stage = chain.stages[t];
        const ReductionDef& def = reduction_by_name(stage.reduction);
        const Instance& cur = result.instances.back();
        if (kind_of(cur) != def.source)
            throw UsageError("chain '" + chain.name + "' stage " + std::to_string(t) + " (" + def.name +
                             ") expects " + std::string(problem_kind_name(def.source)) + ", got " +
                             std::string(problem_kind_name(kind_of(cur))));

        StageTrace trace;
        trace.reduction = def.name;
        trace.from = def.source;
        trace.to = def.target;
        trace.in_gates = instance_gates(cur);
        trace.circuit_path = instance_all_circuit(cur);
        trace.declared_alpha = def.alpha(cur, stage.params);
        trace.declared_beta = def.beta;

        TransformOut out = def.transform(cur, stage.params);
        if (Solution* sol = std::get_if<Solution>(&out)) {
            // Short-circuit: pull the immediate answer back through the
            // stages already applied.
            Solution s = *sol;
            for (size_t j = t; j-- > 0;) {
                const ReductionDef& back = reduction_by_name(chain.stages[j].reduction);
                s = back.pullback(result.instances[j], s, chain.stages[j].params);
            }
            Verdict v = verify(result.instances[0], s);
            if (!v.ok())
                throw std::logic_error("short-circuit solution failed the original verifier (" + v.code + ")");
            result.immediate = s;
            result.trace.push_back(trace);
            return result;
        }
        Instance next = std::get<Instance>(std::move(out));
        trace.out_gates = instance_gates(next);
        result.trace.push_back(trace);
        result.instances.push_back(std::move(next));
    }
    return result;
}

Solution pullback_chain(const Chain& chain, const std::vector<Instance>& instances, Solution s) {
    if (instances.size() != chain.stages.size() + 1)
        throw UsageError("pullback_chain: instance list does not match the chain length");
    Verdict v = verify(instances.back(), s);
    if (!v.ok())
        throw RejectionError("certificate rejected by the stage-" + std::to_string(chain.stages.size() - 1) +
                             " (" + chain.stages.back().reduction + ") target verifier: " + v.code +
                             (v.detail.empty() ? "" : " (" + v.detail + ")"));
    for (size_t t = chain.stages.size(); t-- > 0;) {
        const ReductionDef& def = reduction_by_name(chain.stages[t].reduction);
        s = def.pullback(instances[t], s, chain.stages[t].params);
    }
    return s;
}

Solution pullback_with_provenance(const Provenance& prov, const Instance& original, const Solution& reduced) {
    std::string digest = instance_digest(original);
    if (digest != prov.original_digest)
        throw UsageError("provenance digest mismatch: instance hashes to " + digest + ", provenance records " +
                         prov.original_digest);
    if (kind_of(original) != prov.original_kind)
        throw UsageError("provenance kind mismatch");
    Chain chain{prov.chain_name, prov.stages};
    ComposeResult composed = compose(chain, original);
    if (composed.immediate)
        throw UsageError("transform chain short-circuits on this instance; nothing to pull back");
    return pullback_chain(chain, composed.instances, reduced);
}

}  // namespace tfnp
