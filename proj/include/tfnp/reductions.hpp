#pragma once

#include <functional>
#include <stdexcept>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tfnp/config.hpp"
#include "tfnp/problems.hpp"

namespace tfnp {

// A verifier rejected a certificate supplied by the operator (as opposed to
// a usage error or an internal contract breach). The CLI maps this to exit
// code 1.
struct RejectionError : std::runtime_error {
    explicit RejectionError(const std::string& what) : std::runtime_error(what) {}
};

struct StageParams {
    int k = 1;  // removed-list size for pigeon-to-categorized
    friend bool operator==(const StageParams&, const StageParams&) = default;
};

// A transform either produces the reduced instance or short-circuits with an
// immediate source-level solution (an invalid known source, or an anchor
// pair whose asymmetry breaks the anchor inequality under symmetrization).
using TransformOut = std::variant<Instance, Solution>;

// Paired forward transform and backward pull-back. Pullbacks re-verify
// their outputs against the source verifier and throw std::logic_error on a
// contract breach rather than returning unchecked certificates.
//
// declared size growth: on the circuit path, output gate total stays within
// alpha(instance, params) + beta * input gate total.
struct ReductionDef {
    std::string name;
    ProblemKind source;
    ProblemKind target;
    double beta = 1.0;
    std::function<size_t(const Instance&, const StageParams&)> alpha;
    std::function<TransformOut(const Instance&, const StageParams&)> transform;
    std::function<Solution(const Instance& source_inst, const Solution&, const StageParams&)> pullback;
};

const std::vector<ReductionDef>& all_reductions();
const ReductionDef& reduction_by_name(const std::string& name);

// ---------------------------------------------------------------------------
// Chains

struct ChainStage {
    std::string reduction;
    StageParams params;
    friend bool operator==(const ChainStage&, const ChainStage&) = default;
};

struct Chain {
    std::string name;
    std::vector<ChainStage> stages;
};

bool is_builtin_chain(const std::string& name);
Chain builtin_chain(const std::string& name);  // ws2pigeon, pigeon2altcat, mssol2pigeon
std::vector<std::string> builtin_chain_names();

// Manifest format: 'chain: <name>' plus ordered 'stage: <reduction> [k=<int>]'
// lines.
Chain parse_chain_manifest(std::string_view text);
std::string serialize_chain(const Chain& chain);

// Inserts symmetrize ahead of basic-to-altcat when the chain does not
// already run it; basic-to-altcat requires a symmetric coloring.
Chain normalize_chain(Chain chain);

// ---------------------------------------------------------------------------
// Composition and provenance

struct StageTrace {
    std::string reduction;
    ProblemKind from, to;
    size_t in_gates = 0;
    size_t out_gates = 0;
    bool circuit_path = false;
    size_t declared_alpha = 0;
    double declared_beta = 1.0;
};

struct Provenance {
    std::string chain_name;
    ProblemKind original_kind = ProblemKind::WardSzabo;
    std::string original_digest;
    std::vector<ChainStage> stages;
};

std::string serialize_provenance(const Provenance& p);
Provenance parse_provenance(std::string_view text);

struct ComposeResult {
    // instances[0] is the original; instances[t+1] is the output of stage t.
    std::vector<Instance> instances;
    std::vector<StageTrace> trace;
    // Set when some stage short-circuited; already pulled back to the
    // original level and verified.
    std::optional<Solution> immediate;
    Provenance provenance;

    const Instance& reduced() const { return instances.back(); }
};

ComposeResult compose(const Chain& chain, const Instance& original);

// Backward walk: verifies the certificate at every stage boundary, applying
// stage pullbacks in reverse. Throws RejectionError if the supplied reduced
// certificate fails the final instance's verifier.
Solution pullback_chain(const Chain& chain, const std::vector<Instance>& instances, Solution s);

// Provenance-driven variant for the separate CLI step: checks the digest
// against the given original instance, re-runs the transforms, then pulls
// back.
Solution pullback_with_provenance(const Provenance& prov, const Instance& original, const Solution& reduced);

}  // namespace tfnp
