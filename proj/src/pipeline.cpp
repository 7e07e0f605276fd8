#include "tfnp/pipeline.hpp"

namespace tfnp {

RoundtripReport roundtrip(const Instance& original, const Chain& chain, const std::string& method,
                          const Caps& caps) {
    RoundtripReport report;
    ComposeResult composed = compose(chain, original);
    report.trace = composed.trace;
    if (composed.immediate) {
        report.short_circuited = true;
        report.final_solution = *composed.immediate;
        report.final_verdict = verify(original, report.final_solution);
        report.ok = report.final_verdict.ok();
        return report;
    }
    report.solve_report = solve(composed.reduced(), method, caps);
    report.final_solution = pullback_chain(chain, composed.instances, report.solve_report.solution);
    report.final_verdict = verify(original, report.final_solution);
    report.ok = report.final_verdict.ok();
    return report;
}

}  // namespace tfnp
