#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfnp/config.hpp"
#include "tfnp/problems.hpp"

namespace tfnp {

// Counting wrapper: every pointwise oracle access goes through here so
// solver reports carry an honest query count.
class CountingOracle {
  public:
    explicit CountingOracle(const Oracle& inner) : inner_(&inner) {}

    uint64_t eval_value(uint64_t x) const {
        ++count_;
        return inner_->eval_value(x);
    }
    BitString eval(const BitString& x) const {
        ++count_;
        return inner_->eval(x);
    }
    uint64_t count() const { return count_; }

  private:
    const Oracle* inner_;
    mutable uint64_t count_ = 0;
};

struct SolveReport {
    Solution solution;
    uint64_t queries = 0;
    std::string method;  // brute | guided
    int64_t elapsed_ms = 0;
};

// The buckets M_i = { x : p(x) = i } over the non-removed domain, elements
// in lexicographic order within each bucket.
struct PartitionBuckets {
    int key_width = 1;
    std::map<uint64_t, std::vector<uint64_t>> buckets;

    static PartitionBuckets build(const Oracle& p, const std::vector<BitString>& removed);
};

// Bookkeeping of the pigeonhole-guided triangle search, exposed so tests
// can check the class-size guarantee and the working-set discipline.
struct GuidedSearchState {
    BitString chosen_color;               // chi
    std::vector<BitString> heavy_class;   // V_chi, lexicographic
    std::vector<BitString> working_set;   // first N members of V_chi
    BitString off_class_anchor;           // d in {b,c} with C(a,d) != chi
    uint64_t queries = 0;
};

SolveReport brute_pigeon(const PigeonInstance& inst, const Caps& caps = default_caps());
SolveReport brute_categorized(const CategorizedPigeonInstance& inst, const Caps& caps = default_caps());
SolveReport brute_alt_categorized(const AltCategorizedPigeonInstance& inst, const Caps& caps = default_caps());
SolveReport brute_sink(const LineGraphInstance& inst, const Caps& caps = default_caps());

// Exhaustive triangle scan in lexicographic triple order; returns nothing
// when no bichromatic triangle exists (possible only when the coloring
// breaks the Ward-Szabo promise, e.g. a swell coloring fed in directly).
struct TriangleScan {
    std::optional<Solution> solution;
    uint64_t queries = 0;
    int64_t elapsed_ms = 0;
};
TriangleScan brute_triangle(const WardSzaboInstance& inst, const Caps& caps = default_caps());

// Constructive solver: buckets the edges at anchor a by color, takes the
// first N members of the heavy class, and closes with a pigeonhole argument
// against an off-class anchor. Requires a symmetric coloring (run
// symmetrize first); always returns a basic triangle, or a symmetry
// violation discovered mid-scan. Query count stays below
// 2*2^(2n) + 2^n + 2.
SolveReport guided_ward_szabo(const WardSzaboInstance& inst, GuidedSearchState* state = nullptr,
                              const Caps& caps = default_caps());

// Kind dispatch; method is "brute" or, for ward-szabo only, "guided".
SolveReport solve(const Instance& inst, const std::string& method = "brute",
                  const Caps& caps = default_caps());

}  // namespace tfnp
