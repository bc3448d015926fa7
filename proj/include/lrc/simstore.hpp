#ifndef LRC_SIMSTORE_HPP
#define LRC_SIMSTORE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lrc/codec.hpp"
#include "lrc/rational.hpp"

namespace lrc {

struct WorkloadEvent {
    enum class Kind { Update, Fail, Repair, BatchUpdate };
    std::uint64_t seq = 0;
    Kind kind = Kind::Update;
    std::string stripe_id;                   // Update / BatchUpdate
    std::vector<int> indices;                // information indices
    std::vector<std::vector<Gf>> payloads;   // one column per index
    int node = -1;                           // Fail / Repair
};

struct Metrics {
    std::uint64_t parity_writes = 0;
    std::uint64_t repair_reads = 0;
    std::uint64_t updates = 0;
    std::uint64_t repairs = 0;
    std::map<int, std::uint64_t> write_histogram;  // per-update parity write counts
    std::vector<std::uint64_t> per_event_writes;

    Rat mean_parity_writes() const {
        return updates == 0 ? Rat(0)
                            : Rat(static_cast<std::int64_t>(parity_writes), static_cast<std::int64_t>(updates));
    }
};

/*
 * Deterministic in-process cluster: one virtual node per code block
 * (identity placement), a stripe store, and block-count accounting of
 * parity writes and repair reads. Stripes hold ground truth; a failed node
 * makes its block unavailable until repaired, and repairs verify the
 * reconstructed block against the stored content.
 */
struct Cluster {
    CodeRealization real;
    std::vector<int> placement;  // block index -> node, identity
    std::map<std::string, Stripe> stripes;
    std::vector<bool> node_up;
    int stripe_rows = 1;
};

Cluster provision(const CodeRealization& real, int stripe_rows = 1);

// Applies events in sequence order through the codec. Updates against
// unknown stripe ids materialize an all-zero stripe first. Throws
// ReplayError naming the first ill-formed event.
Metrics replay(Cluster& c, const std::vector<WorkloadEvent>& trace);

struct WorkloadMix {
    double updates = 1.0;   // single-block updates
    double batches = 0.0;   // pair updates
    double failures = 0.0;  // fail immediately followed by repair
};

// Seeded reproducible trace over `stripes` stripe ids. Proportions must sum
// to 1. Failure draws emit a Fail/Repair pair.
std::vector<WorkloadEvent> random_workload(const CodeParams& params, const WorkloadMix& mix, int length,
                                           std::uint64_t seed, int stripes = 1, int stripe_rows = 1,
                                           int field_degree = 16);

// Trace file: JSON Lines, one event per line.
std::string write_trace_jsonl(const std::vector<WorkloadEvent>& trace);
std::vector<WorkloadEvent> parse_trace_jsonl(const std::string& text);  // throws ParseError

std::string to_json(const Metrics& m);
std::string metrics_csv(const Metrics& m);

}  // namespace lrc

#endif
