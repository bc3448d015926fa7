#include "lrc/simstore.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lrc/rng.hpp"
#include "lrc/updatemeter.hpp"

namespace lrc {

Cluster provision(const CodeRealization& real, int stripe_rows) {
    if (stripe_rows < 1) throw InvalidParams("stripe_rows must be positive");
    Cluster c;
    c.real = real;
    c.stripe_rows = stripe_rows;
    c.placement.resize(real.graph.params.n);
    for (int b = 0; b < real.graph.params.n; ++b) c.placement[b] = b;
    c.node_up.assign(real.graph.params.n, true);
    return c;
}

namespace {

Stripe& stripe_for(Cluster& c, const std::string& id) {
    auto it = c.stripes.find(id);
    if (it != c.stripes.end()) return it->second;
    const CodeParams& p = c.real.graph.params;
    std::vector<Gf> zeros(static_cast<std::size_t>(c.stripe_rows) * p.k, 0);
    return c.stripes.emplace(id, encode(c.real, zeros, c.stripe_rows)).first->second;
}

}  // namespace

Metrics replay(Cluster& c, const std::vector<WorkloadEvent>& trace) {
    Metrics m;
    const CodeParams& p = c.real.graph.params;
    SupportMatrix support = numeric_support(c.real.P);
    for (const auto& ev : trace) {
        switch (ev.kind) {
            case WorkloadEvent::Kind::Update:
            case WorkloadEvent::Kind::BatchUpdate: {
                if (ev.indices.empty() || ev.indices.size() != ev.payloads.size())
                    throw ReplayError("event " + std::to_string(ev.seq) +
                                      ": update needs matching indices and payloads");
                Stripe& s = stripe_for(c, ev.stripe_id);
                for (std::size_t i = 0; i < ev.indices.size(); ++i) {
                    if (static_cast<int>(ev.payloads[i].size()) != s.l)
                        throw ReplayError("event " + std::to_string(ev.seq) + ": payload has " +
                                          std::to_string(ev.payloads[i].size()) + " symbols, stripe rows are " +
                                          std::to_string(s.l));
                    apply_update(c.real, s, ev.indices[i], ev.payloads[i]);
                }
                // parity writes for the whole event: union of the support rows
                int writes = u_of_set(support, ev.indices);
                m.parity_writes += static_cast<std::uint64_t>(writes);
                ++m.updates;
                ++m.write_histogram[writes];
                m.per_event_writes.push_back(static_cast<std::uint64_t>(writes));
                break;
            }
            case WorkloadEvent::Kind::Fail: {
                if (ev.node < 0 || ev.node >= p.n)
                    throw ReplayError("event " + std::to_string(ev.seq) + ": fail of unknown node");
                if (!c.node_up[ev.node])
                    throw ReplayError("event " + std::to_string(ev.seq) + ": node " + std::to_string(ev.node) +
                                      " already failed");
                c.node_up[ev.node] = false;
                m.per_event_writes.push_back(0);
                break;
            }
            case WorkloadEvent::Kind::Repair: {
                if (ev.node < 0 || ev.node >= p.n)
                    throw ReplayError("event " + std::to_string(ev.seq) + ": repair of unknown node");
                if (c.node_up[ev.node])
                    throw ReplayError("event " + std::to_string(ev.seq) + ": repair of healthy node " +
                                      std::to_string(ev.node));
                std::vector<int> down;
                for (int b = 0; b < p.n; ++b)
                    if (!c.node_up[b]) down.push_back(b);
                for (auto& [id, s] : c.stripes) {
                    if (down.size() == 1) {
                        auto rep = local_repair(c.real, s, ev.node);
                        m.repair_reads += rep.blocks_read.size();
                        for (int row = 0; row < s.l; ++row)
                            if (rep.column[row] != s.at(row, ev.node))
                                throw ReplayError("event " + std::to_string(ev.seq) +
                                                  ": local repair mismatch on stripe " + id);
                    } else {
                        Stripe holes = s;
                        for (int b : down)
                            for (int row = 0; row < s.l; ++row) holes.at(row, b) = 0;
                        DecodeResult dec;
                        try {
                            dec = decode_erasures(c.real, holes, ErasurePattern{down});
                        } catch (const Undecodable& e) {
                            throw ReplayError("event " + std::to_string(ev.seq) + ": " + e.what());
                        }
                        m.repair_reads += dec.blocks_read.size();
                        for (int row = 0; row < s.l; ++row)
                            if (dec.stripe.at(row, ev.node) != s.at(row, ev.node))
                                throw ReplayError("event " + std::to_string(ev.seq) +
                                                  ": decode repair mismatch on stripe " + id);
                    }
                }
                c.node_up[ev.node] = true;
                ++m.repairs;
                m.per_event_writes.push_back(0);
                break;
            }
        }
    }
    return m;
}

std::vector<WorkloadEvent> random_workload(const CodeParams& params, const WorkloadMix& mix, int length,
                                           std::uint64_t seed, int stripes, int stripe_rows, int field_degree) {
    double sum = mix.updates + mix.batches + mix.failures;
    if (sum < 0.999 || sum > 1.001) throw InvalidParams("workload mix proportions must sum to 1");
    if (length < 0 || stripes < 1) throw InvalidParams("bad workload size");
    auto violations = params.check();
    if (!violations.empty()) throw InvalidParams("invalid params: " + violations.front());

    std::vector<WorkloadEvent> trace;
    SplitMix64 rng(derive_seed(seed, 0x77u));
    std::uint64_t symbol_bound = 1ULL << field_degree;
    std::uint64_t seq = 0;
    auto payload = [&]() {
        std::vector<Gf> col(stripe_rows);
        for (auto& v : col) v = static_cast<Gf>(rng.bounded(symbol_bound));
        return col;
    };
    // proportions quantized to 1/2^20 for reproducible draws
    std::uint64_t cut_update = static_cast<std::uint64_t>(mix.updates * (1 << 20));
    std::uint64_t cut_batch = cut_update + static_cast<std::uint64_t>(mix.batches * (1 << 20));
    while (static_cast<int>(trace.size()) < length) {
        std::uint64_t roll = rng.bounded(1 << 20);
        WorkloadEvent ev;
        ev.seq = seq++;
        if (roll < cut_update || params.k < 2) {
            ev.kind = WorkloadEvent::Kind::Update;
            ev.stripe_id = "s" + std::to_string(rng.bounded(static_cast<std::uint64_t>(stripes)));
            ev.indices = {static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.k)))};
            ev.payloads = {payload()};
            trace.push_back(std::move(ev));
        } else if (roll < cut_batch) {
            ev.kind = WorkloadEvent::Kind::BatchUpdate;
            ev.stripe_id = "s" + std::to_string(rng.bounded(static_cast<std::uint64_t>(stripes)));
            int a = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.k)));
            int b = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.k) - 1));
            if (b >= a) ++b;
            ev.indices = {a, b};
            ev.payloads = {payload(), payload()};
            trace.push_back(std::move(ev));
        } else {
            int node = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(params.n)));
            ev.kind = WorkloadEvent::Kind::Fail;
            ev.node = node;
            trace.push_back(ev);
            if (static_cast<int>(trace.size()) >= length) break;
            WorkloadEvent rep;
            rep.seq = seq++;
            rep.kind = WorkloadEvent::Kind::Repair;
            rep.node = node;
            trace.push_back(std::move(rep));
        }
    }
    // a trailing unmatched Fail would leave the trace ill-formed
    if (!trace.empty() && trace.back().kind == WorkloadEvent::Kind::Fail) {
        WorkloadEvent rep;
        rep.seq = seq++;
        rep.kind = WorkloadEvent::Kind::Repair;
        rep.node = trace.back().node;
        trace.push_back(std::move(rep));
    }
    return trace;
}

namespace {

const char* kind_name(WorkloadEvent::Kind k) {
    switch (k) {
        case WorkloadEvent::Kind::Update: return "update";
        case WorkloadEvent::Kind::Fail: return "fail";
        case WorkloadEvent::Kind::Repair: return "repair";
        case WorkloadEvent::Kind::BatchUpdate: return "batch_update";
    }
    return "?";
}

}  // namespace

std::string write_trace_jsonl(const std::vector<WorkloadEvent>& trace) {
    std::ostringstream out;
    for (const auto& ev : trace) {
        nlohmann::ordered_json j;
        j["seq"] = ev.seq;
        j["kind"] = kind_name(ev.kind);
        switch (ev.kind) {
            case WorkloadEvent::Kind::Update:
            case WorkloadEvent::Kind::BatchUpdate:
                j["stripe"] = ev.stripe_id;
                j["indices"] = ev.indices;
                j["payloads"] = ev.payloads;
                break;
            case WorkloadEvent::Kind::Fail:
            case WorkloadEvent::Kind::Repair:
                j["node"] = ev.node;
                break;
        }
        out << j.dump() << '\n';
    }
    return out.str();
}

std::vector<WorkloadEvent> parse_trace_jsonl(const std::string& text) {
    std::vector<WorkloadEvent> trace;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
        try {
            WorkloadEvent ev;
            ev.seq = j.at("seq").get<std::uint64_t>();
            std::string kind = j.at("kind").get<std::string>();
            if (kind == "update") ev.kind = WorkloadEvent::Kind::Update;
            else if (kind == "batch_update") ev.kind = WorkloadEvent::Kind::BatchUpdate;
            else if (kind == "fail") ev.kind = WorkloadEvent::Kind::Fail;
            else if (kind == "repair") ev.kind = WorkloadEvent::Kind::Repair;
            else throw ParseError("trace line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
            if (ev.kind == WorkloadEvent::Kind::Update || ev.kind == WorkloadEvent::Kind::BatchUpdate) {
                ev.stripe_id = j.at("stripe").get<std::string>();
                ev.indices = j.at("indices").get<std::vector<int>>();
                ev.payloads = j.at("payloads").get<std::vector<std::vector<Gf>>>();
            } else {
                ev.node = j.at("node").get<int>();
            }
            trace.push_back(std::move(ev));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return trace;
}

std::string to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["parity_writes"] = m.parity_writes;
    j["repair_reads"] = m.repair_reads;
    j["updates"] = m.updates;
    j["repairs"] = m.repairs;
    j["mean_parity_writes"] = {{"num", m.mean_parity_writes().num()},
                               {"den", m.mean_parity_writes().den()},
                               {"decimal", m.mean_parity_writes().to_decimal(2)}};
    auto hist = nlohmann::ordered_json::object();
    for (const auto& [w, c] : m.write_histogram) hist[std::to_string(w)] = c;
    j["write_histogram"] = std::move(hist);
    j["per_event_writes"] = m.per_event_writes;
    return j.dump(2);
}

std::string metrics_csv(const Metrics& m) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "parity_writes," << m.parity_writes << '\n';
    out << "repair_reads," << m.repair_reads << '\n';
    out << "updates," << m.updates << '\n';
    out << "repairs," << m.repairs << '\n';
    out << "mean_parity_writes," << m.mean_parity_writes().to_decimal(6) << '\n';
    return out.str();
}

}  // namespace lrc
