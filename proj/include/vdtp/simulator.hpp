#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string_view>

#include "vdtp/param_space.hpp"
#include "vdtp/rng.hpp"
#include "vdtp/scenario.hpp"

namespace vdtp {

enum class PacketType { FIRQ, FIRP, DRQ, DRP };

enum class EventKind {
    Send,      // packet handed to the channel
    Receive,   // packet delivered to its destination
    Lost,      // channel dropped the packet
    Ignored,   // reply arrived for a request that was already retransmitted
    Timeout,   // retransmission timer fired for the outstanding request
    Complete,  // last chunk received
    Refused,   // attempt budget exhausted
};

std::string_view to_string(PacketType t);
std::string_view to_string(EventKind k);

struct SimEvent {
    double time_s = 0.0;
    int session_id = 0;
    EventKind kind = EventKind::Send;
    PacketType packet = PacketType::FIRQ;
    int attempt = 0;      // transmission number of the request this packet belongs to
    int chunk_index = 0;  // 1-based for DRQ/DRP, 0 for the handshake
};

using EventSink = std::function<void(const SimEvent&)>;

/// Writes `virtual_time,session_id,event_kind,packet_type,attempt_no` rows.
class EventCsvWriter {
public:
    explicit EventCsvWriter(std::ostream& out);
    void operator()(const SimEvent& e);

private:
    std::ostream* out_;
};

/// ceil(file_size_bytes / chunk_bytes)
std::int64_t n_chunks(std::int64_t file_size_bytes, std::int64_t chunk_bytes);

/// Serialization time of a packet on the scenario's channel.
double transmission_delay_s(std::int64_t bytes, const Scenario& scenario);

/// Payload carried by DRP number `chunk_index` (1-based).
std::int64_t chunk_payload_bytes(std::int64_t chunk_index, std::int64_t file_size_bytes, std::int64_t chunk_bytes);

/// Session time on a loss-free, always-up link:
/// RTT(FIRQ/FIRP) + sum over chunks of RTT(DRQ/DRP(i)).
double lossless_session_time_s(const ProtocolConfig& config, const Scenario& scenario);

struct SessionOutcome {
    double time_s = 0.0;
    int lost_packets = 0;
    std::int64_t bytes_delivered = 0;
    bool refused = false;
};

/// One petitioner/owner file exchange, simulated event by event.
SessionOutcome simulate_session(const ProtocolConfig& config, const Scenario& scenario, Rng& rng,
                                const EventSink& sink = {}, int session_id = 0);

/// Aggregate over the scenario's `sessions` independent transfers.
struct TransferOutcome {
    double transmission_time_s = 0.0;      // mean over all sessions
    double lost_packets = 0.0;             // mean per session
    double data_transferred_kbytes = 0.0;  // total over sessions
    int completed_sessions = 0;
    int refused_sessions = 0;

    int sessions() const { return completed_sessions + refused_sessions; }
    double data_per_session_kbytes() const;

    friend bool operator==(const TransferOutcome&, const TransferOutcome&) = default;
};

/// Session s draws from derive_seed(seed, {kSession, s}).
TransferOutcome simulate_replication(const ProtocolConfig& config, const Scenario& scenario, std::uint64_t seed,
                                     const EventSink& sink = {});

/// Per-completed-session kBytes divided by mean transfer time; 0 when no
/// session completed.
double effective_throughput(const TransferOutcome& outcome);

}  // namespace vdtp
