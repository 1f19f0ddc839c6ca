#include "vdtp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <fmt/format.h>

#include "vdtp/kv_text.hpp"

namespace vdtp {

std::string_view to_string(PacketType t) {
    switch (t) {
        case PacketType::FIRQ: return "FIRQ";
        case PacketType::FIRP: return "FIRP";
        case PacketType::DRQ: return "DRQ";
        case PacketType::DRP: return "DRP";
    }
    return "?";
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::Send: return "send";
        case EventKind::Receive: return "receive";
        case EventKind::Lost: return "lost";
        case EventKind::Ignored: return "ignored";
        case EventKind::Timeout: return "timeout";
        case EventKind::Complete: return "complete";
        case EventKind::Refused: return "refused";
    }
    return "?";
}

EventCsvWriter::EventCsvWriter(std::ostream& out) : out_(&out) {
    *out_ << "virtual_time,session_id,event_kind,packet_type,attempt_no\n";
}

void EventCsvWriter::operator()(const SimEvent& e) {
    *out_ << format_double(e.time_s) << ',' << e.session_id << ',' << to_string(e.kind) << ',' << to_string(e.packet)
          << ',' << e.attempt << '\n';
}

std::int64_t n_chunks(std::int64_t file_size_bytes, std::int64_t chunk_bytes) {
    return (file_size_bytes + chunk_bytes - 1) / chunk_bytes;
}

double transmission_delay_s(std::int64_t bytes, const Scenario& scenario) {
    return static_cast<double>(bytes) * 8.0 / scenario.bandwidth_bps;
}

std::int64_t chunk_payload_bytes(std::int64_t chunk_index, std::int64_t file_size_bytes, std::int64_t chunk_bytes) {
    return std::min(chunk_bytes, file_size_bytes - (chunk_index - 1) * chunk_bytes);
}

double lossless_session_time_s(const ProtocolConfig& config, const Scenario& scenario) {
    const double control = transmission_delay_s(scenario.header_bytes, scenario);
    const double prop = scenario.propagation_delay_s;
    double t = 2.0 * prop + control + control;
    const std::int64_t n = n_chunks(scenario.file_size_bytes, config.chunk_bytes);
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t payload = chunk_payload_bytes(i, scenario.file_size_bytes, config.chunk_bytes);
        t += 2.0 * prop + control + transmission_delay_s(scenario.header_bytes + payload, scenario);
    }
    return t;
}

namespace {

/// Two-state renewal process, generated lazily. Queries must come with
/// non-decreasing start times.
class LinkProcess {
public:
    LinkProcess(const Scenario& scenario, Rng& rng)
        : rng_(rng), up_mean_(scenario.link_up_mean_s), down_mean_(scenario.effective_down_mean_s()) {
        if (scenario.always_up()) {
            always_up_ = true;
            return;
        }
        up_ = rng_.bernoulli(up_mean_ / (up_mean_ + down_mean_));
        segment_end_ = rng_.exponential(up_ ? up_mean_ : down_mean_);
    }

    /// True when the link stays up over the whole interval [t0, t1].
    bool up_throughout(double t0, double t1) {
        if (always_up_) return true;
        while (segment_end_ <= t0) advance();
        if (!up_) return false;
        return segment_end_ >= t1;
    }

private:
    void advance() {
        up_ = !up_;
        segment_end_ += rng_.exponential(up_ ? up_mean_ : down_mean_);
    }

    Rng& rng_;
    double up_mean_;
    double down_mean_;
    bool always_up_ = false;
    bool up_ = true;
    double segment_end_ = 0.0;
};

enum class Phase { AwaitingFirp, Transferring, Done, Refused };

struct QueuedEvent {
    enum class Kind { ArriveAtOwner, ArriveAtPetitioner, TimeoutFired };

    double time;
    Kind kind;
    std::uint64_t sequence;
    std::uint64_t serial;  // transmission this event belongs to

    // Replies are processed before a timer firing at the same instant.
    int priority() const { return kind == Kind::TimeoutFired ? 1 : 0; }
};

struct Later {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.priority() != b.priority()) return a.priority() > b.priority();
        return a.sequence > b.sequence;
    }
};

class Session {
public:
    Session(const ProtocolConfig& config, const Scenario& scenario, Rng& rng, const EventSink& sink, int id)
        : config_(config),
          scenario_(scenario),
          rng_(rng),
          link_(scenario, rng),
          sink_(sink),
          id_(id),
          loss_(scenario.effective_loss()),
          chunks_(n_chunks(scenario.file_size_bytes, config.chunk_bytes)) {}

    SessionOutcome run() {
        send_request(0.0);
        while (phase_ != Phase::Done && phase_ != Phase::Refused && !queue_.empty()) {
            const QueuedEvent ev = queue_.top();
            queue_.pop();
            switch (ev.kind) {
                case QueuedEvent::Kind::ArriveAtOwner: on_request_arrival(ev); break;
                case QueuedEvent::Kind::ArriveAtPetitioner: on_reply_arrival(ev); break;
                case QueuedEvent::Kind::TimeoutFired: on_timeout(ev); break;
            }
        }
        out_.refused = phase_ == Phase::Refused;
        return out_;
    }

private:
    PacketType request_type() const { return phase_ == Phase::AwaitingFirp ? PacketType::FIRQ : PacketType::DRQ; }
    PacketType reply_type() const { return phase_ == Phase::AwaitingFirp ? PacketType::FIRP : PacketType::DRP; }
    int chunk_label() const { return phase_ == Phase::AwaitingFirp ? 0 : static_cast<int>(next_chunk_); }

    void emit(double t, EventKind kind, PacketType packet) {
        if (sink_) sink_({t, id_, kind, packet, attempts_, chunk_label()});
    }

    void push(double t, QueuedEvent::Kind kind, std::uint64_t serial) { queue_.push({t, kind, sequence_++, serial}); }

    /// Hands a packet to the channel; returns its arrival time, or a negative
    /// value when it is lost.
    double transmit(double t, std::int64_t bytes, PacketType type) {
        emit(t, EventKind::Send, type);
        const double arrival = t + transmission_delay_s(bytes, scenario_) + scenario_.propagation_delay_s;
        const bool link_ok = link_.up_throughout(t, arrival);
        const bool dropped = loss_ > 0.0 && rng_.bernoulli(loss_);
        if (!link_ok || dropped) {
            ++out_.lost_packets;
            emit(t, EventKind::Lost, type);
            return -1.0;
        }
        return arrival;
    }

    void send_request(double t) {
        ++attempts_;
        outstanding_ = ++serial_;
        const double arrival = transmit(t, scenario_.header_bytes, request_type());
        if (arrival >= 0.0) push(arrival, QueuedEvent::Kind::ArriveAtOwner, outstanding_);
        push(t + config_.timeout_s, QueuedEvent::Kind::TimeoutFired, outstanding_);
    }

    // The owner answers every request it receives, immediately.
    void on_request_arrival(const QueuedEvent& ev) {
        emit(ev.time, EventKind::Receive, request_type());
        std::int64_t bytes = scenario_.header_bytes;
        if (phase_ == Phase::Transferring)
            bytes += chunk_payload_bytes(next_chunk_, scenario_.file_size_bytes, config_.chunk_bytes);
        const double arrival = transmit(ev.time, bytes, reply_type());
        if (arrival >= 0.0) push(arrival, QueuedEvent::Kind::ArriveAtPetitioner, ev.serial);
    }

    void on_reply_arrival(const QueuedEvent& ev) {
        if (ev.serial != outstanding_) {
            emit(ev.time, EventKind::Ignored, reply_type());
            return;
        }
        emit(ev.time, EventKind::Receive, reply_type());
        if (phase_ == Phase::AwaitingFirp) {
            phase_ = Phase::Transferring;
            next_chunk_ = 1;
        } else {
            out_.bytes_delivered += chunk_payload_bytes(next_chunk_, scenario_.file_size_bytes, config_.chunk_bytes);
            if (next_chunk_ == chunks_) {
                out_.time_s = ev.time;
                emit(ev.time, EventKind::Complete, PacketType::DRP);
                phase_ = Phase::Done;
                outstanding_ = 0;
                return;
            }
            ++next_chunk_;
        }
        attempts_ = 0;
        send_request(ev.time);
    }

    void on_timeout(const QueuedEvent& ev) {
        if (ev.serial != outstanding_) return;
        emit(ev.time, EventKind::Timeout, request_type());
        if (attempts_ >= config_.attempts) {
            out_.time_s = ev.time;
            emit(ev.time, EventKind::Refused, request_type());
            phase_ = Phase::Refused;
            outstanding_ = 0;
            return;
        }
        send_request(ev.time);
    }

    const ProtocolConfig& config_;
    const Scenario& scenario_;
    Rng& rng_;
    LinkProcess link_;
    const EventSink& sink_;
    int id_;
    double loss_;
    std::int64_t chunks_;

    Phase phase_ = Phase::AwaitingFirp;
    std::int64_t next_chunk_ = 1;
    int attempts_ = 0;
    std::uint64_t serial_ = 0;
    std::uint64_t outstanding_ = 0;
    std::uint64_t sequence_ = 0;
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, Later> queue_;
    SessionOutcome out_;
};

}  // namespace

SessionOutcome simulate_session(const ProtocolConfig& config, const Scenario& scenario, Rng& rng,
                                const EventSink& sink, int session_id) {
    if (config.chunk_bytes < 1 || config.attempts < 1 || !(config.timeout_s > 0.0))
        throw ConfigError(fmt::format("invalid protocol config (chunk {}, attempts {}, timeout {})", config.chunk_bytes,
                                      config.attempts, config.timeout_s));
    return Session(config, scenario, rng, sink, session_id).run();
}

double TransferOutcome::data_per_session_kbytes() const {
    const int n = sessions();
    return n > 0 ? data_transferred_kbytes / n : 0.0;
}

TransferOutcome simulate_replication(const ProtocolConfig& config, const Scenario& scenario, std::uint64_t seed,
                                     const EventSink& sink) {
    TransferOutcome out;
    double time_sum = 0.0;
    long long lost_sum = 0;
    std::int64_t bytes_sum = 0;
    for (int s = 0; s < scenario.sessions; ++s) {
        Rng rng(derive_seed(seed, {stream::kSession, static_cast<std::uint64_t>(s)}));
        const SessionOutcome so = simulate_session(config, scenario, rng, sink, s);
        time_sum += so.time_s;
        lost_sum += so.lost_packets;
        bytes_sum += so.bytes_delivered;
        if (so.refused)
            ++out.refused_sessions;
        else
            ++out.completed_sessions;
    }
    const double n = static_cast<double>(scenario.sessions);
    out.transmission_time_s = time_sum / n;
    out.lost_packets = static_cast<double>(lost_sum) / n;
    out.data_transferred_kbytes = static_cast<double>(bytes_sum) / 1024.0;
    return out;
}

double effective_throughput(const TransferOutcome& outcome) {
    if (outcome.completed_sessions == 0 || !(outcome.transmission_time_s > 0.0)) return 0.0;
    return outcome.data_transferred_kbytes / outcome.completed_sessions / outcome.transmission_time_s;
}

}  // namespace vdtp
