#include "cfl/congest.hpp"

#include <algorithm>
#include <exception>

#include <fmt/format.h>

namespace cfl::congest {

auto checked_payload_bits(const Payload& payload, std::size_t n) -> std::size_t {
  if (payload.arity() > kMaxFields) {
    throw Error(ErrorKind::bandwidth_exceeded,
                fmt::format("payload has {} fields, at most {} allowed", payload.arity(),
                            kMaxFields));
  }
  const std::size_t w = word_bits(n);
  std::size_t bits = kTagBits;
  for (std::size_t k = 0; k < payload.arity(); ++k) {
    const Field& f = payload.field(k);
    if (const auto* node = std::get_if<NodeRef>(&f)) {
      if (node->value >= n) {
        throw Error(ErrorKind::bandwidth_exceeded,
                    fmt::format("node field {} does not name one of {} nodes", node->value, n));
      }
      bits += w;
    } else if (const auto* value = std::get_if<std::int64_t>(&f)) {
      const std::size_t width = 2 * w;
      if (*value < 0 || (width < 63 && static_cast<std::uint64_t>(*value) >= (std::uint64_t{1} << width))) {
        throw Error(ErrorKind::bandwidth_exceeded,
                    fmt::format("integer field {} does not fit in {} bits", *value, width));
      }
      bits += width;
    } else {
      bits += 2 * w;
    }
  }
  if (bits > bandwidth_bits(n)) {
    throw Error(ErrorKind::bandwidth_exceeded,
                fmt::format("payload needs {} bits, budget is {}", bits, bandwidth_bits(n)));
  }
  return bits;
}

auto Inbox::from(NodeId src) const -> const Payload* {
  if (src < broadcasts_.size() && src != self_ && broadcasts_[src]) return &*broadcasts_[src];
  auto it = std::ranges::lower_bound(direct_, src, {}, &Message::src);
  if (it != direct_.end() && it->src == src) return &it->payload;
  return nullptr;
}

auto Inbox::size() const -> std::size_t {
  const bool self_broadcast = self_ < broadcasts_.size() && broadcasts_[self_].has_value();
  return broadcasters_ - (self_broadcast ? 1 : 0) + direct_.size();
}

void NodeContext::send(NodeId dst, const Payload& payload) {
  if (broadcast_) {
    throw Error(ErrorKind::link_overuse,
                fmt::format("node {} already broadcast this round", self_));
  }
  if (dst == self_ || dst >= n_) {
    throw Error(ErrorKind::link_overuse, fmt::format("node {} has no link to {}", self_, dst));
  }
  const std::size_t bits = checked_payload_bits(payload, n_);
  direct_max_bits_ = std::max(direct_max_bits_, bits);
  direct_.push_back({self_, dst, payload});
}

void NodeContext::broadcast(const Payload& payload) {
  if (broadcast_ || !direct_.empty()) {
    throw Error(ErrorKind::link_overuse,
                fmt::format("node {} already used its links this round", self_));
  }
  broadcast_bits_ = checked_payload_bits(payload, n_);
  broadcast_ = payload;
}

void NodeContext::halt(std::optional<std::int64_t> output) {
  halted_ = true;
  output_ = output;
}

class Simulator {
 public:
  Simulator(Programs& programs, const RunOptions& options)
      : programs_(programs),
        options_(options),
        n_(programs.size()),
        contexts_(n_),
        broadcasts_(n_),
        next_broadcasts_(n_),
        direct_(n_),
        next_direct_(n_),
        errors_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      contexts_[i].self_ = static_cast<NodeId>(i);
      contexts_[i].n_ = n_;
    }
  }

  auto run() -> Trace {
    Trace trace;
    trace.n = n_;
    std::size_t running = n_;
    for (std::uint64_t round = 1; running > 0; ++round) {
      if (round > options_.max_rounds) {
        throw Error(ErrorKind::round_limit_exceeded,
                    fmt::format("{} of {} nodes still running after {} rounds", running, n_,
                                options_.max_rounds));
      }
      step(round);
      trace.per_round.push_back(deliver());
      trace.messages_total += trace.per_round.back().messages;
      trace.rounds = round;
      running = static_cast<std::size_t>(
          std::ranges::count_if(contexts_, [](const NodeContext& c) { return !c.halted_; }));
    }
    trace.outputs.reserve(n_);
    for (auto& c : contexts_) trace.outputs.push_back(c.output_);
    return trace;
  }

 private:
  void step(std::uint64_t round) {
    const auto n = static_cast<std::int64_t>(n_);
#pragma omp parallel for schedule(dynamic, 64) if (options_.parallel)
    for (std::int64_t i = 0; i < n; ++i) {
      auto& ctx = contexts_[static_cast<std::size_t>(i)];
      if (ctx.halted_) continue;
      ctx.round_ = round;
      ctx.rng_ = CounterRng(options_.seed, static_cast<std::uint64_t>(i), round);
      ctx.inbox_ = Inbox(ctx.self_, broadcasts_, broadcaster_count_, direct_[ctx.self_]);
      try {
        programs_[static_cast<std::size_t>(i)]->on_round(ctx);
      } catch (...) {
        errors_[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors_) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Validates link use, moves every outbox into next round's inboxes and
  // returns this round's statistics.
  auto deliver() -> RoundStats {
    RoundStats stats;
    for (auto& slot : next_broadcasts_) slot.reset();
    for (auto& box : next_direct_) box.clear();
    std::size_t broadcasters = 0;
    for (auto& ctx : contexts_) {
      if (ctx.broadcast_) {
        next_broadcasts_[ctx.self_] = std::move(ctx.broadcast_);
        ctx.broadcast_.reset();
        ++broadcasters;
        stats.messages += n_ - 1;
        if (n_ > 1) stats.max_payload_bits = std::max<std::uint64_t>(stats.max_payload_bits, ctx.broadcast_bits_);
      }
      if (!ctx.direct_.empty()) {
        std::ranges::sort(ctx.direct_, {}, &Message::dst);
        auto dup = std::ranges::adjacent_find(ctx.direct_, {}, &Message::dst);
        if (dup != ctx.direct_.end()) {
          throw Error(ErrorKind::link_overuse,
                      fmt::format("node {} sent two messages to {} in round {}", ctx.self_,
                                  dup->dst, ctx.round_));
        }
        for (auto& m : ctx.direct_) next_direct_[m.dst].push_back(std::move(m));
        stats.messages += ctx.direct_.size();
        stats.max_payload_bits = std::max<std::uint64_t>(stats.max_payload_bits, ctx.direct_max_bits_);
        ctx.direct_.clear();
        ctx.direct_max_bits_ = 0;
      }
    }
    std::swap(broadcasts_, next_broadcasts_);
    std::swap(direct_, next_direct_);
    broadcaster_count_ = broadcasters;
    return stats;
  }

  Programs& programs_;
  RunOptions options_;
  std::size_t n_;
  std::vector<NodeContext> contexts_;
  std::vector<std::optional<Payload>> broadcasts_;
  std::vector<std::optional<Payload>> next_broadcasts_;
  std::size_t broadcaster_count_ = 0;
  // direct_[dst] is filled in ascending src order, hence sorted by src.
  std::vector<std::vector<Message>> direct_;
  std::vector<std::vector<Message>> next_direct_;
  std::vector<std::exception_ptr> errors_;
};

auto run(Programs& programs, const RunOptions& options) -> Trace {
  if (programs.empty()) throw Error(ErrorKind::malformed_input, "simulation needs n >= 1 nodes");
  if (options.max_rounds < 1) throw Error(ErrorKind::malformed_input, "max_rounds must be >= 1");
  Simulator sim(programs, options);
  return sim.run();
}

void check_trace(const Trace& trace) {
  if (trace.rounds != trace.per_round.size()) {
    throw Error(ErrorKind::malformed_input,
                fmt::format("trace reports {} rounds but has {} round records", trace.rounds,
                            trace.per_round.size()));
  }
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < trace.per_round.size(); ++t) {
    if (trace.per_round[t].max_payload_bits > bandwidth_bits(trace.n)) {
      throw Error(ErrorKind::bandwidth_exceeded,
                  fmt::format("round {} carried a {}-bit payload, budget {}", t + 1,
                              trace.per_round[t].max_payload_bits, bandwidth_bits(trace.n)));
    }
    total += trace.per_round[t].messages;
  }
  if (total != trace.messages_total) {
    throw Error(ErrorKind::malformed_input, "per-round message counts do not add up");
  }
}

}  // namespace cfl::congest
