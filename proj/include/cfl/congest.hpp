#pragma once

// Round-synchronous CONGEST simulator on an n-node clique.
//
// Each round every running node reads the messages sent to it in the previous
// round, and may either broadcast one payload to all other nodes or send at
// most one payload per destination. Payloads are a small tagged tuple of
// scalars and are charged against a per-link budget of
// kBandwidthWords * ceil(log2(n + 1)) bits.

#include <array>
#include <bit>
#include <coroutine>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cfl/metric.hpp"
#include "cfl/random.hpp"

namespace cfl::congest {

inline constexpr std::size_t kBandwidthWords = 8;
inline constexpr std::size_t kTagBits = 4;
inline constexpr std::size_t kMaxFields = 3;

// ceil(log2(n + 1)): bits needed to name one of n nodes (or "none").
constexpr auto word_bits(std::size_t n) noexcept -> std::size_t {
  return std::bit_width(n);
}
constexpr auto bandwidth_bits(std::size_t n) noexcept -> std::size_t {
  return kBandwidthWords * word_bits(n);
}

enum class Tag : std::uint8_t { user, id, count, flag, real, edge, report };

struct NodeRef {
  NodeId value;
  auto operator==(const NodeRef&) const -> bool = default;
};

// Node references cost one word; integers and reals cost two words (one
// "O(log n)-bit number", wide enough for values below (n+1)^2).
using Field = std::variant<NodeRef, std::int64_t, double>;

class Payload {
 public:
  static constexpr std::size_t kCapacity = kMaxFields + 1;

  Payload() = default;

  template <typename... Fields>
  explicit Payload(Tag tag, Fields... fields) : tag_(tag), arity_(sizeof...(Fields)) {
    static_assert(sizeof...(Fields) <= kCapacity);
    std::size_t k = 0;
    ((fields_[k++] = Field(fields)), ...);
  }

  [[nodiscard]] auto tag() const noexcept -> Tag { return tag_; }
  [[nodiscard]] auto arity() const noexcept -> std::size_t { return arity_; }
  [[nodiscard]] auto field(std::size_t k) const -> const Field& { return fields_.at(k); }
  [[nodiscard]] auto node(std::size_t k) const -> NodeId { return std::get<NodeRef>(field(k)).value; }
  [[nodiscard]] auto integer(std::size_t k) const -> std::int64_t { return std::get<std::int64_t>(field(k)); }
  [[nodiscard]] auto real(std::size_t k) const -> double { return std::get<double>(field(k)); }

  auto operator==(const Payload&) const -> bool = default;

 private:
  Tag tag_ = Tag::user;
  std::uint8_t arity_ = 0;
  std::array<Field, kCapacity> fields_{};
};

// Serialized size in bits. Throws BandwidthExceeded if the payload has too
// many fields, a field value does not fit its word, or the total exceeds B.
auto checked_payload_bits(const Payload& payload, std::size_t n) -> std::size_t;

struct Message {
  NodeId src;
  NodeId dst;
  Payload payload;
};

// Messages delivered to one node in one round. A source contributes at most
// one message, either through its broadcast or a direct send.
class Inbox {
 public:
  Inbox() = default;
  Inbox(NodeId self, std::span<const std::optional<Payload>> broadcasts,
        std::size_t broadcaster_count, std::span<const Message> direct)
      : self_(self), broadcasts_(broadcasts), broadcasters_(broadcaster_count), direct_(direct) {}

  [[nodiscard]] auto from(NodeId src) const -> const Payload*;
  [[nodiscard]] auto size() const -> std::size_t;
  [[nodiscard]] auto empty() const -> bool { return size() == 0; }

  // Visits (src, payload) in ascending source order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    auto direct = direct_.begin();
    for (NodeId src = 0; src < broadcasts_.size(); ++src) {
      if (src != self_ && broadcasts_[src]) {
        fn(src, *broadcasts_[src]);
      } else if (direct != direct_.end() && direct->src == src) {
        fn(src, direct->payload);
        ++direct;
      }
    }
  }

 private:
  NodeId self_ = 0;
  std::span<const std::optional<Payload>> broadcasts_;
  std::size_t broadcasters_ = 0;
  std::span<const Message> direct_;
};

class NodeContext {
 public:
  [[nodiscard]] auto self() const noexcept -> NodeId { return self_; }
  [[nodiscard]] auto n() const noexcept -> std::size_t { return n_; }
  // Rounds are numbered from 1.
  [[nodiscard]] auto round() const noexcept -> std::uint64_t { return round_; }
  [[nodiscard]] auto inbox() const noexcept -> const Inbox& { return inbox_; }
  [[nodiscard]] auto rng() noexcept -> CounterRng& { return rng_; }
  [[nodiscard]] auto halted() const noexcept -> bool { return halted_; }

  void send(NodeId dst, const Payload& payload);
  void broadcast(const Payload& payload);
  void halt(std::optional<std::int64_t> output = std::nullopt);

  // Suspends a coroutine program until the next round begins.
  [[nodiscard]] auto next_round() noexcept {
    struct Awaiter {
      NodeContext* ctx;
      auto await_ready() const noexcept -> bool { return false; }
      void await_suspend(std::coroutine_handle<> h) const noexcept { ctx->pending_ = h; }
      void await_resume() const noexcept {}
    };
    return Awaiter{this};
  }

  auto take_pending() noexcept -> std::coroutine_handle<> {
    return std::exchange(pending_, std::coroutine_handle<>{});
  }

 private:
  friend class Simulator;

  NodeId self_ = 0;
  std::size_t n_ = 0;
  std::uint64_t round_ = 0;
  Inbox inbox_;
  CounterRng rng_;
  bool halted_ = false;
  std::optional<std::int64_t> output_;
  std::optional<Payload> broadcast_;
  std::size_t broadcast_bits_ = 0;
  std::vector<Message> direct_;
  std::size_t direct_max_bits_ = 0;
  std::coroutine_handle<> pending_;
};

// A node's algorithm as a state machine; the object itself is the state and
// is constructed with the node's local input.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void on_round(NodeContext& ctx) = 0;
};

using Programs = std::vector<std::unique_ptr<NodeProgram>>;

struct RoundStats {
  std::uint64_t messages = 0;
  std::uint64_t max_payload_bits = 0;
  auto operator==(const RoundStats&) const -> bool = default;
};

struct Trace {
  std::size_t n = 0;
  std::uint64_t rounds = 0;
  std::uint64_t messages_total = 0;
  std::vector<RoundStats> per_round;
  std::vector<std::optional<std::int64_t>> outputs;
  auto operator==(const Trace&) const -> bool = default;
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::uint64_t max_rounds = 10'000;
  bool parallel = true;  // step nodes of one round on OpenMP threads
};

// Runs until every node has halted. Throws BandwidthExceeded, LinkOveruse or
// RoundLimitExceeded; exceptions raised by a node program propagate.
auto run(Programs& programs, const RunOptions& options) -> Trace;

// Post-hoc re-check of the bandwidth and accounting invariants of a trace.
void check_trace(const Trace& trace);

}  // namespace cfl::congest
