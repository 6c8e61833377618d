#include <gtest/gtest.h>

#include <functional>

#include "cfl/congest.hpp"
#include "cfl/task.hpp"

namespace cfl::congest {
namespace {

class Lambda final : public NodeProgram {
 public:
  explicit Lambda(std::function<void(NodeContext&)> fn) : fn_(std::move(fn)) {}
  void on_round(NodeContext& ctx) override { fn_(ctx); }

 private:
  std::function<void(NodeContext&)> fn_;
};

auto programs(std::size_t n, const std::function<void(NodeContext&)>& fn) -> Programs {
  Programs out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::make_unique<Lambda>(fn));
  return out;
}

auto expect_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(Simulator, ImmediateHalt) {
  auto p = programs(5, [](NodeContext& ctx) { ctx.halt(); });
  const auto trace = run(p, {});
  EXPECT_EQ(trace.rounds, 1u);
  EXPECT_EQ(trace.messages_total, 0u);
  check_trace(trace);
}

TEST(Simulator, BroadcastIdsOnce) {
  std::vector<std::size_t> received(4, 0);
  auto p = programs(4, [&](NodeContext& ctx) {
    if (ctx.round() == 1) {
      ctx.broadcast(Payload(Tag::id, NodeRef{ctx.self()}));
      return;
    }
    ctx.inbox().for_each([&](NodeId src, const Payload& m) { EXPECT_EQ(m.node(0), src); });
    received[ctx.self()] = ctx.inbox().size();
    ctx.halt();
  });
  const auto trace = run(p, {});
  EXPECT_EQ(trace.messages_total, 12u);
  EXPECT_EQ(trace.rounds, 2u);
  EXPECT_EQ(received, (std::vector<std::size_t>(4, 3)));
}

TEST(Simulator, BroadcastReachesOthersOnly) {
  std::vector<std::vector<NodeId>> seen(3);
  auto p = programs(3, [&](NodeContext& ctx) {
    if (ctx.round() == 1) {
      if (ctx.self() == 0) ctx.broadcast(Payload(Tag::real, 1.5));
      return;
    }
    ctx.inbox().for_each([&](NodeId src, const Payload& m) {
      EXPECT_EQ(m.real(0), 1.5);
      seen[ctx.self()].push_back(src);
    });
    ctx.halt();
  });
  const auto trace = run(p, {});
  EXPECT_EQ(trace.per_round[0].messages, 2u);
  EXPECT_TRUE(seen[0].empty());
  EXPECT_EQ(seen[1], std::vector<NodeId>{0});
  EXPECT_EQ(seen[2], std::vector<NodeId>{0});
}

TEST(Simulator, SingleNodeBroadcastIsEmpty) {
  auto p = programs(1, [](NodeContext& ctx) {
    if (ctx.round() == 1) {
      ctx.broadcast(Payload(Tag::count, std::int64_t{1}));
      return;
    }
    EXPECT_TRUE(ctx.inbox().empty());
    ctx.halt();
  });
  EXPECT_EQ(run(p, {}).messages_total, 0u);
}

TEST(Simulator, MessagesArriveNextRound) {
  auto p = programs(2, [](NodeContext& ctx) {
    if (ctx.round() == 1) {
      ctx.send(1 - ctx.self(), Payload(Tag::count, std::int64_t{7}));
      EXPECT_TRUE(ctx.inbox().empty());
      return;
    }
    const Payload* m = ctx.inbox().from(1 - ctx.self());
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->integer(0), 7);
    ctx.halt();
  });
  EXPECT_EQ(run(p, {}).messages_total, 2u);
}

TEST(Simulator, InboxSortedBySource) {
  auto p = programs(6, [](NodeContext& ctx) {
    if (ctx.round() == 1) {
      // Odd nodes broadcast, even nodes send directly to node 0.
      if (ctx.self() % 2) {
        ctx.broadcast(Payload(Tag::count, std::int64_t{ctx.self()}));
      } else if (ctx.self() != 0) {
        ctx.send(0, Payload(Tag::count, std::int64_t{ctx.self()}));
      }
      return;
    }
    if (ctx.self() == 0) {
      std::vector<NodeId> order;
      ctx.inbox().for_each([&](NodeId src, const Payload& m) {
        EXPECT_EQ(m.integer(0), src);
        order.push_back(src);
      });
      EXPECT_EQ(order, (std::vector<NodeId>{1, 2, 3, 4, 5}));
    }
    ctx.halt();
  });
  run(p, {});
}

TEST(Simulator, OutputsAndHaltedNodesStop) {
  std::vector<int> calls(3, 0);
  auto p = programs(3, [&](NodeContext& ctx) {
    ++calls[ctx.self()];
    if (ctx.round() == ctx.self() + 1) ctx.halt(10 + ctx.self());
  });
  const auto trace = run(p, {});
  EXPECT_EQ(trace.rounds, 3u);
  EXPECT_EQ(calls, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(trace.outputs, (std::vector<std::optional<std::int64_t>>{10, 11, 12}));
}

TEST(Simulator, BandwidthLimits) {
  // Four fields never fit the variant limit.
  expect_kind(ErrorKind::bandwidth_exceeded, [] {
    auto p = programs(3, [](NodeContext& ctx) {
      ctx.broadcast(Payload(Tag::user, std::int64_t{1}, std::int64_t{2}, std::int64_t{3}, std::int64_t{4}));
    });
    run(p, {});
  });
  // Integers are limited to two words.
  expect_kind(ErrorKind::bandwidth_exceeded, [] {
    auto p = programs(3, [](NodeContext& ctx) { ctx.broadcast(Payload(Tag::count, std::int64_t{1} << 40)); });
    run(p, {});
  });
  // Three fields fit.
  auto p = programs(3, [](NodeContext& ctx) {
    if (ctx.round() == 1) {
      ctx.broadcast(Payload(Tag::edge, NodeRef{0}, NodeRef{1}, std::int64_t{3}));
    } else {
      ctx.halt();
    }
  });
  const auto trace = run(p, {});
  EXPECT_LE(trace.per_round[0].max_payload_bits, bandwidth_bits(3));
  EXPECT_EQ(bandwidth_bits(3), 8 * 2u);
  EXPECT_EQ(bandwidth_bits(4), 8 * 3u);
}

TEST(Simulator, PayloadBits) {
  // n = 7: w = 3, tag 4 + node 3 + integer 6 + real 6.
  EXPECT_EQ(checked_payload_bits(Payload(Tag::user, NodeRef{6}, std::int64_t{5}, 0.5), 7), 19u);
  EXPECT_THROW(checked_payload_bits(Payload(Tag::user, NodeRef{7}), 7), Error);
  EXPECT_THROW(checked_payload_bits(Payload(Tag::user, std::int64_t{-1}), 7), Error);
}

TEST(Simulator, LinkOveruse) {
  expect_kind(ErrorKind::link_overuse, [] {
    auto p = programs(3, [](NodeContext& ctx) {
      ctx.send(1, Payload(Tag::flag, std::int64_t{1}));
      ctx.send(1, Payload(Tag::flag, std::int64_t{0}));
    });
    run(p, {});
  });
  expect_kind(ErrorKind::link_overuse, [] {
    auto p = programs(3, [](NodeContext& ctx) {
      ctx.broadcast(Payload(Tag::flag, std::int64_t{1}));
      ctx.send((ctx.self() + 1) % 3, Payload(Tag::flag, std::int64_t{0}));
    });
    run(p, {});
  });
  expect_kind(ErrorKind::link_overuse, [] {
    auto p = programs(2, [](NodeContext& ctx) { ctx.send(ctx.self(), Payload(Tag::flag, std::int64_t{1})); });
    run(p, {});
  });
}

TEST(Simulator, RoundLimit) {
  expect_kind(ErrorKind::round_limit_exceeded, [] {
    auto p = programs(2, [](NodeContext&) {});
    run(p, {.max_rounds = 5});
  });
  auto p = programs(2, [](NodeContext& ctx) { ctx.halt(); });
  expect_kind(ErrorKind::malformed_input, [&] { run(p, {.max_rounds = 0}); });
  Programs none;
  expect_kind(ErrorKind::malformed_input, [&] { run(none, {}); });
}

TEST(Simulator, ProgramExceptionsPropagate) {
  auto p = programs(4, [](NodeContext& ctx) {
    if (ctx.self() == 2) throw std::runtime_error("node two");
    ctx.halt();
  });
  EXPECT_THROW(run(p, {}), std::runtime_error);
}

auto random_chatter(std::uint64_t seed, bool parallel) -> Trace {
  auto p = programs(40, [](NodeContext& ctx) {
    auto& rng = ctx.rng();
    if (ctx.round() == 12 || rng.bernoulli(0.05)) {
      ctx.halt(static_cast<std::int64_t>(rng.next_u64() % 1000));
      return;
    }
    if (rng.bernoulli(0.3)) {
      ctx.broadcast(Payload(Tag::count, static_cast<std::int64_t>(ctx.inbox().size())));
    } else {
      for (NodeId d = 0; d < ctx.n(); ++d) {
        if (d != ctx.self() && rng.bernoulli(0.2)) ctx.send(d, Payload(Tag::real, rng.uniform()));
      }
    }
  });
  return run(p, {.seed = seed, .parallel = parallel});
}

TEST(Simulator, ReplayIsDeterministic) {
  for (std::uint64_t seed : {0, 1, 99}) {
    const auto a = random_chatter(seed, true);
    EXPECT_EQ(a, random_chatter(seed, true));
    EXPECT_EQ(a, random_chatter(seed, false));
    check_trace(a);
  }
  EXPECT_NE(random_chatter(1, true).outputs, random_chatter(2, true).outputs);
}

TEST(Simulator, CheckTraceRejectsInconsistency) {
  auto p = programs(3, [](NodeContext& ctx) {
    if (ctx.round() == 1) {
      ctx.broadcast(Payload(Tag::flag, std::int64_t{1}));
    } else {
      ctx.halt();
    }
  });
  auto trace = run(p, {});
  EXPECT_NO_THROW(check_trace(trace));
  trace.messages_total += 1;
  EXPECT_THROW(check_trace(trace), Error);
}

class Echo final : public CoroutineProgram {
 protected:
  auto body(NodeContext& ctx) -> Task<NodeOutput> override {
    const std::int64_t first = co_await sum_round(ctx, 1);
    const std::int64_t second = co_await sum_round(ctx, first);
    co_return second;
  }

 private:
  static auto sum_round(NodeContext& ctx, std::int64_t value) -> Task<std::int64_t> {
    ctx.broadcast(Payload(Tag::count, value));
    co_await ctx.next_round();
    std::int64_t s = value;
    ctx.inbox().for_each([&](NodeId, const Payload& p) { s += p.integer(0); });
    co_return s;
  }
};

TEST(Coroutine, NestedTasksSpanRounds) {
  Programs p;
  for (int i = 0; i < 5; ++i) p.push_back(std::make_unique<Echo>());
  const auto trace = run(p, {});
  EXPECT_EQ(trace.rounds, 3u);
  EXPECT_EQ(trace.messages_total, 40u);
  for (const auto& out : trace.outputs) EXPECT_EQ(out, 25);
}

TEST(Random, CounterStreamsAreKeyed) {
  CounterRng a(1, 2, 3);
  CounterRng b(1, 2, 3);
  CounterRng c(1, 3, 3);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace cfl::congest
