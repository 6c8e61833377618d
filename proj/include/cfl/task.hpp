#pragma once

// Lazily started coroutine used to write node programs as straight-line code.
// `co_await ctx.next_round()` ends the current round; `co_await sub(...)` runs a
// sub-protocol inside the same node, in the current round, until it returns.

#include <coroutine>
#include <exception>
#include <optional>
#include <utility>

#include "cfl/congest.hpp"

namespace cfl::congest {

template <typename T>
class [[nodiscard]] Task {
 public:
  struct promise_type {
    std::optional<T> value;
    std::exception_ptr error;
    std::coroutine_handle<> continuation;

    auto get_return_object() -> Task {
      return Task(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    auto initial_suspend() noexcept -> std::suspend_always { return {}; }

    struct FinalAwaiter {
      auto await_ready() const noexcept -> bool { return false; }
      auto await_suspend(std::coroutine_handle<promise_type> h) const noexcept
          -> std::coroutine_handle<> {
        if (auto c = h.promise().continuation) return c;
        return std::noop_coroutine();
      }
      void await_resume() const noexcept {}
    };
    auto final_suspend() noexcept -> FinalAwaiter { return {}; }

    void return_value(T v) { value = std::move(v); }
    void unhandled_exception() noexcept { error = std::current_exception(); }
  };

  Task() = default;
  Task(Task&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  auto operator=(Task&& other) noexcept -> Task& {
    if (this != &other) {
      destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Task(const Task&) = delete;
  auto operator=(const Task&) -> Task& = delete;
  ~Task() { destroy(); }

  [[nodiscard]] auto valid() const noexcept -> bool { return static_cast<bool>(handle_); }
  [[nodiscard]] auto done() const noexcept -> bool { return handle_ && handle_.done(); }
  void start() { handle_.resume(); }

  // Result of a finished task; rethrows what the body threw.
  auto result() -> T {
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
    return std::move(*handle_.promise().value);
  }

  auto operator co_await() && noexcept {
    struct Awaiter {
      std::coroutine_handle<promise_type> child;
      auto await_ready() const noexcept -> bool { return false; }
      auto await_suspend(std::coroutine_handle<> parent) noexcept -> std::coroutine_handle<> {
        child.promise().continuation = parent;
        return child;
      }
      auto await_resume() -> T {
        if (child.promise().error) std::rethrow_exception(child.promise().error);
        return std::move(*child.promise().value);
      }
    };
    return Awaiter{handle_};
  }

 private:
  explicit Task(std::coroutine_handle<promise_type> h) : handle_(h) {}
  void destroy() {
    if (handle_) handle_.destroy();
    handle_ = {};
  }

  std::coroutine_handle<promise_type> handle_;
};

using NodeOutput = std::optional<std::int64_t>;

// Adapts a coroutine body to the NodeProgram contract: the first round starts
// the body, later rounds resume it, and the node halts with the body's
// return value once it finishes.
class CoroutineProgram : public NodeProgram {
 public:
  void on_round(NodeContext& ctx) final {
    if (!task_.valid()) {
      task_ = body(ctx);
      task_.start();
    } else if (auto h = ctx.take_pending()) {
      h.resume();
    }
    if (task_.done()) ctx.halt(task_.result());
  }

 protected:
  virtual auto body(NodeContext& ctx) -> Task<NodeOutput> = 0;

 private:
  Task<NodeOutput> task_;
};

}  // namespace cfl::congest
