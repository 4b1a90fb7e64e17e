// Copyright 2026 The searchcomb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <deque>
#include <optional>
#include <ostream>
#include <vector>

#include "searchcomb/protocol.hpp"

namespace searchcomb {

enum class QueueKind { kDfs, kBfs };
enum class SearchMode { kAll, kFirst };

struct EngineOptions {
  QueueKind queue = QueueKind::kDfs;
  SearchMode mode = SearchMode::kAll;
  bool trace = false;
  // time statistics count entered nodes instead of milliseconds
  bool virtual_time = false;
  // where print() writes; nullptr silences it
  std::ostream* output = nullptr;
};

struct Assignment {
  // nullopt for variables the heuristic left unfixed
  std::vector<std::optional<Value>> values;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct EngineResult {
  std::vector<Assignment> solutions;
  bool exhaustive = true;
  std::uint64_t nodes_entered = 0;
  std::array<std::uint64_t, 3> top_exits{};
  std::vector<TraceEvent> trace;

  std::uint64_t exits(ExitStatus s) const { return top_exits[static_cast<int>(s)]; }
};

// The search engine: owns the node queue and sits on top of the heuristic
// as its parent. dfs uses a stack, bfs a fifo.
class Engine final : public Top {
 public:
  explicit Engine(EngineOptions options = {}) : options_(options) {}

  EngineResult run(const Heuristic& heuristic, State root_state) {
    Node root(std::move(root_state), heuristic.num_locals(), heuristic.num_frames(), 0);
    return run(heuristic, std::move(root));
  }

  EngineResult run(const Heuristic& heuristic, Node root) {
    heuristic_ = &heuristic.root();
    adopt(*heuristic_);
    result_ = EngineResult{};
    trace_ = options_.trace ? &result_.trace : nullptr;
    stack_.clear();
    fifo_.clear();
    stop_ = false;
    next_node_id_ = root.id + 1;

    heuristic_->start(root);
    ++result_.nodes_entered;
    heuristic_->enter(root);
    while (!stop_) {
      std::optional<Node> n = pop();
      if (!n) break;
      ++result_.nodes_entered;
      heuristic_->enter(*n);
    }
    // stopping early leaves part of the tree unexplored
    if (!stack_.empty() || !fifo_.empty()) result_.exhaustive = false;
    stack_.clear();
    fifo_.clear();
    trace_ = nullptr;
    return std::move(result_);
  }

  std::string_view kind() const override { return "engine"; }

  void push(Node n) override {
    if (options_.queue == QueueKind::kDfs) {
      stack_.push_back(std::move(n));
    } else {
      fifo_.push_back(std::move(n));
    }
  }

  void push_children(std::vector<Node>& children) override {
    if (options_.queue == QueueKind::kDfs) {
      for (auto it = children.rbegin(); it != children.rend(); ++it) stack_.push_back(std::move(*it));
    } else {
      for (Node& c : children) fifo_.push_back(std::move(c));
    }
    children.clear();
  }

  std::uint64_t next_node_id() override { return next_node_id_++; }
  std::uint64_t next_frame_id() override { return next_frame_id_++; }
  std::uint64_t nodes_entered() const override { return result_.nodes_entered; }
  void note_reentry() override { ++result_.nodes_entered; }
  bool virtual_time() const override { return options_.virtual_time; }
  std::ostream* output() const override { return options_.output; }

 protected:
  void on_start(Node&) override {}
  void on_enter(Node&) override {}
  void on_init(Node& parent, Node& child) override { heuristic_->init(parent, child); }

  void on_exit(Node& n, ExitStatus s) override {
    ++result_.top_exits[static_cast<int>(s)];
    if (s == ExitStatus::kAbort) result_.exhaustive = false;
    if (s == ExitStatus::kSuccess) {
      Assignment a;
      a.values.reserve(n.state.num_vars());
      for (std::uint32_t v = 0; v < n.state.num_vars(); ++v) {
        const Domain& d = n.state.domain(VarId{v});
        a.values.push_back(d.is_fixed() ? std::optional<Value>(d.min()) : std::nullopt);
      }
      result_.solutions.push_back(std::move(a));
      if (options_.mode == SearchMode::kFirst) stop_ = true;
    }
  }

 private:
  std::optional<Node> pop() {
    if (!stack_.empty()) {
      Node n = std::move(stack_.back());
      stack_.pop_back();
      return n;
    }
    if (!fifo_.empty()) {
      Node n = std::move(fifo_.front());
      fifo_.pop_front();
      return n;
    }
    return std::nullopt;
  }

  EngineOptions options_;
  Combinator* heuristic_ = nullptr;
  EngineResult result_;
  std::vector<Node> stack_;
  std::deque<Node> fifo_;
  bool stop_ = false;
  std::uint64_t next_node_id_ = 1;
  std::uint64_t next_frame_id_ = 1;
};

// Copies a node: state and locals by value, frames by reference.
inline Node node_copy(Top& top, const Node& n) { return top.copy_node(n); }

// A child of `parent` with `branch` posted but not yet propagated. The
// caller still owes top.init(parent, child) before queueing it.
inline Node make_child(Top& top, const Node& parent, Constraint branch, std::uint32_t rank = 0) {
  Node child = top.copy_node(parent);
  child.rank = rank;
  child.state.post(std::move(branch));
  return child;
}

}  // namespace searchcomb
