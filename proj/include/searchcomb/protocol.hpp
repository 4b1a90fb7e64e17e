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

// The four-message combinator protocol.
//
// start, enter and init travel top-down from a combinator to its children;
// exit travels bottom-up to the parent. Any single tree node is handled by a
// stack of combinators whose top is the search engine and whose bottom is a
// base heuristic.

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "searchcomb/node.hpp"

namespace searchcomb {

enum class ExitStatus { kSuccess, kFailure, kAbort };
enum class Message { kStart, kEnter, kExit, kInit };

inline std::string_view to_string(ExitStatus s) {
  switch (s) {
    case ExitStatus::kSuccess: return "success";
    case ExitStatus::kFailure: return "failure";
    case ExitStatus::kAbort: return "abort";
  }
  return "?";
}

inline std::string_view to_string(Message m) {
  switch (m) {
    case Message::kStart: return "start";
    case Message::kEnter: return "enter";
    case Message::kExit: return "exit";
    case Message::kInit: return "init";
  }
  return "?";
}

struct TraceEvent {
  Message event;
  std::uint64_t node;
  // Only meaningful for init: the node the child was created from.
  std::optional<std::uint64_t> parent;
  std::string path;
  std::optional<ExitStatus> status;
  std::vector<std::uint64_t> frames;
};

class Top;

inline constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

class Combinator {
 public:
  virtual ~Combinator() = default;

  void start(Node& root) {
    std::size_t at = trace(Message::kStart, root, nullptr, nullptr);
    on_start(root);
    // the frame a start installs is only known afterwards
    note_frame(at, root);
  }
  void enter(Node& n) {
    trace(Message::kEnter, n, nullptr, nullptr);
    on_enter(n);
  }
  void exit(Node& n, ExitStatus s) {
    trace(Message::kExit, n, nullptr, &s);
    on_exit(n, s);
  }
  void init(Node& parent, Node& child) {
    trace(Message::kInit, child, &parent, nullptr);
    on_init(parent, child);
  }

  virtual std::string_view kind() const = 0;
  virtual std::span<const std::shared_ptr<Combinator>> children() const { return {}; }

  // Layout requests, consumed by wire().
  virtual std::size_t local_slots() const { return 0; }
  virtual bool needs_frame() const { return false; }

  Combinator* parent() const { return parent_; }
  Top& top() const { return *top_; }
  const std::string& path() const { return path_; }
  std::uint32_t instance_id() const { return instance_id_; }
  std::size_t frame_slot() const { return frame_slot_; }
  std::size_t local_base() const { return local_base_; }

 protected:
  virtual void on_start(Node& root) = 0;
  virtual void on_enter(Node& n) = 0;
  virtual void on_exit(Node& n, ExitStatus s) { parent_->exit(n, s); }
  virtual void on_init(Node& parent, Node& child) = 0;

  // Called by wire() once slots are assigned.
  virtual void on_wired() {}

  // Drops the frames this instance and its descendants installed on `n`,
  // so a saved root copy never points into the subtree it will restart.
  void clear_subtree_frames(Node& n) const {
    for (std::size_t k = frame_begin_; k < frame_end_; ++k) n.frames[k].reset();
  }

  NumericValue& local(Node& n, std::size_t k = 0) const { return n.locals[local_base_ + k]; }
  NumericValue local(const Node& n, std::size_t k = 0) const { return n.locals[local_base_ + k]; }

  template <class Frame>
  Frame& own_frame(const Node& n) const {
    return n.frame<Frame>(frame_slot_);
  }

  inline std::size_t trace(Message m, Node& n, Node* parent, ExitStatus* s);
  inline void note_frame(std::size_t at, const Node& n);

 private:
  friend class Heuristic;
  friend class Top;

  Combinator* parent_ = nullptr;
  Top* top_ = nullptr;
  std::string path_;
  std::uint32_t instance_id_ = 0;
  std::size_t local_base_ = 0;
  std::size_t frame_slot_ = kNoSlot;
  std::size_t frame_begin_ = 0;
  std::size_t frame_end_ = 0;
  bool wired_ = false;
};

// Conditions answer eval() in addition to (or instead of) the four
// messages. eval never touches the solver state.
class Condition {
 public:
  virtual ~Condition() = default;
  virtual bool eval(const Node& n) const = 0;
};

using CombinatorPtr = std::shared_ptr<Combinator>;
using ConditionPtr = std::shared_ptr<const Condition>;

// Services the engine offers to the combinators below it; also the
// pseudo-combinator at the top of every stack.
class Top : public Combinator {
 public:
  virtual void push(Node n) = 0;
  // Enqueues children so that the first one is processed first.
  virtual void push_children(std::vector<Node>& children) = 0;
  virtual std::uint64_t next_node_id() = 0;
  virtual std::uint64_t next_frame_id() = 0;
  // Nodes entered so far, including root copies entered by restarts.
  virtual std::uint64_t nodes_entered() const = 0;
  virtual void note_reentry() = 0;
  virtual bool virtual_time() const { return false; }
  virtual std::ostream* output() const { return nullptr; }

  bool tracing() const { return trace_ != nullptr; }
  std::size_t record(TraceEvent e) {
    trace_->push_back(std::move(e));
    return trace_->size() - 1;
  }
  TraceEvent& recorded(std::size_t at) { return (*trace_)[at]; }

  Node copy_node(const Node& n) { return n.clone_as(next_node_id()); }

 protected:
  std::vector<TraceEvent>* trace_ = nullptr;

  void adopt(Combinator& heuristic) {
    top_ = this;
    path_ = "top";
    heuristic.parent_ = this;
    set_top(heuristic);
  }

 private:
  void set_top(Combinator& c) {
    c.top_ = this;
    for (const CombinatorPtr& child : c.children()) {
      if (child->top_ != this) set_top(*child);
    }
  }
};

inline std::size_t Combinator::trace(Message m, Node& n, Node* parent, ExitStatus* s) {
  if (!top_ || !top_->tracing()) return kNoSlot;
  // the engine only shows up in traces as the receiver of exits
  if (top_ == this && m != Message::kExit) return kNoSlot;
  TraceEvent e{m, n.id, std::nullopt, path_, std::nullopt, {}};
  if (parent) e.parent = parent->id;
  if (s) e.status = *s;
  if (frame_slot_ != kNoSlot && frame_slot_ < n.frames.size() && n.frames[frame_slot_]) {
    e.frames.push_back(n.frames[frame_slot_]->id());
  }
  return top_->record(std::move(e));
}

inline void Combinator::note_frame(std::size_t at, const Node& n) {
  if (at == kNoSlot || frame_slot_ == kNoSlot || !n.frames[frame_slot_]) return;
  TraceEvent& e = top_->recorded(at);
  e.frames.assign(1, n.frames[frame_slot_]->id());
}

// A composed search heuristic: the root combinator plus the node layout
// (number of local slots and frame slots) its instances need.
class Heuristic {
 public:
  Heuristic() = default;
  explicit Heuristic(CombinatorPtr root) : root_(std::move(root)) { wire(); }

  Combinator& root() const { return *root_; }
  const CombinatorPtr& root_ptr() const { return root_; }
  std::size_t num_locals() const { return num_locals_; }
  std::size_t num_frames() const { return num_frames_; }
  std::size_t num_instances() const { return num_instances_; }

 private:
  void wire() {
    std::unordered_set<const Combinator*> seen;
    visit(*root_, nullptr, "0", seen);
  }

  // Shared sub-instances (a DAG) are laid out once, by identity.
  void visit(Combinator& c, Combinator* parent, const std::string& path,
             std::unordered_set<const Combinator*>& seen) {
    if (parent) c.parent_ = parent;
    if (!seen.insert(&c).second) return;
    c.path_ = path;
    c.instance_id_ = static_cast<std::uint32_t>(num_instances_++);
    c.local_base_ = num_locals_;
    num_locals_ += c.local_slots();
    c.frame_begin_ = num_frames_;
    c.frame_slot_ = c.needs_frame() ? num_frames_++ : kNoSlot;
    std::size_t k = 0;
    for (const CombinatorPtr& child : c.children()) {
      visit(*child, &c, path + "." + std::to_string(k++), seen);
    }
    c.frame_end_ = num_frames_;
    c.wired_ = true;
    c.on_wired();
  }

  CombinatorPtr root_;
  std::size_t num_locals_ = 0;
  std::size_t num_frames_ = 0;
  std::size_t num_instances_ = 0;
};

}  // namespace searchcomb
