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

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "searchcomb/kernel.hpp"

namespace searchcomb {

// Search variables and statistics. Integral values are exact up to 2^53.
using NumericValue = double;
inline constexpr NumericValue kInfinity = std::numeric_limits<double>::infinity();

// Mutable record shared by every node below one start() of a combinator
// instance. Search runs on one thread, so the reference count is plain.
class GlobalFrame {
 public:
  GlobalFrame(std::uint64_t id, std::uint32_t owner) : id_(id), owner_(owner) {}
  GlobalFrame(const GlobalFrame&) = delete;
  GlobalFrame& operator=(const GlobalFrame&) = delete;
  virtual ~GlobalFrame() = default;

  std::uint64_t id() const { return id_; }
  std::uint32_t owner() const { return owner_; }

 private:
  friend class FrameRef;
  std::uint64_t id_;
  std::uint32_t owner_;
  std::uint32_t refs_ = 0;
};

class FrameRef {
 public:
  FrameRef() = default;
  explicit FrameRef(GlobalFrame* f) : frame_(f) { acquire(); }
  FrameRef(const FrameRef& o) : frame_(o.frame_) { acquire(); }
  FrameRef(FrameRef&& o) noexcept : frame_(std::exchange(o.frame_, nullptr)) {}
  FrameRef& operator=(FrameRef o) noexcept {
    std::swap(frame_, o.frame_);
    return *this;
  }
  ~FrameRef() { release(); }

  GlobalFrame* get() const { return frame_; }
  GlobalFrame* operator->() const { return frame_; }
  explicit operator bool() const { return frame_ != nullptr; }
  void reset() { FrameRef().swap_with(*this); }

  friend bool operator==(const FrameRef& a, const FrameRef& b) { return a.frame_ == b.frame_; }

 private:
  void swap_with(FrameRef& o) { std::swap(frame_, o.frame_); }
  void acquire() {
    if (frame_) ++frame_->refs_;
  }
  void release() {
    if (frame_ && --frame_->refs_ == 0) delete frame_;
  }

  GlobalFrame* frame_ = nullptr;
};

template <class Frame, class... Args>
FrameRef make_frame(Args&&... args) {
  return FrameRef(new Frame(std::forward<Args>(args)...));
}

// A search tree node: solver state plus the information combinators attach
// to it. Locals are copied by value, frames are shared by reference.
struct Node {
  State state;
  std::vector<NumericValue> locals;
  std::vector<FrameRef> frames;
  std::uint64_t id = 0;
  // Position among the siblings created by one branching step.
  std::uint32_t rank = 0;

  Node() = default;
  Node(State s, std::size_t num_locals, std::size_t num_frames, std::uint64_t node_id)
      : state(std::move(s)), locals(num_locals, 0.0), frames(num_frames), id(node_id) {}

  Node clone_as(std::uint64_t new_id) const {
    Node n(*this);
    n.id = new_id;
    return n;
  }

  template <class Frame>
  Frame& frame(std::size_t slot) const {
    return static_cast<Frame&>(*frames[slot].get());
  }

 private:
  Node(const Node&) = default;

 public:
  Node(Node&&) noexcept = default;
  Node& operator=(Node&&) noexcept = default;
};

}  // namespace searchcomb
