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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace searchcomb {

using Value = std::int64_t;

struct Interval {
  Value lo;
  Value hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite set of integers kept as sorted, disjoint, non-adjacent intervals.
// Every mutator returns true iff the set changed.
class Domain {
 public:
  using Storage = boost::container::small_vector<Interval, 2>;

  Domain() = default;
  Domain(Value lo, Value hi) {
    if (lo <= hi) intervals_.push_back({lo, hi});
  }
  Domain(std::initializer_list<Interval> parts) {
    for (const Interval& i : parts) {
      for (Value v = i.lo; v <= i.hi; ++v) insert(v);
    }
  }

  static Domain singleton(Value v) { return Domain(v, v); }

  bool empty() const { return intervals_.empty(); }
  Value min() const { return intervals_.front().lo; }
  Value max() const { return intervals_.back().hi; }
  bool is_fixed() const {
    return intervals_.size() == 1 && intervals_[0].lo == intervals_[0].hi;
  }

  std::uint64_t size() const {
    std::uint64_t n = 0;
    for (const Interval& i : intervals_) n += static_cast<std::uint64_t>(i.hi - i.lo) + 1;
    return n;
  }

  bool contains(Value v) const {
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), v,
                               [](const Interval& i, Value x) { return i.hi < x; });
    return it != intervals_.end() && it->lo <= v;
  }

  const Storage& intervals() const { return intervals_; }

  // k-th smallest element, 0-based; k < size().
  Value nth(std::uint64_t k) const {
    for (const Interval& i : intervals_) {
      std::uint64_t width = static_cast<std::uint64_t>(i.hi - i.lo) + 1;
      if (k < width) return i.lo + static_cast<Value>(k);
      k -= width;
    }
    return max();
  }

  bool restrict_max(Value v) {
    bool changed = false;
    while (!intervals_.empty() && intervals_.back().lo > v) {
      intervals_.pop_back();
      changed = true;
    }
    if (!intervals_.empty() && intervals_.back().hi > v) {
      intervals_.back().hi = v;
      changed = true;
    }
    return changed;
  }

  bool restrict_min(Value v) {
    std::size_t drop = 0;
    while (drop < intervals_.size() && intervals_[drop].hi < v) ++drop;
    bool changed = drop > 0;
    if (drop > 0) intervals_.erase(intervals_.begin(), intervals_.begin() + drop);
    if (!intervals_.empty() && intervals_.front().lo < v) {
      intervals_.front().lo = v;
      changed = true;
    }
    return changed;
  }

  bool assign(Value v) {
    if (is_fixed() && min() == v) return false;
    bool present = contains(v);
    intervals_.clear();
    if (present) intervals_.push_back({v, v});
    return true;
  }

  bool remove(Value v) {
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), v,
                               [](const Interval& i, Value x) { return i.hi < x; });
    if (it == intervals_.end() || it->lo > v) return false;
    if (it->lo == v && it->hi == v) {
      intervals_.erase(it);
    } else if (it->lo == v) {
      ++it->lo;
    } else if (it->hi == v) {
      --it->hi;
    } else {
      Interval upper{v + 1, it->hi};
      it->hi = v - 1;
      intervals_.insert(it + 1, upper);
    }
    return true;
  }

  bool clear() {
    bool changed = !intervals_.empty();
    intervals_.clear();
    return changed;
  }

  std::vector<Value> values() const {
    std::vector<Value> out;
    for (const Interval& i : intervals_) {
      for (Value v = i.lo; v <= i.hi; ++v) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const Domain& a, const Domain& b) {
    return std::equal(a.intervals_.begin(), a.intervals_.end(), b.intervals_.begin(),
                      b.intervals_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const Domain& d) {
    os << '{';
    for (std::size_t k = 0; k < d.intervals_.size(); ++k) {
      if (k) os << ',';
      const Interval& i = d.intervals_[k];
      if (i.lo == i.hi) {
        os << i.lo;
      } else {
        os << i.lo << ".." << i.hi;
      }
    }
    return os << '}';
  }

 private:
  void insert(Value v) {
    if (contains(v)) return;
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), v,
                               [](const Interval& i, Value x) { return i.hi < x; });
    it = intervals_.insert(it, Interval{v, v});
    // merge with neighbours so that intervals stay non-adjacent
    if (it + 1 != intervals_.end() && (it + 1)->lo == v + 1) {
      it->hi = (it + 1)->hi;
      intervals_.erase(it + 1);
    }
    if (it != intervals_.begin() && (it - 1)->hi == v - 1) {
      (it - 1)->hi = it->hi;
      intervals_.erase(it);
    }
  }

  Storage intervals_;
};

}  // namespace searchcomb
