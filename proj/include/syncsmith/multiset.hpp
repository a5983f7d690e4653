#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace syncsmith {

using State = std::int64_t;
using Message = std::int64_t;

// Multiset of received messages. Kept sorted so that equality and the
// transition function are independent of arrival order.
class MessageBag {
 public:
  MessageBag() = default;
  MessageBag(std::initializer_list<Message> ms) {
    for (Message m : ms) insert(m);
  }

  void insert(Message m) {
    items_.insert(std::upper_bound(items_.begin(), items_.end(), m), m);
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  Message max() const { return items_.back(); }
  Message min() const { return items_.front(); }

  // Sorted, with multiplicities.
  const std::vector<Message>& items() const { return items_; }

  std::size_t count(Message m) const {
    auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), m);
    return static_cast<std::size_t>(hi - lo);
  }

  bool operator==(const MessageBag& other) const { return items_ == other.items_; }

 private:
  std::vector<Message> items_;
};

}  // namespace syncsmith
