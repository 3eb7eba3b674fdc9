#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/collections/obj.hpp"
#include "operadica/kernel/power_series.hpp"

namespace operadica {

// A family of objects graded by a size function, enumerable size by size.
// Copies share one memo table.
class GradedCollection {
 public:
  using Enumerator = std::function<std::vector<Obj>(std::size_t)>;
  using SizeFn = std::function<long long(const Obj&)>;
  using MemberFn = std::function<bool(const Obj&)>;

  GradedCollection(std::string name, Enumerator enumerator, SizeFn size_fn, MemberFn member = {})
      : impl_(std::make_shared<Impl>()) {
    impl_->name = std::move(name);
    impl_->enumerator = std::move(enumerator);
    impl_->size_fn = std::move(size_fn);
    impl_->member = std::move(member);
  }

  const std::string& name() const { return impl_->name; }

  // Sorted, duplicate-free list of the objects of size n.
  std::vector<Obj> enumerate(std::size_t n) const { return enumerate_ref(n); }

  // Same list, by reference into the memo table; valid while this collection lives.
  const std::vector<Obj>& enumerate_ref(std::size_t n) const {
    {
      std::lock_guard<std::mutex> lock(impl_->mu);
      auto it = impl_->cache.find(n);
      if (it != impl_->cache.end()) return it->second;
    }
    std::vector<Obj> objs = impl_->enumerator(n);
    if (!std::is_sorted(objs.begin(), objs.end())) std::sort(objs.begin(), objs.end());
    for (std::size_t i = 1; i < objs.size(); ++i)
      if (objs[i] == objs[i - 1])
        throw std::logic_error(name() + ": duplicate object " + objs[i].str() + " at size " +
                               std::to_string(n));
    for (const auto& o : objs)
      if (impl_->size_fn(o) != static_cast<long long>(n))
        throw std::logic_error(name() + ": object " + o.str() + " enumerated at size " +
                               std::to_string(n) + " has size " +
                               std::to_string(impl_->size_fn(o)));
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->cache.try_emplace(n, std::move(objs)).first->second;
  }

  std::size_t count(std::size_t n) const { return enumerate_ref(n).size(); }

  // Size of an object of this collection; throws for objects of the wrong shape.
  long long size_of(const Obj& o) const { return impl_->size_fn(o); }

  bool contains(const Obj& o) const {
    if (impl_->member) return impl_->member(o);
    long long n;
    try {
      n = impl_->size_fn(o);
    } catch (const std::exception&) {
      return false;
    }
    if (n < 0) return false;
    const auto& objs = enumerate_ref(static_cast<std::size_t>(n));
    return std::binary_search(objs.begin(), objs.end(), o);
  }

  bool is_augmented() const { return enumerate_ref(0).empty(); }

  std::vector<std::size_t> counts(std::size_t max_size) const {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= max_size; ++n) out.push_back(count(n));
    return out;
  }

  PowerSeries generating_series(std::size_t order) const {
    PowerSeries s(order);
    for (std::size_t n = 0; n <= order; ++n) s[n] = static_cast<unsigned long>(count(n));
    return s;
  }

 private:
  struct Impl {
    std::string name;
    Enumerator enumerator;
    SizeFn size_fn;
    MemberFn member;
    std::mutex mu;
    std::map<std::size_t, std::vector<Obj>> cache;
  };
  std::shared_ptr<Impl> impl_;
};

inline std::vector<Obj> enumerate(const GradedCollection& c, std::size_t n) { return c.enumerate(n); }

inline PowerSeries generating_series(const GradedCollection& c, std::size_t order) {
  return c.generating_series(order);
}

}  // namespace operadica
