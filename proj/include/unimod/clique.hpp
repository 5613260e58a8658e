#ifndef UNIMOD_CLIQUE_HPP
#define UNIMOD_CLIQUE_HPP

// Exact maximum-clique search on packed adjacency bit rows.
//
// Branch and bound in the style of bitset MCS/BBMC: vertices are relabelled
// by non-increasing degree, each node greedily colours its candidate set and
// only branches on vertices whose colour can still beat (or, when listing
// every maximum clique, tie) the incumbent.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>
#include <vector>

#include "unimod/error.hpp"

namespace unimod {

class BitGraph {
 public:
  explicit BitGraph(std::size_t n = 0) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  void add_edge(std::size_t i, std::size_t j) noexcept {
    if (i == j) return;
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    bits_[j * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
  }

  bool adjacent(std::size_t i, std::size_t j) const noexcept {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }

  const std::uint64_t* row(std::size_t i) const noexcept { return bits_.data() + i * words_; }

  std::size_t degree(std::size_t i) const noexcept {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(i)[w]));
    return d;
  }

  std::size_t edge_count() const noexcept {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n_; ++i) total += degree(i);
    return total / 2;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct CliqueOptions {
  std::chrono::milliseconds timeout{60000};
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CliqueResult {
  std::vector<std::size_t> clique;  // sorted original vertex ids
  std::uint64_t nodes = 0;
};

struct AllMaximumCliques {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> cliques;  // each sorted; list sorted
  std::uint64_t nodes = 0;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

struct Cancelled {};

class CliqueSearch {
 public:
  CliqueSearch(const BitGraph& graph, const CliqueOptions& options, bool list_all)
      : options_(options), list_all_(list_all), deadline_(std::chrono::steady_clock::now() + options.timeout) {
    const auto n = graph.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = graph.degree(v);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
    graph_ = BitGraph(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (graph.adjacent(order_[i], order_[j])) graph_.add_edge(i, j);
  }

  void run() {
    const auto n = graph_.size();
    if (n == 0) return;
    Bits root(graph_.words(), 0);
    for (std::size_t v = 0; v < n; ++v) root[v / 64] |= std::uint64_t{1} << (v % 64);

    std::vector<std::pair<std::size_t, std::size_t>> branch;
    colour(root, 0, branch);

    unsigned workers = options_.threads ? options_.threads : std::max(1U, std::thread::hardware_concurrency());
    if (!options_.parallel || list_all_ || workers == 1 || branch.size() < 2) {
      Worker worker(*this);
      Bits candidates = root;
      try {
        for (std::size_t idx = branch.size(); idx-- > 0;) {
          const auto [v, c] = branch[idx];
          if (!admissible(0, c)) break;
          check_deadline();
          worker.branch_on(candidates, v);
          candidates[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
      } catch (const Cancelled&) {
        nodes_ += worker.nodes;
        throw Error(Errc::timeout, "clique search exceeded its time budget");
      }
      nodes_ += worker.nodes;
      return;
    }

    // Top-level branch idx sees the root set minus every branch vertex
    // processed after it in the sequential order, so each task is independent.
    std::atomic<std::size_t> next{branch.size()};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        Worker worker(*this);
        try {
          while (true) {
            const auto claimed = next.fetch_sub(1);
            if (claimed == 0 || claimed > branch.size()) break;
            const auto idx = claimed - 1;
            const auto [v, c] = branch[idx];
            if (!admissible(0, c)) continue;
            check_deadline();
            Bits candidates = root;
            for (std::size_t later = idx + 1; later < branch.size(); ++later) {
              const auto u = branch[later].first;
              candidates[u / 64] &= ~(std::uint64_t{1} << (u % 64));
            }
            worker.branch_on(candidates, v);
          }
        } catch (const Cancelled&) {
          cancelled_.store(true);
          next.store(0);
        }
        std::lock_guard lock(mutex_);
        nodes_ += worker.nodes;
      });
    }
    for (auto& th : pool) th.join();
    if (cancelled_.load()) throw Error(Errc::timeout, "clique search exceeded its time budget");
  }

  CliqueResult best() const {
    CliqueResult result;
    for (const auto v : best_clique_) result.clique.push_back(order_[v]);
    std::sort(result.clique.begin(), result.clique.end());
    result.nodes = nodes_;
    return result;
  }

  AllMaximumCliques all() const {
    AllMaximumCliques result;
    result.size = best_size_.load();
    for (const auto& clique : all_cliques_) {
      std::vector<std::size_t> mapped;
      for (const auto v : clique) mapped.push_back(order_[v]);
      std::sort(mapped.begin(), mapped.end());
      result.cliques.push_back(std::move(mapped));
    }
    std::sort(result.cliques.begin(), result.cliques.end());
    result.nodes = nodes_;
    return result;
  }

 private:
  struct Worker {
    explicit Worker(CliqueSearch& search) : s(search) {}

    void branch_on(const Bits& candidates, std::size_t v) {
      clique.push_back(v);
      Bits next(candidates.size());
      const auto* adj = s.graph_.row(v);
      bool empty = true;
      for (std::size_t w = 0; w < next.size(); ++w) {
        next[w] = candidates[w] & adj[w];
        empty = empty && next[w] == 0;
      }
      if (empty) {
        s.record(clique);
      } else {
        expand(next);
      }
      clique.pop_back();
    }

    void expand(Bits& candidates) {
      ++nodes;
      s.check_deadline();
      std::vector<std::pair<std::size_t, std::size_t>> branch;
      s.colour(candidates, clique.size(), branch);
      for (std::size_t idx = branch.size(); idx-- > 0;) {
        const auto [v, c] = branch[idx];
        if (!s.admissible(clique.size(), c)) return;
        branch_on(candidates, v);
        candidates[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      }
    }

    CliqueSearch& s;
    std::vector<std::size_t> clique;
    std::uint64_t nodes = 0;
  };

  // Can a clique of size `depth + colour` still matter?
  bool admissible(std::size_t depth, std::size_t colour) const noexcept {
    const auto incumbent = best_size_.load(std::memory_order_relaxed);
    return list_all_ ? depth + colour >= incumbent : depth + colour > incumbent;
  }

  void check_deadline() {
    if (cancelled_.load(std::memory_order_relaxed) || std::chrono::steady_clock::now() > deadline_) {
      cancelled_.store(true);
      throw Cancelled{};
    }
  }

  // Greedy sequential colouring; emits (vertex, colour) for the vertices
  // whose colour class can still reach the incumbent.
  void colour(const Bits& candidates, std::size_t depth,
              std::vector<std::pair<std::size_t, std::size_t>>& branch) const {
    const auto incumbent = best_size_.load(std::memory_order_relaxed);
    const std::size_t needed = incumbent > depth ? incumbent - depth + (list_all_ ? 0 : 1) : 1;
    Bits uncoloured = candidates;
    Bits queue(candidates.size());
    std::size_t colour = 0;
    auto any = [](const Bits& b) {
      for (const auto w : b)
        if (w) return true;
      return false;
    };
    while (any(uncoloured)) {
      ++colour;
      queue = uncoloured;
      for (std::size_t w = 0; w < queue.size(); ++w) {
        while (queue[w]) {
          const auto bit = static_cast<std::size_t>(std::countr_zero(queue[w]));
          const auto v = w * 64 + bit;
          queue[w] &= queue[w] - 1;
          uncoloured[w] &= ~(std::uint64_t{1} << bit);
          const auto* adj = graph_.row(v);
          for (std::size_t k = w; k < queue.size(); ++k) queue[k] &= ~adj[k];
          if (colour >= needed) branch.emplace_back(v, colour);
        }
      }
    }
  }

  void record(const std::vector<std::size_t>& clique) {
    std::lock_guard lock(mutex_);
    const auto size = clique.size();
    const auto incumbent = best_size_.load();
    if (size > incumbent) {
      best_size_.store(size);
      best_clique_ = clique;
      all_cliques_.clear();
      if (list_all_) all_cliques_.push_back(clique);
    } else if (list_all_ && size == incumbent) {
      all_cliques_.push_back(clique);
    }
  }

  CliqueOptions options_;
  bool list_all_;
  std::chrono::steady_clock::time_point deadline_;
  BitGraph graph_;
  std::vector<std::size_t> order_;
  std::atomic<std::size_t> best_size_{0};
  std::vector<std::size_t> best_clique_;
  std::vector<std::vector<std::size_t>> all_cliques_;
  std::atomic<bool> cancelled_{false};
  std::mutex mutex_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact maximum clique. Timeout is raised as Errc::timeout, never truncated.
inline CliqueResult maximum_clique(const BitGraph& graph, const CliqueOptions& options = {}) {
  detail::CliqueSearch search(graph, options, false);
  search.run();
  return search.best();
}

/// Every clique of maximum cardinality. Always sequential.
inline AllMaximumCliques all_maximum_cliques(const BitGraph& graph, const CliqueOptions& options = {}) {
  detail::CliqueSearch search(graph, options, true);
  search.run();
  return search.all();
}

}  // namespace unimod

#endif  // UNIMOD_CLIQUE_HPP
