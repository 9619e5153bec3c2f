#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "dagsim/random.hpp"
#include "dagsim/transaction.hpp"

namespace dagsim {

enum class InsertOutcome : std::uint8_t { Inserted, Rejected, Evicted, Duplicate };

struct InsertResult {
    InsertOutcome outcome;
    std::optional<TxId> evicted;  // set only for Evicted
};

/**
 * Pending-transaction pool indexed two ways at once.
 *
 * By id: residents live in a dense slot array with an id -> slot map, so a
 * uniform draw is an index draw. By fee: a bucket queue of fixed-width fee
 * ranges holding slot indices, with the lowest non-empty bucket cached.
 * Ordering is exact, (fee desc, id asc); buckets only narrow the search.
 *
 * When full, the lowest-fee resident gives way to a strictly higher-fee
 * newcomer; otherwise the newcomer is rejected.
 */
class Mempool {
public:
    /// `fee_scale` is the typical fee (the fee mean); it sets bucket width only.
    explicit Mempool(std::size_t capacity, double fee_scale = 150.0);

    InsertResult insert(const Transaction& tx);

    /// Highest fees first, ties by ascending id. Pool unchanged.
    std::vector<Transaction> select_top_fee(std::size_t k) const;

    /// min(k, size) distinct residents drawn uniformly without replacement.
    std::vector<Transaction> select_random(std::size_t k, Rng& rng) const;

    /// Returns how many of `ids` were present.
    std::size_t remove_all(std::span<const TxId> ids);
    bool erase(TxId id);

    bool contains(TxId id) const { return slot_of_.contains(id); }
    const Transaction* find(TxId id) const;

    std::size_t size() const noexcept { return slots_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool empty() const noexcept { return slots_.empty(); }
    bool full() const noexcept { return slots_.size() >= capacity_; }

    /// Lowest fee currently resident; pool must be non-empty.
    double min_fee() const;

    /// Residents in slot order.
    std::vector<Transaction> snapshot() const;

    /// Full reconciliation of both indexes. Test hook.
    bool consistent() const;

private:
    static constexpr std::size_t kBuckets = 32768;
    static constexpr double kBucketsPerScale = 1024.0;

    struct Entry {
        Transaction tx;
        std::uint32_t bucket;
        std::uint32_t pos;  // index inside buckets_[bucket]
    };

    std::uint32_t bucket_of(double fee) const noexcept;
    std::uint32_t lowest_slot() const;
    void add(const Transaction& tx);
    void erase_slot(std::uint32_t slot);

    std::size_t capacity_;
    double bucket_width_;
    std::vector<Entry> slots_;
    absl::flat_hash_map<TxId, std::uint32_t> slot_of_;
    std::vector<std::vector<std::uint32_t>> buckets_;
    std::size_t lowest_bucket_ = kBuckets;  // kBuckets when empty
    std::size_t highest_bucket_ = 0;        // upper bound on the highest non-empty bucket
};

} // namespace dagsim
