#include "dagsim/mempool.hpp"

#include <algorithm>
#include <cmath>

#include "dagsim/errors.hpp"

namespace dagsim {

namespace {

// (fee desc, id asc)
bool ranks_higher(const Transaction& a, const Transaction& b) noexcept
{
    if (a.fee != b.fee) {
        return a.fee > b.fee;
    }
    return a.id < b.id;
}

} // namespace

Mempool::Mempool(std::size_t capacity, double fee_scale)
    : capacity_(capacity), bucket_width_(fee_scale / kBucketsPerScale), buckets_(kBuckets)
{
    if (!(fee_scale > 0.0) || !std::isfinite(fee_scale)) {
        throw ContractViolation("mempool fee scale must be positive");
    }
    slots_.reserve(capacity);
    slot_of_.reserve(capacity);
}

std::uint32_t Mempool::bucket_of(double fee) const noexcept
{
    const double b = std::floor(fee / bucket_width_);
    if (!(b >= 0.0)) {
        return 0;
    }
    return static_cast<std::uint32_t>(std::min(b, static_cast<double>(kBuckets - 1)));
}

std::uint32_t Mempool::lowest_slot() const
{
    const auto& bucket = buckets_[lowest_bucket_];
    std::uint32_t best = bucket.front();
    for (std::uint32_t s : bucket) {
        if (ranks_higher(slots_[best].tx, slots_[s].tx)) {
            best = s;
        }
    }
    return best;
}

InsertResult Mempool::insert(const Transaction& tx)
{
    if (capacity_ == 0) {
        return {InsertOutcome::Rejected, std::nullopt};
    }
    std::optional<std::uint32_t> victim;
    if (full()) {
        victim = lowest_slot();
        // Residents all pay at least the minimum, so a strictly cheaper
        // newcomer cannot be one of them.
        if (tx.fee < slots_[*victim].tx.fee) {
            return {InsertOutcome::Rejected, std::nullopt};
        }
    }
    if (slot_of_.contains(tx.id)) {
        return {InsertOutcome::Duplicate, std::nullopt};
    }
    if (!victim) {
        add(tx);
        return {InsertOutcome::Inserted, std::nullopt};
    }
    if (!(tx.fee > slots_[*victim].tx.fee)) {
        return {InsertOutcome::Rejected, std::nullopt};
    }
    const TxId evicted = slots_[*victim].tx.id;
    erase_slot(*victim);
    add(tx);
    return {InsertOutcome::Evicted, evicted};
}

void Mempool::add(const Transaction& tx)
{
    const auto slot = static_cast<std::uint32_t>(slots_.size());
    const std::uint32_t b = bucket_of(tx.fee);
    auto& bucket = buckets_[b];
    slots_.push_back(Entry{tx, b, static_cast<std::uint32_t>(bucket.size())});
    bucket.push_back(slot);
    slot_of_.emplace(tx.id, slot);
    lowest_bucket_ = std::min<std::size_t>(lowest_bucket_, b);
    highest_bucket_ = std::max<std::size_t>(highest_bucket_, b);
}

void Mempool::erase_slot(std::uint32_t slot)
{
    const Entry gone = slots_[slot];

    auto& bucket = buckets_[gone.bucket];
    const std::uint32_t moved_in_bucket = bucket.back();
    bucket[gone.pos] = moved_in_bucket;
    slots_[moved_in_bucket].pos = gone.pos;
    bucket.pop_back();

    slot_of_.erase(gone.tx.id);
    const auto last = static_cast<std::uint32_t>(slots_.size() - 1);
    if (slot != last) {
        const Entry& moved = slots_[last];
        buckets_[moved.bucket][moved.pos] = slot;
        slot_of_[moved.tx.id] = slot;
        slots_[slot] = moved;
    }
    slots_.pop_back();

    if (slots_.empty()) {
        lowest_bucket_ = kBuckets;
        highest_bucket_ = 0;
    } else if (bucket.empty() && gone.bucket == lowest_bucket_) {
        while (buckets_[lowest_bucket_].empty()) {
            ++lowest_bucket_;
        }
    }
}

std::vector<Transaction> Mempool::select_top_fee(std::size_t k) const
{
    std::vector<Transaction> out;
    if (k == 0 || slots_.empty()) {
        return out;
    }
    for (std::size_t b = highest_bucket_ + 1; b-- > lowest_bucket_ && out.size() < k;) {
        for (std::uint32_t s : buckets_[b]) {
            out.push_back(slots_[s].tx);
        }
    }
    std::sort(out.begin(), out.end(), ranks_higher);
    if (out.size() > k) {
        out.resize(k);
    }
    return out;
}

std::vector<Transaction> Mempool::select_random(std::size_t k, Rng& rng) const
{
    const std::size_t n = slots_.size();
    if (k >= n) {
        return snapshot();
    }
    // Floyd's sampling: k draws, each index equally likely to be chosen.
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
            chosen.push_back(t);
        } else {
            chosen.push_back(j);
        }
    }
    std::vector<Transaction> out;
    out.reserve(k);
    for (std::size_t slot : chosen) {
        out.push_back(slots_[slot].tx);
    }
    return out;
}

std::size_t Mempool::remove_all(std::span<const TxId> ids)
{
    std::size_t removed = 0;
    for (TxId id : ids) {
        removed += erase(id) ? 1 : 0;
    }
    return removed;
}

bool Mempool::erase(TxId id)
{
    const auto it = slot_of_.find(id);
    if (it == slot_of_.end()) {
        return false;
    }
    erase_slot(it->second);
    return true;
}

const Transaction* Mempool::find(TxId id) const
{
    const auto it = slot_of_.find(id);
    return it == slot_of_.end() ? nullptr : &slots_[it->second].tx;
}

double Mempool::min_fee() const
{
    if (slots_.empty()) {
        throw ContractViolation("min_fee of an empty mempool");
    }
    return slots_[lowest_slot()].tx.fee;
}

std::vector<Transaction> Mempool::snapshot() const
{
    std::vector<Transaction> out;
    out.reserve(slots_.size());
    for (const Entry& e : slots_) {
        out.push_back(e.tx);
    }
    return out;
}

bool Mempool::consistent() const
{
    if (slots_.size() != slot_of_.size() || slots_.size() > capacity_) {
        return false;
    }
    std::size_t in_buckets = 0;
    for (std::size_t b = 0; b < kBuckets; ++b) {
        in_buckets += buckets_[b].size();
        if (!buckets_[b].empty() && (b < lowest_bucket_ || b > highest_bucket_)) {
            return false;
        }
    }
    if (in_buckets != slots_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Entry& e = slots_[i];
        const auto it = slot_of_.find(e.tx.id);
        if (it == slot_of_.end() || it->second != i) {
            return false;
        }
        if (e.bucket != bucket_of(e.tx.fee) || e.pos >= buckets_[e.bucket].size() ||
            buckets_[e.bucket][e.pos] != i) {
            return false;
        }
    }
    return true;
}

} // namespace dagsim
