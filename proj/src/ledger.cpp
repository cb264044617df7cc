#include "pdss/ledger.hpp"

namespace pdss {

void BandwidthLedger::record(std::string event, std::uint64_t elements, std::uint64_t metadata,
                             std::uint32_t participants) {
    const std::lock_guard<std::mutex> lock(mu_);
    entries_.push_back({std::move(event), elements, metadata, participants});
}

std::vector<LedgerEntry> BandwidthLedger::entries() const {
    const std::lock_guard<std::mutex> lock(mu_);
    return entries_;
}

std::uint64_t BandwidthLedger::total_elements() const {
    const std::lock_guard<std::mutex> lock(mu_);
    std::uint64_t total = 0;
    for (const LedgerEntry& e : entries_) total += e.elements;
    return total;
}

std::uint64_t BandwidthLedger::total_metadata() const {
    const std::lock_guard<std::mutex> lock(mu_);
    std::uint64_t total = 0;
    for (const LedgerEntry& e : entries_) total += e.metadata;
    return total;
}

std::size_t BandwidthLedger::size() const {
    const std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

}  // namespace pdss
