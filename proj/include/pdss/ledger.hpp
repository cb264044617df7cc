#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace pdss {

struct LedgerEntry {
    std::string event;           // "store", "repair-share", "reconstruct-min", ...
    std::uint64_t elements = 0;  // field elements moved
    std::uint64_t metadata = 0;  // identifier / (position,value) records moved
    std::uint32_t participants = 0;

    bool operator==(const LedgerEntry&) const = default;
};

// Append-only tally of everything that crossed the simulated wire. record()
// may be called from concurrent share computations inside one step. Copying
// and moving snapshot the entries; the mutex itself is never transferred.
class BandwidthLedger {
public:
    BandwidthLedger() = default;
    BandwidthLedger(const BandwidthLedger& other) : entries_(other.entries()) {}
    BandwidthLedger(BandwidthLedger&& other) noexcept : entries_(other.entries()) {}
    BandwidthLedger& operator=(const BandwidthLedger& other) {
        if (this != &other) {
            auto snapshot = other.entries();
            const std::lock_guard<std::mutex> lock(mu_);
            entries_ = std::move(snapshot);
        }
        return *this;
    }
    BandwidthLedger& operator=(BandwidthLedger&& other) noexcept { return *this = other; }

    void record(std::string event, std::uint64_t elements, std::uint64_t metadata,
                std::uint32_t participants);

    std::vector<LedgerEntry> entries() const;
    std::uint64_t total_elements() const;
    std::uint64_t total_metadata() const;
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::vector<LedgerEntry> entries_;
};

}  // namespace pdss
