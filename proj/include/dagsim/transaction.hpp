#pragma once

#include <cstdint>

namespace dagsim {

using TxId = std::uint64_t;

struct Transaction {
    TxId id = 0;
    double fee = 0.0;
    double created_at = 0.0;

    bool operator==(const Transaction&) const = default;
};

} // namespace dagsim
