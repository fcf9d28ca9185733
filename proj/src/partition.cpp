#include "agency/partition.hpp"

#include <limits>
#include <stdexcept>

namespace agency {

Partition::Partition(std::vector<std::string> names, std::vector<Block> blocks) : names_(std::move(names)) {
    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    block_of_.assign(names_.size(), kUnset);
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("Partition: empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (const auto e : blocks[i]) {
            if (e >= names_.size()) throw std::invalid_argument("Partition: element outside carrier");
            if (block_of_[e] != kUnset) throw std::invalid_argument("Partition: blocks overlap");
            block_of_[e] = i;
        }
    }
    for (const auto b : block_of_)
        if (b == kUnset) throw std::invalid_argument("Partition: blocks do not cover the carrier");
    blocks_ = std::move(blocks);
}

Partition Partition::discrete(std::vector<std::string> names) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < names.size(); ++i) blocks.push_back({i});
    return Partition(std::move(names), std::move(blocks));
}

Partition Partition::single_block(std::vector<std::string> names) {
    std::vector<Block> blocks;
    if (!names.empty()) {
        blocks.emplace_back();
        for (std::size_t i = 0; i < names.size(); ++i) blocks.back().push_back(i);
    }
    return Partition(std::move(names), std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.carrier_size() != carrier_size()) return false;
    for (const auto& b : blocks_)
        for (const auto e : b)
            if (coarser.block_of(e) != coarser.block_of(b.front())) return false;
    return true;
}

Partition Partition::restrict_to(const std::vector<std::size_t>& elements) const {
    std::vector<std::string> names;
    std::vector<std::size_t> keys;
    for (const auto e : elements) {
        names.push_back(names_.at(e));
        keys.push_back(block_of(e));
    }
    return from_keys(std::move(names), keys);
}

}  // namespace agency
