#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace agency {

/// Partition of a carrier {0..n-1} into disjoint, non-empty blocks.
///
/// Canonical form: members of each block ascending, blocks ordered by their
/// smallest member. Two partitions over the same carrier are equal iff their
/// canonical forms are equal. Element names are kept only for reporting.
class Partition {
public:
    using Block = std::vector<std::size_t>;

    Partition() = default;
    /// Canonicalizes; throws std::invalid_argument unless `blocks` partition 0..names.size()-1.
    Partition(std::vector<std::string> names, std::vector<Block> blocks);

    /// Groups elements with equal keys. `Key` must be totally ordered.
    template <typename Key>
    static Partition from_keys(std::vector<std::string> names, const std::vector<Key>& keys) {
        std::map<Key, std::size_t> block_of;
        std::vector<Block> blocks;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            auto [it, inserted] = block_of.try_emplace(keys[i], blocks.size());
            if (inserted) blocks.emplace_back();
            blocks[it->second].push_back(i);
        }
        return Partition(std::move(names), std::move(blocks));
    }

    static Partition discrete(std::vector<std::string> names);
    static Partition single_block(std::vector<std::string> names);

    std::size_t carrier_size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    std::size_t block_of(std::size_t element) const { return block_of_.at(element); }
    bool same_block(std::size_t a, std::size_t b) const { return block_of(a) == block_of(b); }

    /// Every block of *this lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    /// Restriction to the listed elements (re-indexed in the given order).
    Partition restrict_to(const std::vector<std::size_t>& elements) const;

    /// Equality of block structure; names are not compared.
    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<std::string> names_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> block_of_;
};

}  // namespace agency
