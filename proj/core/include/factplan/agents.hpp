#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace factplan {

struct AgentId {
    std::uint32_t index = 0;

    constexpr auto operator<=>(const AgentId&) const = default;
};

/// Set of agents stored as a bitmask. Iteration order is ascending agent index,
/// so two sets with the same members compare equal structurally.
class AgentSet {
public:
    static constexpr std::size_t kMaxAgents = 32;

    constexpr AgentSet() = default;
    AgentSet(std::initializer_list<std::uint32_t> indices);

    static constexpr AgentSet from_mask(std::uint32_t mask) {
        AgentSet s;
        s.mask_ = mask;
        return s;
    }
    static AgentSet single(AgentId id);
    /// {0, 1, ..., n-1}
    static AgentSet first(std::size_t n);

    [[nodiscard]] constexpr std::uint32_t mask() const { return mask_; }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] constexpr bool empty() const { return mask_ == 0; }

    [[nodiscard]] bool contains(AgentId id) const;
    [[nodiscard]] constexpr bool contains(AgentSet other) const { return (mask_ & other.mask_) == other.mask_; }
    [[nodiscard]] constexpr bool intersects(AgentSet other) const { return (mask_ & other.mask_) != 0; }

    /// Position of `id` within the canonical member order.
    [[nodiscard]] std::size_t rank_of(AgentId id) const;
    [[nodiscard]] std::vector<AgentId> members() const;
    [[nodiscard]] std::string to_string() const;

    friend constexpr AgentSet operator|(AgentSet a, AgentSet b) { return from_mask(a.mask_ | b.mask_); }
    friend constexpr AgentSet operator&(AgentSet a, AgentSet b) { return from_mask(a.mask_ & b.mask_); }
    friend constexpr AgentSet operator-(AgentSet a, AgentSet b) { return from_mask(a.mask_ & ~b.mask_); }

    constexpr auto operator<=>(const AgentSet&) const = default;

private:
    std::uint32_t mask_ = 0;
};

/// A joint configuration restricted to a subset of agents. Coordinates are laid
/// out agent by agent in canonical order, `dim` values per agent.
class BlockConfig {
public:
    BlockConfig() = default;
    BlockConfig(AgentSet agents, std::size_t dim, std::vector<double> coords);

    [[nodiscard]] AgentSet agents() const { return agents_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t agent_count() const { return agents_.size(); }
    [[nodiscard]] std::span<const double> coords() const { return coords_; }

    [[nodiscard]] std::span<const double> agent_coords(AgentId id) const;
    [[nodiscard]] std::span<const double> agent_coords_at(std::size_t rank) const {
        return std::span<const double>(coords_).subspan(rank * dim_, dim_);
    }

    bool operator==(const BlockConfig&) const = default;

private:
    AgentSet agents_;
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Assemble a joint configuration from blocks with pairwise disjoint agent sets.
BlockConfig join(std::span<const BlockConfig> blocks);

/// Marginal of `joint` on `subset`.
BlockConfig project(const BlockConfig& joint, AgentSet subset);

/// Disjoint blocks covering an agent set; stored sorted by agent-set mask.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<BlockConfig> blocks);

    [[nodiscard]] std::span<const BlockConfig> blocks() const { return blocks_; }
    [[nodiscard]] std::size_t size() const { return blocks_.size(); }
    [[nodiscard]] const BlockConfig& operator[](std::size_t i) const { return blocks_[i]; }
    [[nodiscard]] AgentSet agents() const { return agents_; }

private:
    std::vector<BlockConfig> blocks_;
    AgentSet agents_;
};

/// A non-empty subset of a partition's blocks treated as one joint state.
struct BlockGroup {
    std::vector<std::size_t> block_indices;
    AgentSet agents;

    [[nodiscard]] BlockConfig joint(const Partition& p) const;
    [[nodiscard]] bool is_single_block() const { return block_indices.size() == 1; }
};

/// All 2^k - 1 non-empty block subsets, ordered by ascending union-agent-set mask.
std::vector<BlockGroup> powerset_groups(const Partition& p);

using PartitionShape = std::vector<AgentSet>;

inline constexpr std::size_t kMaxEnumeratedAgents = 6;

/// Every set partition of `s` (Bell(|s|) of them). Blocks inside a shape are
/// sorted by mask. Throws std::invalid_argument above kMaxEnumeratedAgents.
std::vector<PartitionShape> enumerate_partitions(AgentSet s);

}  // namespace factplan
