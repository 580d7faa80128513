#include "factplan/agents.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "factplan/errors.hpp"

namespace factplan {

AgentSet::AgentSet(std::initializer_list<std::uint32_t> indices) {
    for (auto i : indices) {
        *this = *this | single(AgentId{i});
    }
}

AgentSet AgentSet::single(AgentId id) {
    if (id.index >= kMaxAgents) {
        throw std::out_of_range("agent index " + std::to_string(id.index) + " exceeds capacity");
    }
    return from_mask(std::uint32_t{1} << id.index);
}

AgentSet AgentSet::first(std::size_t n) {
    if (n > kMaxAgents) {
        throw std::out_of_range("too many agents");
    }
    return from_mask(n == kMaxAgents ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
}

std::size_t AgentSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool AgentSet::contains(AgentId id) const { return id.index < kMaxAgents && ((mask_ >> id.index) & 1u) != 0; }

std::size_t AgentSet::rank_of(AgentId id) const {
    if (!contains(id)) {
        throw StructuralError("agent " + std::to_string(id.index) + " not in " + to_string());
    }
    const std::uint32_t below = mask_ & ((std::uint32_t{1} << id.index) - 1);
    return static_cast<std::size_t>(std::popcount(below));
}

std::vector<AgentId> AgentSet::members() const {
    std::vector<AgentId> out;
    out.reserve(size());
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
        out.push_back(AgentId{static_cast<std::uint32_t>(std::countr_zero(m))});
    }
    return out;
}

std::string AgentSet::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first_member = true;
    for (auto id : members()) {
        if (!first_member) {
            os << ',';
        }
        os << id.index;
        first_member = false;
    }
    os << '}';
    return os.str();
}

BlockConfig::BlockConfig(AgentSet agents, std::size_t dim, std::vector<double> coords)
    : agents_(agents), dim_(dim), coords_(std::move(coords)) {
    if (agents_.empty()) {
        throw StructuralError("block configuration needs at least one agent");
    }
    if (dim_ == 0 || coords_.size() != dim_ * agents_.size()) {
        throw StructuralError("block configuration over " + agents_.to_string() + " expects " +
                              std::to_string(dim_ * agents_.size()) + " coordinates, got " +
                              std::to_string(coords_.size()));
    }
}

std::span<const double> BlockConfig::agent_coords(AgentId id) const { return agent_coords_at(agents_.rank_of(id)); }

BlockConfig join(std::span<const BlockConfig> blocks) {
    if (blocks.empty()) {
        throw StructuralError("join of an empty block list");
    }
    if (blocks.size() == 1) {
        return blocks.front();
    }
    const std::size_t dim = blocks.front().dim();
    AgentSet all;
    for (const auto& b : blocks) {
        if (b.dim() != dim) {
            throw StructuralError("join of blocks with different per-agent dimension");
        }
        if (all.intersects(b.agents())) {
            throw StructuralError("join of overlapping agent sets " + all.to_string() + " and " +
                                  b.agents().to_string());
        }
        all = all | b.agents();
    }
    std::vector<double> coords;
    coords.reserve(dim * all.size());
    for (auto id : all.members()) {
        for (const auto& b : blocks) {
            if (b.agents().contains(id)) {
                auto c = b.agent_coords(id);
                coords.insert(coords.end(), c.begin(), c.end());
                break;
            }
        }
    }
    return BlockConfig(all, dim, std::move(coords));
}

BlockConfig project(const BlockConfig& joint, AgentSet subset) {
    if (subset.empty() || !joint.agents().contains(subset)) {
        throw StructuralError("cannot project " + joint.agents().to_string() + " onto " + subset.to_string());
    }
    if (subset == joint.agents()) {
        return joint;
    }
    std::vector<double> coords;
    coords.reserve(joint.dim() * subset.size());
    for (auto id : subset.members()) {
        auto c = joint.agent_coords(id);
        coords.insert(coords.end(), c.begin(), c.end());
    }
    return BlockConfig(subset, joint.dim(), std::move(coords));
}

Partition::Partition(std::vector<BlockConfig> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw StructuralError("partition needs at least one block");
    }
    for (const auto& b : blocks_) {
        if (agents_.intersects(b.agents())) {
            throw StructuralError("partition blocks overlap on " + (agents_ & b.agents()).to_string());
        }
        if (b.dim() != blocks_.front().dim()) {
            throw StructuralError("partition blocks disagree on per-agent dimension");
        }
        agents_ = agents_ | b.agents();
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const BlockConfig& a, const BlockConfig& b) { return a.agents() < b.agents(); });
}

BlockConfig BlockGroup::joint(const Partition& p) const {
    if (block_indices.size() == 1) {
        return p[block_indices.front()];
    }
    std::vector<BlockConfig> parts;
    parts.reserve(block_indices.size());
    for (auto i : block_indices) {
        parts.push_back(p[i]);
    }
    return join(parts);
}

std::vector<BlockGroup> powerset_groups(const Partition& p) {
    const std::size_t k = p.size();
    if (k >= 31) {
        throw StructuralError("too many blocks for powerset enumeration");
    }
    std::vector<BlockGroup> groups;
    groups.reserve((std::size_t{1} << k) - 1);
    for (std::uint32_t sel = 1; sel < (std::uint32_t{1} << k); ++sel) {
        BlockGroup g;
        for (std::size_t i = 0; i < k; ++i) {
            if ((sel >> i) & 1u) {
                g.block_indices.push_back(i);
                g.agents = g.agents | p[i].agents();
            }
        }
        groups.push_back(std::move(g));
    }
    std::sort(groups.begin(), groups.end(),
              [](const BlockGroup& a, const BlockGroup& b) { return a.agents < b.agents; });
    return groups;
}

std::vector<PartitionShape> enumerate_partitions(AgentSet s) {
    if (s.empty()) {
        throw std::invalid_argument("cannot partition an empty agent set");
    }
    if (s.size() > kMaxEnumeratedAgents) {
        throw std::invalid_argument("partition enumeration limited to " + std::to_string(kMaxEnumeratedAgents) +
                                    " agents");
    }
    const auto members = s.members();
    std::vector<PartitionShape> out;
    // Restricted growth strings: label[i] <= 1 + max(label[0..i)).
    std::vector<std::size_t> label(members.size(), 0);
    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t i, std::size_t blocks) {
        if (i == members.size()) {
            PartitionShape shape(blocks);
            for (std::size_t j = 0; j < members.size(); ++j) {
                shape[label[j]] = shape[label[j]] | AgentSet::single(members[j]);
            }
            std::sort(shape.begin(), shape.end());
            out.push_back(std::move(shape));
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            label[i] = b;
            recurse(i + 1, std::max(blocks, b + 1));
        }
    };
    recurse(0, 0);
    return out;
}

}  // namespace factplan
