#include <gtest/gtest.h>

#include <set>

#include "factplan/agents.hpp"
#include "factplan/errors.hpp"

using namespace factplan;

namespace {

BlockConfig block(std::initializer_list<std::uint32_t> agents, std::vector<double> xy) {
    return BlockConfig(AgentSet(agents), 2, std::move(xy));
}

}  // namespace

TEST(AgentSet, MembersAreAscending) {
    AgentSet s{3, 0, 5};
    ASSERT_EQ(s.size(), 3u);
    const auto m = s.members();
    EXPECT_EQ(m[0].index, 0u);
    EXPECT_EQ(m[1].index, 3u);
    EXPECT_EQ(m[2].index, 5u);
    EXPECT_EQ(s.rank_of(AgentId{5}), 2u);
    EXPECT_EQ(AgentSet::first(3).mask(), 0b111u);
    EXPECT_THROW((void)s.rank_of(AgentId{1}), StructuralError);
}

TEST(BlockConfig, RejectsWrongCoordinateCount) {
    EXPECT_THROW(block({0, 1}, {0.1, 0.2, 0.3}), StructuralError);
    EXPECT_THROW(BlockConfig(AgentSet{}, 2, {}), StructuralError);
}

TEST(BlockConfig, JoinProjectRoundTrip) {
    const auto a = block({2}, {0.7, 0.8});
    const auto b = block({0}, {0.1, 0.2});
    const std::vector<BlockConfig> parts{a, b};
    const auto j = join(parts);
    EXPECT_EQ(j.agents(), (AgentSet{0, 2}));
    EXPECT_EQ(std::vector<double>(j.coords().begin(), j.coords().end()), (std::vector<double>{0.1, 0.2, 0.7, 0.8}));
    EXPECT_EQ(project(j, AgentSet{2}), a);
    EXPECT_EQ(project(j, AgentSet{0}), b);
    EXPECT_EQ(project(j, j.agents()), j);
    EXPECT_THROW(project(j, AgentSet{1}), StructuralError);
}

TEST(BlockConfig, JoinRejectsOverlap) {
    const std::vector<BlockConfig> parts{block({0, 1}, {0, 0, 1, 1}), block({1}, {0.5, 0.5})};
    EXPECT_THROW(join(parts), StructuralError);
}

TEST(Partition, SortedByMaskAndRejectsOverlap) {
    Partition p({block({2}, {0.5, 0.5}), block({0, 1}, {0.1, 0.1, 0.9, 0.9})});
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].agents(), (AgentSet{0, 1}));
    EXPECT_EQ(p.agents(), AgentSet::first(3));
    EXPECT_THROW(Partition({block({0}, {0, 0}), block({0}, {1, 1})}), StructuralError);
}

TEST(Partition, PowersetCountsAndOrder) {
    const Partition one({block({0}, {0, 0})});
    EXPECT_EQ(powerset_groups(one).size(), 1u);
    const Partition two({block({0}, {0, 0}), block({1}, {1, 1})});
    EXPECT_EQ(powerset_groups(two).size(), 3u);
    const Partition three({block({0}, {0, 0}), block({1, 3}, {1, 1, 2, 2}), block({2}, {3, 3})});
    const auto groups = powerset_groups(three);
    ASSERT_EQ(groups.size(), 7u);
    for (std::size_t i = 1; i < groups.size(); ++i) {
        EXPECT_LT(groups[i - 1].agents.mask(), groups[i].agents.mask());
    }
    const auto& all = groups.back();
    EXPECT_EQ(all.agents, AgentSet::first(4));
    EXPECT_FALSE(all.is_single_block());
    const auto joint = all.joint(three);
    EXPECT_EQ(three[2].agents(), (AgentSet{1, 3}));
    EXPECT_EQ(project(joint, AgentSet{1, 3}), three[2]);
}

TEST(Partition, EnumerationMatchesBellNumbers) {
    const std::size_t bell[] = {1, 2, 5, 15, 52, 203};
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto shapes = enumerate_partitions(AgentSet::first(n));
        EXPECT_EQ(shapes.size(), bell[n - 1]) << n;
        std::set<std::vector<std::uint32_t>> distinct;
        for (const auto& shape : shapes) {
            std::uint32_t covered = 0;
            std::vector<std::uint32_t> masks;
            for (auto b : shape) {
                EXPECT_EQ(covered & b.mask(), 0u);
                covered |= b.mask();
                masks.push_back(b.mask());
            }
            EXPECT_EQ(covered, AgentSet::first(n).mask());
            EXPECT_TRUE(std::is_sorted(masks.begin(), masks.end()));
            distinct.insert(masks);
        }
        EXPECT_EQ(distinct.size(), shapes.size());
    }
    EXPECT_THROW(enumerate_partitions(AgentSet::first(7)), std::invalid_argument);
}
