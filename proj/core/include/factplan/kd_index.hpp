#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace factplan {

/// Incremental k-d tree over fixed-dimension points for Euclidean radius queries.
/// Payloads are opaque 32-bit handles.
class KdIndex {
public:
    explicit KdIndex(std::size_t dim) : dim_(dim) {}

    void insert(std::span<const double> point, std::uint32_t payload);

    /// Appends the payload of every point within `radius` (inclusive) of `query`.
    void radius_query(std::span<const double> query, double radius, std::vector<std::uint32_t>& out) const;

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] std::size_t dim() const { return dim_; }

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    struct TreeNode {
        std::uint32_t payload;
        std::uint32_t left = kNone;
        std::uint32_t right = kNone;
        std::uint32_t axis;
    };

    [[nodiscard]] std::span<const double> point(std::uint32_t i) const {
        return std::span<const double>(coords_).subspan(static_cast<std::size_t>(i) * dim_, dim_);
    }

    std::size_t dim_;
    std::vector<double> coords_;
    std::vector<TreeNode> nodes_;
};

}  // namespace factplan
