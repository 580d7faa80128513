#include "factplan/kd_index.hpp"

#include <cmath>
#include <stdexcept>

namespace factplan {

void KdIndex::insert(std::span<const double> p, std::uint32_t payload) {
    if (p.size() != dim_) {
        throw std::invalid_argument("point dimension does not match index");
    }
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    coords_.insert(coords_.end(), p.begin(), p.end());
    if (nodes_.empty()) {
        nodes_.push_back({payload, kNone, kNone, 0});
        return;
    }
    std::uint32_t cur = 0;
    for (;;) {
        TreeNode& n = nodes_[cur];
        const std::uint32_t axis = n.axis;
        const bool go_left = p[axis] < point(cur)[axis];
        std::uint32_t& child = go_left ? n.left : n.right;
        if (child == kNone) {
            child = id;
            nodes_.push_back({payload, kNone, kNone, static_cast<std::uint32_t>((axis + 1) % dim_)});
            return;
        }
        cur = child;
    }
}

void KdIndex::radius_query(std::span<const double> q, double radius, std::vector<std::uint32_t>& out) const {
    if (nodes_.empty()) {
        return;
    }
    const double r2 = radius * radius;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const std::uint32_t cur = stack.back();
        stack.pop_back();
        const TreeNode& n = nodes_[cur];
        const auto p = point(cur);
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double diff = p[k] - q[k];
            d2 += diff * diff;
        }
        if (d2 <= r2) {
            out.push_back(n.payload);
        }
        const double delta = q[n.axis] - p[n.axis];
        // Points with coordinate equal to the split value live on the right.
        if (n.left != kNone && delta - radius < 0.0) {
            stack.push_back(n.left);
        }
        if (n.right != kNone && delta + radius >= 0.0) {
            stack.push_back(n.right);
        }
    }
}

}  // namespace factplan
