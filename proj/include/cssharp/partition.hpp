#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cssharp/errors.hpp"

namespace cssharp {

/// A labeling of sample indices 0..n-1 into nonempty groups: the finite
/// sigma-algebra used for empirical conditioning.
///
/// Arbitrary integer labels are normalized to dense ids 0..group_count()-1
/// in order of first appearance.
class Partition {
public:
    explicit Partition(std::span<const std::int64_t> labels) {
        if (labels.empty()) throw EmptySample("partition must label at least one index");
        std::unordered_map<std::int64_t, std::size_t> dense;
        group_of_.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto [it, inserted] = dense.try_emplace(labels[i], members_.size());
            if (inserted) members_.emplace_back();
            group_of_.push_back(it->second);
            members_[it->second].push_back(i);
        }
    }
    explicit Partition(const std::vector<std::int64_t>& labels)
        : Partition(std::span<const std::int64_t>(labels)) {}

    /// One group holding every index.
    static Partition trivial(std::size_t n) { return Partition(std::vector<std::int64_t>(n, 0)); }

    /// Every index in its own group.
    static Partition singletons(std::size_t n) {
        std::vector<std::int64_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
        return Partition(labels);
    }

    [[nodiscard]] std::size_t size() const noexcept { return group_of_.size(); }
    [[nodiscard]] std::size_t group_count() const noexcept { return members_.size(); }
    [[nodiscard]] std::size_t group_of(std::size_t i) const noexcept { return group_of_[i]; }
    /// Indices of group g in increasing order.
    [[nodiscard]] const std::vector<std::size_t>& members(std::size_t g) const noexcept {
        return members_[g];
    }

private:
    std::vector<std::size_t> group_of_;
    std::vector<std::vector<std::size_t>> members_;
};

} // namespace cssharp
