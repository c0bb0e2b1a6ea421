#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "episent/types.hpp"

namespace episent {

struct SplitSpec {
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
};

// Shuffled index partition: a pure function of (n, spec). Fisher-Yates is
// driven directly off mt19937_64 draws so the permutation is identical on
// every platform (std::shuffle would not be).
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const SplitSpec& spec) {
    if (n < 2) throw ValidationError("need at least 2 items to split");
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
        throw ValidationError("test_fraction must lie in (0, 1)");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
    }

    std::size_t n_test = static_cast<std::size_t>(
        std::llround(spec.test_fraction * static_cast<double>(n)));
    std::vector<std::size_t> test(order.begin(), order.begin() + n_test);
    std::vector<std::size_t> train(order.begin() + n_test, order.end());
    return {std::move(train), std::move(test)};
}

template <typename Item, typename Label>
struct SplitResult {
    std::vector<Item> train_items;
    std::vector<Label> train_labels;
    std::vector<Item> test_items;
    std::vector<Label> test_labels;
};

template <typename Item, typename Label>
SplitResult<Item, Label> train_test_split(const std::vector<Item>& items,
                                          const std::vector<Label>& labels,
                                          const SplitSpec& spec) {
    if (items.size() != labels.size())
        throw ValidationError("items and labels must have the same length");
    auto [train_idx, test_idx] = split_indices(items.size(), spec);
    SplitResult<Item, Label> result;
    result.train_items.reserve(train_idx.size());
    result.train_labels.reserve(train_idx.size());
    for (std::size_t i : train_idx) {
        result.train_items.push_back(items[i]);
        result.train_labels.push_back(labels[i]);
    }
    result.test_items.reserve(test_idx.size());
    result.test_labels.reserve(test_idx.size());
    for (std::size_t i : test_idx) {
        result.test_items.push_back(items[i]);
        result.test_labels.push_back(labels[i]);
    }
    return result;
}

}  // namespace episent
