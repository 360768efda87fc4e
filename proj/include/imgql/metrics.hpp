#pragma once

#include <cstdint>
#include <optional>

#include "imgql/fields.hpp"

namespace imgql {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

struct SimilarityIndexes {
    std::optional<double> sensitivity; // tp / (tp + fn)
    std::optional<double> specificity; // tn / (tn + fp)
    std::optional<double> dice;        // 2 tp / (2 tp + fn + fp)
};

ConfusionCounts confusion(const BoolField& seg, const BoolField& truth);
SimilarityIndexes indexes(const ConfusionCounts& c);

} // namespace imgql
