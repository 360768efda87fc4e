#include "imgql/metrics.hpp"

namespace imgql {

ConfusionCounts confusion(const BoolField& seg, const BoolField& truth) {
    require_same_geometry(seg.geometry(), truth.geometry(), "confusion counts");
    ConfusionCounts c;
    const std::uint8_t* s = seg.data();
    const std::uint8_t* t = truth.data();
    const std::int64_t n = seg.size();
    for (std::int64_t i = 0; i < n; ++i) {
        if (s[i]) {
            if (t[i])
                ++c.tp;
            else
                ++c.fp;
        } else {
            if (t[i])
                ++c.fn;
            else
                ++c.tn;
        }
    }
    return c;
}

SimilarityIndexes indexes(const ConfusionCounts& c) {
    SimilarityIndexes idx;
    if (c.tp + c.fn > 0)
        idx.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (c.tn + c.fp > 0)
        idx.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    if (2 * c.tp + c.fn + c.fp > 0)
        idx.dice = static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fn + c.fp);
    return idx;
}

} // namespace imgql
