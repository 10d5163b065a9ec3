#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qrl/core/errors.hpp"

namespace qrl {

// Distinguished empty symbol. Every interaction opens with it, and quantum
// percept registers use it as the fiducial slot value.
inline constexpr const char* kEmptyLabel = "eps";

// Ordered finite label set with a total label <-> index bijection.
// When the empty symbol is present it always sits at index 0.
class FiniteSpace {
  public:
    FiniteSpace() = default;

    static FiniteSpace with_empty(std::vector<std::string> raw_labels) {
        std::vector<std::string> all;
        all.reserve(raw_labels.size() + 1);
        all.emplace_back(kEmptyLabel);
        for (auto& l : raw_labels) all.push_back(std::move(l));
        return FiniteSpace(std::move(all), true);
    }

    static FiniteSpace plain(std::vector<std::string> labels) {
        return FiniteSpace(std::move(labels), false);
    }

    std::size_t size() const { return labels_.size(); }
    bool contains_empty() const { return contains_empty_; }

    const std::string& label(std::size_t i) const { return labels_.at(i); }

    int index(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) throw SpaceMismatch("unknown label: " + std::string(label));
        return it->second;
    }

    bool has_label(std::string_view label) const {
        return index_.count(std::string(label)) != 0;
    }

    bool operator==(const FiniteSpace& o) const {
        return labels_ == o.labels_ && contains_empty_ == o.contains_empty_;
    }

  private:
    FiniteSpace(std::vector<std::string> labels, bool contains_empty)
        : labels_(std::move(labels)), contains_empty_(contains_empty) {
        int count_empty = 0;
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw SpaceMismatch("duplicate label: " + labels_[i]);
            if (labels_[i] == kEmptyLabel) ++count_empty;
        }
        if (contains_empty_ && (count_empty != 1 || labels_[0] != kEmptyLabel))
            throw SpaceMismatch("empty symbol must appear exactly once, at index 0");
        if (!contains_empty_ && count_empty != 0)
            throw SpaceMismatch("empty symbol present in a space declared without it");
    }

    std::vector<std::string> labels_;
    bool contains_empty_ = false;
    std::unordered_map<std::string, int> index_;
};

// n abstract actions "a0".."a{n-1}". The empty symbol is not an action an
// agent can emit, so action spaces carry only the real moves.
inline FiniteSpace make_action_space(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
    return FiniteSpace::plain(std::move(labels));
}

}  // namespace qrl
