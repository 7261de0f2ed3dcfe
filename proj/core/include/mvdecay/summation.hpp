#pragma once
#include <complex>
#include <cstddef>
#include <vector>

namespace mvdecay {

// Binary-counter ("cascade") pairwise accumulator.  Adding elements one at a
// time costs O(1) amortized, and the final fold is over O(log n) partials.
// The reduction tree depends only on the count of elements added, never on
// thread timing, so a fixed feeding order gives bit-identical sums.
template <typename T>
class PairwiseAccumulator {
  public:
    void add(T x) {
        size_t i = 0;
        while (i < levels_.size() && occupied_[i]) {
            x += levels_[i];
            occupied_[i] = false;
            ++i;
        }
        if (i == levels_.size()) {
            levels_.push_back(x);
            occupied_.push_back(true);
        } else {
            levels_[i] = x;
            occupied_[i] = true;
        }
        ++count_;
    }

    // Non-destructive fold, lowest level first (fixed order).
    T total() const {
        T s{};
        for (size_t i = 0; i < levels_.size(); ++i)
            if (occupied_[i]) s += levels_[i];
        return s;
    }

    size_t count() const { return count_; }

  private:
    std::vector<T> levels_;
    std::vector<bool> occupied_;
    size_t count_ = 0;
};

using ComplexAccumulator = PairwiseAccumulator<std::complex<double>>;

} // namespace mvdecay
