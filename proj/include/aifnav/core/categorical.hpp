#pragma once

#include <cstddef>
#include <vector>

namespace aifnav {

// Probability vector over a finite index set. Construction validates.
class Categorical {
public:
    static constexpr double kTolerance = 1e-9;

    Categorical() = default;
    explicit Categorical(std::vector<double> probs);

    static Categorical uniform(std::size_t n);
    static Categorical one_hot(std::size_t n, std::size_t index);
    // Normalises non-negative weights; throws when they sum to zero.
    static Categorical from_weights(std::vector<double> weights);

    std::size_t size() const { return probs_.size(); }
    bool empty() const { return probs_.empty(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    const double* data() const { return probs_.data(); }

    // Lowest index wins ties.
    std::size_t argmax() const;
    double max() const;
    double entropy() const;

    bool operator==(const Categorical&) const = default;

private:
    std::vector<double> probs_;
};

// KL(q || p); infinite when q puts mass where p has none.
double kl_divergence(const Categorical& q, const Categorical& p);

}  // namespace aifnav
