#include "aifnav/core/categorical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("categorical: empty support");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("categorical: negative or non-finite entry");
        total += p;
    }
    if (std::abs(total - 1.0) > kTolerance)
        throw std::invalid_argument("categorical: entries sum to " + std::to_string(total));
}

Categorical Categorical::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("categorical: empty support");
    return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Categorical Categorical::one_hot(std::size_t n, std::size_t index) {
    if (index >= n) throw std::out_of_range("categorical: one-hot index out of range");
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return Categorical(std::move(p));
}

Categorical Categorical::from_weights(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("categorical: empty support");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("categorical: negative or non-finite weight");
    const double total = kernels::normalise(weights.data(), weights.size());
    if (!(total > 0.0)) throw std::domain_error("categorical: weights sum to zero");
    return Categorical(std::move(weights));
}

std::size_t Categorical::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs_.size(); ++i)
        if (probs_[i] > probs_[best]) best = i;
    return best;
}

double Categorical::max() const { return probs_.empty() ? 0.0 : probs_[argmax()]; }

double Categorical::entropy() const { return kernels::entropy(probs_.data(), probs_.size()); }

double kl_divergence(const Categorical& q, const Categorical& p) {
    if (q.size() != p.size()) throw std::invalid_argument("kl_divergence: dimension mismatch");
    double kl = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
        kl += q[i] * std::log(q[i] / p[i]);
    }
    return kl;
}

}  // namespace aifnav
