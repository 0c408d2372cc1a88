#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gravhycom {

/// Permutation of {1..n}; images()[k-1] is the image of k.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<int> sorted = images_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k)
            if (sorted[k] != static_cast<int>(k) + 1) throw std::invalid_argument("Permutation: not a bijection");
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }
    static Permutation transposition(int n, int a, int b) {
        Permutation p = identity(n);
        std::swap(p.images_.at(a - 1), p.images_.at(b - 1));
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int k) const { return images_.at(k - 1); }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t k = 0; k < images_.size(); ++k) inv[images_[k] - 1] = static_cast<int>(k) + 1;
        return Permutation(std::move(inv));
    }

    /// (a * b)(k) = a(b(k))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch");
        std::vector<int> im(a.images_.size());
        for (std::size_t k = 0; k < im.size(); ++k) im[k] = a(b.images_[k]);
        return Permutation(std::move(im));
    }

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
    return out;
}

}  // namespace gravhycom
