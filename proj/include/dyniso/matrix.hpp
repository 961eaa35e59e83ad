#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace dyniso {

// Dense square matrix with value semantics.  Row-major storage.
template <typename T>
class SquareMat {
public:
    SquareMat() = default;
    explicit SquareMat(int n, const T& init = T{}) : n_(n), v_(static_cast<std::size_t>(n) * n, init) {
        assert(n >= 0);
    }

    static SquareMat identity(int n) {
        SquareMat m(n, T{0});
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < n_ && j >= 0 && j < n_);
        return v_[static_cast<std::size_t>(i) * n_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < n_ && j >= 0 && j < n_);
        return v_[static_cast<std::size_t>(i) * n_ + j];
    }

    std::span<const T> row(int i) const {
        assert(i >= 0 && i < n_);
        return {v_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }

    friend bool operator==(const SquareMat& a, const SquareMat& b) {
        return a.n_ == b.n_ && a.v_ == b.v_;
    }

private:
    int n_ = 0;
    std::vector<T> v_;
};

// out(p[i], p[j]) = in(i, j); p must be a permutation of 0..n-1.
template <typename T>
SquareMat<T> permute_conjugate(const SquareMat<T>& in, const std::vector<int>& p) {
    const int n = in.size();
    assert(static_cast<int>(p.size()) == n);
    SquareMat<T> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(p[i], p[j]) = in(i, j);
    return out;
}

}  // namespace dyniso
