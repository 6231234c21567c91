#ifndef RPT_VERTEX_SET_HPP
#define RPT_VERTEX_SET_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "rpt/rational.hpp"

namespace rpt {

/// Set of vertex ids over a fixed universe {0..n-1}, stored as a bit vector.
/// Popcount-based intersection counting is the hot loop of exhaustive
/// certification, so everything here stays word-level.
class VertexSet {
  public:
    VertexSet() : n_(0) {}
    explicit VertexSet(int n) : n_(n), w_((n + 63) / 64, 0) {}
    VertexSet(int n, std::initializer_list<int> ids) : VertexSet(n) {
        for (int v : ids) add(v);
    }

    static VertexSet full(int n) {
        VertexSet s(n);
        for (int i = 0; i < n; ++i) s.add(i);
        return s;
    }

    int universe() const { return n_; }

    void add(int v) {
        check(v);
        w_[v >> 6] |= (uint64_t{1} << (v & 63));
    }
    void remove(int v) {
        check(v);
        w_[v >> 6] &= ~(uint64_t{1} << (v & 63));
    }
    bool contains(int v) const {
        if (v < 0 || v >= n_) return false;
        return (w_[v >> 6] >> (v & 63)) & 1;
    }

    int size() const {
        int c = 0;
        for (uint64_t x : w_) c += __builtin_popcountll(x);
        return c;
    }
    bool empty() const {
        for (uint64_t x : w_)
            if (x) return false;
        return true;
    }

    VertexSet operator|(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a | b; }); }
    VertexSet operator&(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & b; }); }
    VertexSet operator-(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }
    VertexSet operator^(const VertexSet& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }

    VertexSet complement() const {
        VertexSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    bool subset_of(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    int intersection_size(const VertexSet& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += __builtin_popcountll(w_[i] & o.w_[i]);
        return c;
    }

    /// Smallest element, or -1 on the empty set.
    int min() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + __builtin_ctzll(w_[i]));
        return -1;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(size());
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t x = w_[i];
            while (x) {
                out.push_back(int(i * 64 + __builtin_ctzll(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t x = w_[i];
            while (x) {
                f(int(i * 64 + __builtin_ctzll(x)));
                x &= x - 1;
            }
        }
    }

    /// Lexicographic order on the ascending id sequences; a proper prefix
    /// precedes its extensions. This is the order used for "least witness".
    static bool lex_less(const VertexSet& a, const VertexSet& b) {
        auto va = a.to_vector(), vb = b.to_vector();
        return va < vb;
    }

    const std::vector<uint64_t>& words() const { return w_; }

  private:
    template <typename Op>
    VertexSet apply(const VertexSet& o, Op op) const {
        if (n_ != o.n_) throw input_error("vertex-set universe mismatch");
        VertexSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = op(w_[i], o.w_[i]);
        return r;
    }
    void check(int v) const {
        if (v < 0 || v >= n_) throw input_error("vertex id " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
    }
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_;
    std::vector<uint64_t> w_;
};

}  // namespace rpt

#endif
