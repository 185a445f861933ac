#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"

namespace coarsekit {

/// 2x2 integer matrix of determinant 1. Entries stay tiny at the word-ball
/// radii used here (<= 12 generator letters), so int64 is ample.
struct SL2Mat {
    long long a = 1, b = 0, c = 0, d = 1;

    friend SL2Mat operator*(const SL2Mat& x, const SL2Mat& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    SL2Mat inverse() const { return {d, -b, -c, a}; } // valid since det = 1
    long long det() const { return a * d - b * c; }

    friend bool operator==(const SL2Mat& x, const SL2Mat& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator<(const SL2Mat& x, const SL2Mat& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }

    std::string to_string() const {
        return "[" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," +
               std::to_string(d) + "]";
    }
};

inline SL2Mat sl2_identity() { return {1, 0, 0, 1}; }
inline SL2Mat sl2_t() { return {1, 1, 0, 1}; }
inline SL2Mat sl2_s() { return {0, -1, 1, 0}; }

/// The four standard generator letters in a fixed order: T, T^-1, S, S^-1.
inline const std::vector<SL2Mat>& sl2_generators() {
    static const std::vector<SL2Mat> gens = {sl2_t(), sl2_t().inverse(), sl2_s(),
                                             sl2_s().inverse()};
    return gens;
}

/// Parses words like "T S T^-1 S^-1" (also accepts T-1 / T^{-1}).
inline SL2Mat parse_sl2_word(const std::string& word) {
    SL2Mat m = sl2_identity();
    std::size_t i = 0;
    while (i < word.size()) {
        if (std::isspace(static_cast<unsigned char>(word[i]))) {
            ++i;
            continue;
        }
        const char ch = word[i];
        if (ch != 'T' && ch != 'S' && ch != 't' && ch != 's' && ch != 'e' && ch != 'E')
            throw Error("parse_sl2_word: unexpected character '" + std::string(1, ch) + "'");
        ++i;
        if (ch == 'e' || ch == 'E') continue;
        bool inv = false;
        if (i < word.size() && (word[i] == '^' || word[i] == '-')) {
            std::size_t j = i;
            if (word[j] == '^') ++j;
            if (j < word.size() && word[j] == '{') ++j;
            if (j < word.size() && word[j] == '-') {
                ++j;
                if (j < word.size() && word[j] == '1') ++j;
                if (j < word.size() && word[j] == '}') ++j;
                inv = true;
                i = j;
            }
        }
        SL2Mat g = (ch == 'T' || ch == 't') ? sl2_t() : sl2_s();
        if (inv) g = g.inverse();
        m = m * g;
    }
    return m;
}

/// Ball in SL(2,Z) under the word metric on {T^±1, S^±1}: elements
/// enumerated by breadth-first products, deduplicated by matrix equality,
/// with the exact word length of each element.
struct SL2WordBall {
    int radius = 0;
    std::vector<SL2Mat> elems;   // BFS order; index 0 is the identity
    std::vector<int> length;     // word length per element
    std::map<SL2Mat, int> index;

    int find(const SL2Mat& m) const {
        const auto it = index.find(m);
        return it == index.end() ? -1 : it->second;
    }
};

inline SL2WordBall sl2_word_ball(int radius) {
    if (radius < 0) throw Error("sl2_word_ball: radius must be >= 0");
    SL2WordBall ball;
    ball.radius = radius;
    ball.elems.push_back(sl2_identity());
    ball.length.push_back(0);
    ball.index[sl2_identity()] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        const int i = q.front();
        q.pop();
        if (ball.length[static_cast<std::size_t>(i)] >= radius) continue;
        for (const auto& g : sl2_generators()) {
            const SL2Mat next = ball.elems[static_cast<std::size_t>(i)] * g;
            if (ball.index.count(next)) continue;
            const int id = static_cast<int>(ball.elems.size());
            ball.elems.push_back(next);
            ball.length.push_back(ball.length[static_cast<std::size_t>(i)] + 1);
            ball.index[next] = id;
            q.push(id);
        }
    }
    return ball;
}

// ---------------------------------------------------------------------------

inline constexpr int kSl2ModulusCap = 13;

/// |SL(2,Z/n)| = n^3 * prod_{p | n} (1 - p^-2).
inline long long sl2_order(int n) {
    long long order = static_cast<long long>(n) * n * n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        order = order / (static_cast<long long>(p) * p) * (static_cast<long long>(p) * p - 1);
    }
    if (m > 1) order = order / (static_cast<long long>(m) * m) * (static_cast<long long>(m) * m - 1);
    return order;
}

/// SL(2,Z/n) enumerated by orbit closure from the generator images.
/// Elements are packed a<<24|b<<16|c<<8|d (entries reduced to 0..n-1).
class SL2Quotient {
public:
    explicit SL2Quotient(int n) : n_(n) {
        if (n < 2) throw Error("sl2_quotient: modulus must be >= 2");
        if (n > kSl2ModulusCap)
            throw Error("sl2_quotient: modulus " + std::to_string(n) +
                        " beyond the cap of " + std::to_string(kSl2ModulusCap) +
                        " (|SL(2,Z/13)| = 2184 is the largest table kept in memory)");

        const std::uint32_t id = pack(1 % n, 0, 0, 1 % n);
        index_[id] = 0;
        elems_.push_back(id);
        std::queue<std::uint32_t> q;
        q.push(id);
        std::vector<std::uint32_t> gens;
        for (const auto& g : sl2_generators()) gens.push_back(reduce(g));
        while (!q.empty()) {
            const std::uint32_t cur = q.front();
            q.pop();
            for (const std::uint32_t g : gens) {
                const std::uint32_t next = mul_packed(cur, g);
                if (index_.count(next)) continue;
                index_[next] = static_cast<int>(elems_.size());
                elems_.push_back(next);
                q.push(next);
            }
        }
        if (static_cast<long long>(elems_.size()) != sl2_order(n))
            throw Error("sl2_quotient: enumeration found " + std::to_string(elems_.size()) +
                        " elements, expected " + std::to_string(sl2_order(n)));
    }

    int modulus() const { return n_; }
    int order() const { return static_cast<int>(elems_.size()); }

    /// Index of an integer matrix reduced mod n.
    int reduce_index(const SL2Mat& m) const {
        const auto it = index_.find(reduce(m));
        if (it == index_.end())
            throw Error("sl2_quotient: matrix " + m.to_string() + " reduces outside SL(2,Z/" +
                        std::to_string(n_) + "), determinant " + std::to_string(m.det()));
        return it->second;
    }

    int multiply(int i, int j) const {
        return index_.at(mul_packed(elems_[static_cast<std::size_t>(i)],
                                    elems_[static_cast<std::size_t>(j)]));
    }

    /// Permutation of left translation by group element g: h -> g*h.
    std::vector<int> left_translation(int g) const {
        std::vector<int> perm(elems_.size());
        for (std::size_t h = 0; h < elems_.size(); ++h)
            perm[h] = multiply(g, static_cast<int>(h));
        return perm;
    }

    /// Permutation of right translation h -> h*g.
    std::vector<int> right_translation(int g) const {
        std::vector<int> perm(elems_.size());
        for (std::size_t h = 0; h < elems_.size(); ++h)
            perm[h] = multiply(static_cast<int>(h), g);
        return perm;
    }

    int identity_index() const { return 0; }

private:
    std::uint32_t pack(int a, int b, int c, int d) const {
        return (static_cast<std::uint32_t>(a) << 24) | (static_cast<std::uint32_t>(b) << 16) |
               (static_cast<std::uint32_t>(c) << 8) | static_cast<std::uint32_t>(d);
    }

    std::uint32_t reduce(const SL2Mat& m) const {
        auto r = [&](long long v) { return static_cast<int>(((v % n_) + n_) % n_); };
        return pack(r(m.a), r(m.b), r(m.c), r(m.d));
    }

    std::uint32_t mul_packed(std::uint32_t x, std::uint32_t y) const {
        const int xa = static_cast<int>(x >> 24), xb = static_cast<int>((x >> 16) & 0xff),
                  xc = static_cast<int>((x >> 8) & 0xff), xd = static_cast<int>(x & 0xff);
        const int ya = static_cast<int>(y >> 24), yb = static_cast<int>((y >> 16) & 0xff),
                  yc = static_cast<int>((y >> 8) & 0xff), yd = static_cast<int>(y & 0xff);
        return pack((xa * ya + xb * yc) % n_, (xa * yb + xb * yd) % n_,
                    (xc * ya + xd * yc) % n_, (xc * yb + xd * yd) % n_);
    }

    int n_;
    std::vector<std::uint32_t> elems_;
    std::unordered_map<std::uint32_t, int> index_;
};

/// Cayley graph of SL(2,Z/n) with respect to integer generator matrices
/// (the set must be closed under inverse mod n so the graph is undirected).
/// Vertices follow the quotient's enumeration order; edges are {g, gs}.
inline FiniteGraph cayley_graph_sl2(int n, const std::vector<SL2Mat>& generators) {
    SL2Quotient q(n);
    std::vector<int> gen_idx;
    for (const auto& g : generators) {
        if ((g.det() % n + n) % n != 1 % n)
            throw Error("cayley_graph_sl2: generator " + g.to_string() +
                        " has determinant " + std::to_string(g.det()) + " != 1 mod " +
                        std::to_string(n));
        gen_idx.push_back(q.reduce_index(g));
    }
    // closure under inverse: for each generator image, its inverse must be present
    for (const auto& g : generators) {
        const int inv = q.reduce_index(g.inverse());
        if (std::find(gen_idx.begin(), gen_idx.end(), inv) == gen_idx.end())
            throw Error("cayley_graph_sl2: generator set not closed under inverse (missing " +
                        g.inverse().to_string() + " mod " + std::to_string(n) + ")");
    }

    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < q.order(); ++v)
        for (int s : gen_idx) {
            const int w = q.multiply(v, s);
            if (v < w) edges.emplace_back(v, w);
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return FiniteGraph(q.order(), std::move(edges));
}

inline FiniteGraph cayley_graph_sl2(int n) {
    return cayley_graph_sl2(n, sl2_generators());
}

} // namespace coarsekit
