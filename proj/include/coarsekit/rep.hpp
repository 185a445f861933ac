#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/bigint.hpp"
#include "coarsekit/eigen.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/sl2.hpp"

namespace coarsekit {

/// Finitely supported rational-coefficient function on SL(2,Z), the group
/// elements held as integer matrices (exact word problem by comparison).
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;

    void add(const SL2Mat& g, const Rational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(g, coeff);
        if (!fresh) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static GroupAlgebraElement delta(const SL2Mat& g) {
        GroupAlgebraElement x;
        x.add(g, Rational(1));
        return x;
    }

    const std::map<SL2Mat, Rational>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// (x*)(g) = conj(x(g^-1)); coefficients are real rationals here.
    GroupAlgebraElement star() const {
        GroupAlgebraElement out;
        for (const auto& [g, c] : terms_) out.add(g.inverse(), c);
        return out;
    }

    friend GroupAlgebraElement convolve(const GroupAlgebraElement& x,
                                        const GroupAlgebraElement& y) {
        GroupAlgebraElement out;
        for (const auto& [g, cg] : x.terms_)
            for (const auto& [h, ch] : y.terms_) out.add(g * h, cg * ch);
        return out;
    }

    /// Max word length over the support; the ball must contain the support.
    int support_radius(const SL2WordBall& ball) const {
        int r = 0;
        for (const auto& [g, c] : terms_) {
            const int i = ball.find(g);
            if (i < 0)
                throw Error("support_radius: element " + g.to_string() +
                            " outside the enumerated word ball of radius " +
                            std::to_string(ball.radius));
            r = std::max(r, ball.length[static_cast<std::size_t>(i)]);
        }
        return r;
    }

private:
    std::map<SL2Mat, Rational> terms_;
};

/// (1/4)(T + T^-1 + S + S^-1), the averaging element of the standard
/// generators.
inline GroupAlgebraElement markov_element() {
    GroupAlgebraElement m;
    for (const auto& g : sl2_generators()) m.add(g, Rational(1, 4));
    return m;
}

// ---------------------------------------------------------------------------

/// Congruence representation at one modulus: group elements act on
/// l2(SL(2,Z/n)) by translation of the quotient, u_n(g) delta_h =
/// delta_{pi_n(g) h}. An algebra element becomes the sparse operator
/// sum_g x(g) u_n(g), kept as (permutation, coefficient) pairs.
class PermutationRep {
public:
    explicit PermutationRep(int modulus) : q_(modulus) {}

    const SL2Quotient& quotient() const { return q_; }
    int dim() const { return q_.order(); }

    struct Operator {
        int dim = 0;
        std::vector<std::pair<std::vector<int>, double>> parts; // (translation perm, coeff)

        void apply(const std::vector<double>& in, std::vector<double>& out) const {
            out.assign(in.size(), 0.0);
            for (const auto& [perm, c] : parts)
                for (int h = 0; h < dim; ++h)
                    out[static_cast<std::size_t>(perm[static_cast<std::size_t>(h)])] +=
                        c * in[static_cast<std::size_t>(h)];
        }

        void apply_transpose(const std::vector<double>& in, std::vector<double>& out) const {
            out.assign(in.size(), 0.0);
            for (const auto& [perm, c] : parts)
                for (int h = 0; h < dim; ++h)
                    out[static_cast<std::size_t>(h)] +=
                        c * in[static_cast<std::size_t>(perm[static_cast<std::size_t>(h)])];
        }

        SymMatrix dense() const {
            SymMatrix m(dim); // not symmetric in general; SymMatrix is plain dense storage
            for (const auto& [perm, c] : parts)
                for (int h = 0; h < dim; ++h)
                    m.at(perm[static_cast<std::size_t>(h)], h) += c;
            return m;
        }
    };

    Operator op(const GroupAlgebraElement& x) const {
        Operator o;
        o.dim = dim();
        for (const auto& [g, c] : x.terms())
            o.parts.emplace_back(q_.left_translation(q_.reduce_index(g)), c.to_double());
        return o;
    }

    /// Exact sparse matrix of sum_g x(g) u_n(g), entries by (row, col).
    std::map<std::pair<int, int>, Rational> exact_matrix(const GroupAlgebraElement& x) const {
        std::map<std::pair<int, int>, Rational> m;
        for (const auto& [g, c] : x.terms()) {
            const auto perm = q_.left_translation(q_.reduce_index(g));
            for (int h = 0; h < dim(); ++h) {
                const auto key = std::make_pair(perm[static_cast<std::size_t>(h)], h);
                auto [it, fresh] = m.try_emplace(key, c);
                if (!fresh) {
                    it->second = it->second + c;
                    if (it->second.is_zero()) m.erase(it);
                }
            }
        }
        return m;
    }

    /// Operator 2-norm of u_n(x) by power iteration on M^T M.
    double operator_norm(const GroupAlgebraElement& x, std::uint64_t seed = 1) const {
        if (x.empty()) return 0.0;
        const Operator o = op(x);
        return operator_norm_power(
            [&](const std::vector<double>& in, std::vector<double>& out) { o.apply(in, out); },
            [&](const std::vector<double>& in, std::vector<double>& out) {
                o.apply_transpose(in, out);
            },
            dim(), dim(), seed);
    }

private:
    SL2Quotient q_;
};

/// Exact check that u_n(x (*) y) = u_n(x) u_n(y) as rational matrices.
inline bool representation_property_exact(const PermutationRep& rep, const GroupAlgebraElement& x,
                                          const GroupAlgebraElement& y) {
    const auto lhs = rep.exact_matrix(convolve(x, y));

    // sparse product u(x) * u(y): rows of u(y) indexed for lookup
    const auto mx = rep.exact_matrix(x);
    const auto my = rep.exact_matrix(y);
    std::vector<std::vector<std::pair<int, Rational>>> y_rows(static_cast<std::size_t>(rep.dim()));
    for (const auto& [key, c] : my) y_rows[static_cast<std::size_t>(key.first)].emplace_back(key.second, c);

    std::map<std::pair<int, int>, Rational> prod;
    for (const auto& [key, a] : mx) {
        const auto [i, k] = key;
        for (const auto& [j, b] : y_rows[static_cast<std::size_t>(k)]) {
            const auto pk = std::make_pair(i, j);
            auto [it, fresh] = prod.try_emplace(pk, a * b);
            if (!fresh) {
                it->second = it->second + a * b;
                if (it->second.is_zero()) prod.erase(it);
            }
        }
    }
    return lhs == prod;
}

/// | ||u_n(x* x)|| - ||u_n(x)||^2 |, the numerical C*-identity defect.
inline double c_star_identity_defect(const PermutationRep& rep, const GroupAlgebraElement& x,
                                     std::uint64_t seed = 1) {
    const double nx = rep.operator_norm(x, seed);
    const double nxx = rep.operator_norm(convolve(x.star(), x), seed + 1);
    return std::abs(nxx - nx * nx);
}

// ---------------------------------------------------------------------------

struct CongruenceNorms {
    std::vector<std::pair<int, double>> per_modulus;
    double sup = 0.0;
};

/// ||x||_cong restricted to the listed moduli: the table of ||u_n(x)|| and
/// its max. The true norm is a sup over all n; what is reported is the
/// certified lower part from the computed moduli, never the asymptotic
/// value.
inline CongruenceNorms congruence_norm(const GroupAlgebraElement& x, const std::vector<int>& moduli,
                                       std::uint64_t seed = 1) {
    CongruenceNorms out;
    for (const int n : moduli) {
        PermutationRep rep(n);
        const double nm = rep.operator_norm(x, seed);
        out.per_modulus.emplace_back(n, nm);
        out.sup = std::max(out.sup, nm);
    }
    return out;
}

struct PushforwardCheck {
    bool injective = false;
    std::optional<std::pair<SL2Mat, SL2Mat>> collision; // witness when not injective
    Rational lhs_norm_sq;                               // ||u_n(x) xi_n||^2, exact
    Rational rhs_norm_sq;                               // ||lambda(x) xi||^2, exact
    bool norms_equal = false;
};

/// The mechanism by which the congruence norm dominates the reduced norm:
/// when pi_n is injective on supp(xi) and supp(lambda(x) xi), the
/// pushforward vector xi_n satisfies ||u_n(x) xi_n|| = ||lambda(x) xi||
/// exactly. Everything is computed in rational arithmetic.
inline PushforwardCheck pushforward_isometry_check(const GroupAlgebraElement& x,
                                                   const GroupAlgebraElement& xi, int n) {
    PushforwardCheck out;
    const GroupAlgebraElement xxi = convolve(x, xi);

    std::vector<SL2Mat> support;
    for (const auto& [g, c] : xi.terms()) support.push_back(g);
    for (const auto& [g, c] : xxi.terms()) support.push_back(g);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    SL2Quotient q(n);
    std::map<int, SL2Mat> seen;
    out.injective = true;
    for (const auto& g : support) {
        const int idx = q.reduce_index(g);
        const auto it = seen.find(idx);
        if (it != seen.end()) {
            out.injective = false;
            out.collision = std::make_pair(it->second, g);
            break;
        }
        seen.emplace(idx, g);
    }

    // rhs: ||lambda(x) xi||^2 over the group
    for (const auto& [g, c] : xxi.terms()) out.rhs_norm_sq = out.rhs_norm_sq + c * c;

    // lhs: push xi forward, apply the quotient operator, take the norm
    std::map<int, Rational> xi_n;
    for (const auto& [g, c] : xi.terms()) {
        const int idx = q.reduce_index(g);
        auto [it, fresh] = xi_n.try_emplace(idx, c);
        if (!fresh) it->second = it->second + c;
    }
    std::map<int, Rational> image;
    for (const auto& [g, cg] : x.terms()) {
        const int gi = q.reduce_index(g);
        for (const auto& [h, ch] : xi_n) {
            const int target = q.multiply(gi, h);
            auto [it, fresh] = image.try_emplace(target, cg * ch);
            if (!fresh) it->second = it->second + cg * ch;
        }
    }
    for (const auto& [idx, c] : image) out.lhs_norm_sq = out.lhs_norm_sq + c * c;

    out.norms_equal = out.lhs_norm_sq == out.rhs_norm_sq;
    return out;
}

/// First modulus in [2, cap] whose reduction is injective on the supports;
/// reported empirically, there is no a priori formula for it.
inline std::optional<int> first_injective_modulus(const GroupAlgebraElement& x,
                                                  const GroupAlgebraElement& xi,
                                                  int cap = kSl2ModulusCap) {
    for (int n = 2; n <= cap; ++n) {
        if (pushforward_isometry_check(x, xi, n).injective) return n;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct GapEntry {
    int modulus = 0;
    int dim = 0;
    double lambda2 = 0.0;     // largest averaging-operator eigenvalue on the complement of constants
    double lambda_min = 0.0;  // smallest eigenvalue
    double lambda2_star = 0.0; // max(|lambda2|, |lambda_min|)
};

struct GapReport {
    std::vector<GapEntry> entries;
    double epsilon = 0.0; // min over moduli of 1 - lambda2; > 0 is the isolation certificate
};

inline constexpr int kDenseEigenLimit = 400;

namespace detail {

/// lambda2 and lambda_min of the averaging operator: dense Jacobi when the
/// dimension allows, otherwise power iteration on (I ± M)/2 with the
/// constants deflated at every step.
inline GapEntry averaging_gap_entry(const PermutationRep& rep, const GroupAlgebraElement& avg,
                                    std::uint64_t seed) {
    GapEntry e;
    e.modulus = rep.quotient().modulus();
    e.dim = rep.dim();
    const auto o = rep.op(avg);

    if (rep.dim() <= kDenseEigenLimit) {
        const auto sys = jacobi_eigensystem(o.dense());
        e.lambda_min = sys.values.front();
        e.lambda2 = sys.values[static_cast<std::size_t>(rep.dim()) - 2];
    } else {
        const int n = rep.dim();
        auto deflate = [n](std::vector<double>& v) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= n;
            for (double& x : v) x -= mean;
        };
        MatVec plus = [&](const std::vector<double>& in, std::vector<double>& out) {
            std::vector<double> tmp = in;
            deflate(tmp);
            o.apply(tmp, out);
            for (int i = 0; i < n; ++i)
                out[static_cast<std::size_t>(i)] = 0.5 * (tmp[static_cast<std::size_t>(i)] +
                                                          out[static_cast<std::size_t>(i)]);
            deflate(out);
        };
        MatVec minus = [&](const std::vector<double>& in, std::vector<double>& out) {
            std::vector<double> tmp = in;
            deflate(tmp);
            o.apply(tmp, out);
            for (int i = 0; i < n; ++i)
                out[static_cast<std::size_t>(i)] = 0.5 * (tmp[static_cast<std::size_t>(i)] -
                                                          out[static_cast<std::size_t>(i)]);
            deflate(out);
        };
        e.lambda2 = 2.0 * power_dominant_eigen(plus, n, seed) - 1.0;
        e.lambda_min = 1.0 - 2.0 * power_dominant_eigen(minus, n, seed + 7);
    }
    e.lambda2_star = std::max(std::abs(e.lambda2), std::abs(e.lambda_min));
    return e;
}

} // namespace detail

/// Isolation of the trivial representation across moduli: the averaging
/// operator of a symmetric generator set fixes constants with eigenvalue 1;
/// the report tables its spectrum on the orthocomplement per modulus and
/// the uniform gap epsilon = min_n (1 - lambda2(M_n)).
inline GapReport trivial_isolation_gap(const std::vector<int>& moduli,
                                       const std::vector<SL2Mat>& generators,
                                       std::uint64_t seed = 1) {
    for (const auto& g : generators) {
        bool has_inverse = false;
        for (const auto& h : generators)
            if (h == g.inverse()) has_inverse = true;
        if (!has_inverse)
            throw Error("trivial_isolation_gap: generator set must be symmetric, missing inverse of " +
                        g.to_string());
    }
    GroupAlgebraElement avg;
    const Rational w(1, static_cast<long long>(generators.size()));
    for (const auto& g : generators) avg.add(g, w);

    GapReport rep;
    rep.epsilon = 1.0;
    for (const int n : moduli) {
        PermutationRep pr(n);
        const GapEntry e = detail::averaging_gap_entry(pr, avg, seed);
        rep.epsilon = std::min(rep.epsilon, 1.0 - e.lambda2);
        rep.entries.push_back(e);
    }
    return rep;
}

inline GapReport trivial_isolation_gap(const std::vector<int>& moduli, std::uint64_t seed = 1) {
    return trivial_isolation_gap(moduli, sl2_generators(), seed);
}

// ---------------------------------------------------------------------------

struct DecayEntry {
    int k = 0;
    double norm = 0.0;  // ||M^k - P||
    double bound = 0.0; // (lambda2*)^k
};

struct KazhdanDecay {
    int modulus = 0;
    double lambda2_star = 0.0;
    std::vector<DecayEntry> table; // k = 0..k_max
};

/// ||M_n^k - P_n|| by direct matrix powers, against the spectral bound
/// (lambda2*)^k. P_n is the projection onto constants; the powers of the
/// averaging operator converging to it in norm is the finite-dimensional
/// shadow of the Kazhdan projection.
inline KazhdanDecay kazhdan_projection_decay(int n, int k_max, std::uint64_t seed = 1) {
    PermutationRep rep(n);
    if (rep.dim() > kDenseEigenLimit)
        throw Error("kazhdan_projection_decay: dimension " + std::to_string(rep.dim()) +
                    " beyond the dense limit of " + std::to_string(kDenseEigenLimit));

    const GroupAlgebraElement avg = markov_element();
    const auto o = rep.op(avg);
    const int dim = rep.dim();

    KazhdanDecay out;
    out.modulus = n;
    out.lambda2_star = detail::averaging_gap_entry(rep, avg, seed).lambda2_star;

    const SymMatrix m = o.dense();
    SymMatrix power(dim);
    for (int i = 0; i < dim; ++i) power.at(i, i) = 1.0;

    const double proj = 1.0 / dim;
    auto record = [&](int k) {
        MatVec diff = [&](const std::vector<double>& in, std::vector<double>& outv) {
            outv.assign(in.size(), 0.0);
            double mean = 0.0;
            for (double x : in) mean += x;
            mean *= proj;
            for (int i = 0; i < dim; ++i) {
                double s = 0.0;
                const double* row = &power.a[static_cast<std::size_t>(i) * dim];
                for (int j = 0; j < dim; ++j) s += row[j] * in[static_cast<std::size_t>(j)];
                outv[static_cast<std::size_t>(i)] = s - mean;
            }
        };
        DecayEntry e;
        e.k = k;
        e.norm = std::abs(power_dominant_eigen(diff, dim, seed + static_cast<std::uint64_t>(k)));
        e.bound = std::pow(out.lambda2_star, k);
        out.table.push_back(e);
    };

    record(0);
    for (int k = 1; k <= k_max; ++k) {
        SymMatrix next(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                double s = 0.0;
                const double* row = &power.a[static_cast<std::size_t>(i) * dim];
                for (int l = 0; l < dim; ++l) s += row[l] * m.at(l, j);
                next.at(i, j) = s;
            }
        power = std::move(next);
        record(k);
    }
    return out;
}

} // namespace coarsekit
