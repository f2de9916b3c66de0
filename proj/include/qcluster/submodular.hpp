#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "qcluster/error.hpp"
#include "qcluster/flow_cut.hpp"
#include "qcluster/similarity.hpp"

namespace qcluster {

/// Subset of {0..n-1} as a bit mask (bit p set iff p is a member).
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxOraclePoints = 63;
inline constexpr double kSetFunctionTolerance = 1e-9;

inline Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }

inline std::vector<Point> subset_members(Subset set) {
    std::vector<Point> out;
    for (Point p = 0; set != 0; ++p, set >>= 1) {
        if (set & 1U) {
            out.push_back(p);
        }
    }
    return out;
}

inline Subset subset_of(const std::vector<Point>& points) {
    Subset set = 0;
    for (Point p : points) {
        set |= Subset{1} << p;
    }
    return set;
}

/// Set function on the subsets of an n-point ground set.
struct SetFunctionOracle {
    std::string name;
    std::size_t n = 0;
    std::function<double(Subset)> eval;

    double operator()(Subset set) const { return eval(set); }
};

/// Crossing weight of (A, complement) in s.
inline SetFunctionOracle cut_oracle(const SimilarityInstance& s) {
    detail::require(s.n() <= kMaxOraclePoints, ErrorKind::OracleSize,
                    "set-function oracles are limited to n <= 63");
    auto graph = std::make_shared<Graph>(s);
    return SetFunctionOracle{"cut", s.n(), [graph](Subset set) {
                                 const std::size_t n = graph->n();
                                 double total = 0.0;
                                 for (Point i = 0; i < n; ++i) {
                                     const bool in_i = set >> i & 1U;
                                     for (Point j = i + 1; j < n; ++j) {
                                         if (in_i != static_cast<bool>(set >> j & 1U)) {
                                             total += graph->at(i, j);
                                         }
                                     }
                                 }
                                 return total;
                             }};
}

/// f(A) = |A| mod 2. Symmetric on even n but not submodular; a negative
/// control for the verifiers.
inline SetFunctionOracle parity_oracle(std::size_t n) {
    return SetFunctionOracle{"parity", n,
                             [](Subset set) { return static_cast<double>(std::popcount(set) % 2); }};
}

/// Zero-mean Gaussian with a symmetric positive-definite covariance.
class GaussianModel {
  public:
    explicit GaussianModel(Eigen::MatrixXd covariance)
      : covariance_{std::move(covariance)} {
        const auto n = covariance_.rows();
        detail::require(n >= 1 && covariance_.cols() == n, ErrorKind::ModelConstruction,
                        "covariance must be a non-empty square matrix");
        detail::require(covariance_.allFinite(), ErrorKind::ModelConstruction,
                        "covariance has non-finite entries");
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                detail::require(std::abs(covariance_(i, j) - covariance_(j, i)) <= 1e-9,
                                ErrorKind::ModelConstruction, "covariance is not symmetric");
            }
        }
        // Cholesky succeeds iff every leading principal minor is positive.
        Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
        detail::require(llt.info() == Eigen::Success, ErrorKind::ModelConstruction,
                        "covariance is not positive definite");
        log_det_full_ = log_det(full_set(static_cast<std::size_t>(n)));
    }

    std::size_t n() const noexcept { return static_cast<std::size_t>(covariance_.rows()); }
    const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }

    /// log det of the principal sub-covariance indexed by `set`; 0 for the
    /// empty set.
    double log_det(Subset set) const {
        const std::vector<Point> idx = subset_members(set);
        if (idx.empty()) {
            return 0.0;
        }
        const auto m = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd block(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) {
                block(a, b) = covariance_(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]),
                                          static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)]));
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(block);
        const Eigen::MatrixXd& factor = llt.matrixLLT();
        double total = 0.0;
        for (Eigen::Index a = 0; a < m; ++a) {
            total += std::log(factor(a, a));
        }
        return 2.0 * total;
    }

    /// I(X_A; X_B) with B the complement of A, in nats.
    double mutual_information(Subset set) const {
        const Subset complement = full_set(n()) & ~set;
        return 0.5 * (log_det(set) + log_det(complement) - log_det_full_);
    }

  private:
    Eigen::MatrixXd covariance_;
    double log_det_full_ = 0.0;
};

/// Gaussian mutual information between a block of coordinates and the rest.
/// This is the description-length objective instantiated for Gaussian data.
inline SetFunctionOracle gaussian_mi_oracle(const GaussianModel& model) {
    detail::require(model.n() <= kMaxOraclePoints, ErrorKind::OracleSize,
                    "set-function oracles are limited to n <= 63");
    auto shared = std::make_shared<GaussianModel>(model);
    return SetFunctionOracle{"gaussian-mi", model.n(),
                             [shared](Subset set) { return shared->mutual_information(set); }};
}

inline constexpr std::size_t kMaxVerifierPoints = 10;

namespace detail {
inline std::vector<double> tabulate(const SetFunctionOracle& f, std::size_t n) {
    require(n <= kMaxVerifierPoints, ErrorKind::OracleSize,
            "exhaustive set-function checks are limited to n <= 10");
    require(f.n == n, ErrorKind::Shape, "oracle ground set differs from n");
    std::vector<double> table(std::size_t{1} << n);
    for (Subset set = 0; set < table.size(); ++set) {
        table[set] = f(set);
    }
    return table;
}
}  // namespace detail

inline bool is_symmetric(const SetFunctionOracle& f, std::size_t n) {
    const std::vector<double> table = detail::tabulate(f, n);
    const Subset full = full_set(n);
    for (Subset set = 0; set <= full; ++set) {
        if (std::abs(table[set] - table[full & ~set]) > kSetFunctionTolerance) {
            return false;
        }
    }
    return true;
}

struct SubmodularityViolation {
    Subset a = 0;
    Subset b = 0;
    /// f(A) + f(B) - f(A & B) - f(A | B), negative beyond tolerance.
    double slack = 0.0;
};

/// First pair (A, B), scanning A then B ascending, with
/// f(A) + f(B) < f(A & B) + f(A | B) - 1e-9.
inline std::optional<SubmodularityViolation> find_submodularity_violation(const SetFunctionOracle& f,
                                                                         std::size_t n) {
    const std::vector<double> table = detail::tabulate(f, n);
    const Subset full = full_set(n);
    for (Subset a = 0; a <= full; ++a) {
        for (Subset b = a + 1; b <= full; ++b) {
            const double slack = table[a] + table[b] - table[a & b] - table[a | b];
            if (slack < -kSetFunctionTolerance) {
                return SubmodularityViolation{a, b, slack};
            }
        }
    }
    return std::nullopt;
}

inline bool is_submodular(const SetFunctionOracle& f, std::size_t n) {
    return !find_submodularity_violation(f, n).has_value();
}

struct SetMinimum {
    Subset set = 0;
    double value = 0.0;
};

/// Exhaustive minimum over non-trivial subsets (first in ascending mask order).
inline SetMinimum brute_force_minimize(const SetFunctionOracle& f, std::size_t n) {
    detail::require(n >= 2, ErrorKind::InvalidInstance, "minimization needs n >= 2");
    detail::require(n <= 20, ErrorKind::OracleSize, "exhaustive minimization is limited to n <= 20");
    const Subset full = full_set(n);
    SetMinimum best{1, f(1)};
    for (Subset set = 2; set < full; ++set) {
        const double value = f(set);
        if (value < best.value) {
            best = SetMinimum{set, value};
        }
    }
    return best;
}

/// Exact minimizer of a symmetric submodular function over non-empty proper
/// subsets, by repeated pendant-pair contraction.
///
/// Each round orders the current groups greedily: starting from the group of
/// point 0, append the group u minimizing f(W + u) - f(u) (ties to the group
/// with the smallest point). The last group t of the ordering is a minimum
/// separator of the last two, so f(t) is a candidate; the pair is then merged.
/// After n-1 rounds the best candidate is a global minimizer.
inline SetMinimum queyranne_minimize(const SetFunctionOracle& f, std::size_t n) {
    detail::require(n >= 2, ErrorKind::InvalidInstance, "queyranne_minimize needs n >= 2");
    detail::require(n <= kMaxOraclePoints, ErrorKind::OracleSize,
                    "set-function oracles are limited to n <= 63");
    detail::require(f.n == n, ErrorKind::Shape, "oracle ground set differs from n");

    // groups are kept ordered by smallest member
    std::vector<Subset> groups;
    for (Point p = 0; p < n; ++p) {
        groups.push_back(Subset{1} << p);
    }
    std::optional<SetMinimum> best;
    while (groups.size() >= 2) {
        const std::size_t m = groups.size();
        std::vector<double> singleton_value(m);
        for (std::size_t g = 0; g < m; ++g) {
            singleton_value[g] = f(groups[g]);
        }
        std::vector<bool> placed(m, false);
        placed[0] = true;
        Subset prefix = groups[0];
        std::size_t previous = 0;
        std::size_t last = 0;
        for (std::size_t step = 1; step < m; ++step) {
            std::size_t chosen = m;
            double chosen_key = 0.0;
            for (std::size_t g = 0; g < m; ++g) {
                if (placed[g]) {
                    continue;
                }
                const double key = f(prefix | groups[g]) - singleton_value[g];
                if (chosen == m || key < chosen_key) {
                    chosen = g;
                    chosen_key = key;
                }
            }
            placed[chosen] = true;
            prefix |= groups[chosen];
            previous = last;
            last = chosen;
        }
        const SetMinimum candidate{groups[last], singleton_value[last]};
        if (!best || candidate.value < best->value) {
            best = candidate;
        }
        groups[previous] |= groups[last];
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(last));
        std::sort(groups.begin(), groups.end(),
                  [](Subset a, Subset b) { return std::countr_zero(a) < std::countr_zero(b); });
    }
    return *best;
}

}  // namespace qcluster
