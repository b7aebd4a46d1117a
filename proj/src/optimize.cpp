// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/optimize.hpp"

#include "dipolink/error.hpp"
#include "dipolink/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace dipolink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDyadic = 1099511627776.0;  // 2^40

double snap(double x) { return std::round(x * kDyadic) / kDyadic; }

// Full gap list implied by the free gaps; the centre absorbs the remainder.
std::vector<double> expandGaps(std::size_t n, const std::vector<double>& freeGaps) {
    const std::size_t gaps = n - 1;
    const double used = 2.0 * std::accumulate(freeGaps.begin(), freeGaps.end(), 0.0);
    std::vector<double> all(gaps);
    for (std::size_t i = 0; i < freeGaps.size(); ++i) {
        all[i] = freeGaps[i];
        all[gaps - 1 - i] = freeGaps[i];
    }
    if (gaps % 2 == 1) {
        all[gaps / 2] = 1.0 - used;
    } else {
        all[gaps / 2 - 1] = (1.0 - used) / 2.0;
        all[gaps / 2] = (1.0 - used) / 2.0;
    }
    return all;
}

double distanceToUniform(const std::vector<double>& x, const std::vector<double>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - u[i]) * (x[i] - u[i]);
    return std::sqrt(s);
}

// (objective, distance to uniform) ordering.
bool better(const PlacementEvaluation& a, const PlacementEvaluation& b, const std::vector<double>& uniform) {
    if (a.objective != b.objective) return a.objective < b.objective;
    return distanceToUniform(a.freeGaps, uniform) < distanceToUniform(b.freeGaps, uniform);
}

struct RestartOutcome {
    PlacementEvaluation best;
    PlacementEvaluation mostFaithful;  // highest fMax seen, for infeasibility reports
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

class NelderMead {
public:
    NelderMead(std::size_t n, double minFidelity, const SearchConfig& search)
        : n_(n), minFidelity_(minFidelity), search_(search), uniform_(uniformFreeGaps(n)) {}

    RestartOutcome run(std::vector<double> start) {
        const std::size_t dim = start.size();
        std::vector<PlacementEvaluation> simplex;
        simplex.push_back(eval(start));
        for (std::size_t i = 0; i < dim; ++i) {
            auto x = start;
            // Step away from the nearest bound.
            x[i] += (x[i] - search_.initialStep < search_.gapMin) ? search_.initialStep : -search_.initialStep;
            simplex.push_back(eval(x));
        }

        for (out_.iterations = 0; out_.iterations < search_.maxIterations; ++out_.iterations) {
            std::stable_sort(simplex.begin(), simplex.end(),
                             [&](const auto& a, const auto& b) { return better(a, b, uniform_); });
            if (done(simplex)) {
                out_.converged = true;
                break;
            }
            const auto& worst = simplex.back();
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t k = 0; k < dim; ++k)
                for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k].freeGaps[i] / static_cast<double>(dim);

            auto along = [&](double coef) {
                std::vector<double> x(dim);
                for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + coef * (worst.freeGaps[i] - centroid[i]);
                return x;
            };

            auto reflected = eval(along(-1.0));
            if (reflected.objective < simplex.front().objective) {
                auto expanded = eval(along(-2.0));
                simplex.back() = expanded.objective < reflected.objective ? std::move(expanded) : std::move(reflected);
                continue;
            }
            if (reflected.objective < simplex[dim - 1].objective) {
                simplex.back() = std::move(reflected);
                continue;
            }
            const bool outside = reflected.objective < worst.objective;
            auto contracted = eval(along(outside ? -0.5 : 0.5));
            if (contracted.objective < (outside ? reflected.objective : worst.objective)) {
                simplex.back() = std::move(contracted);
                continue;
            }
            for (std::size_t k = 1; k <= dim; ++k) {
                std::vector<double> x(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    x[i] = simplex[0].freeGaps[i] + 0.5 * (simplex[k].freeGaps[i] - simplex[0].freeGaps[i]);
                simplex[k] = eval(x);
            }
        }
        return std::move(out_);
    }

private:
    PlacementEvaluation eval(const std::vector<double>& x) {
        auto e = evaluatePlacement(n_, x, minFidelity_, search_);
        ++out_.evaluations;
        if (out_.evaluations == 1 || better(e, out_.best, uniform_)) out_.best = e;
        if (out_.evaluations == 1 || e.summary.fMax > out_.mostFaithful.summary.fMax) out_.mostFaithful = e;
        return e;
    }

    bool done(const std::vector<PlacementEvaluation>& simplex) const {
        double diameter = 0.0;
        for (std::size_t k = 1; k < simplex.size(); ++k)
            diameter = std::max(diameter, distanceToUniform(simplex[k].freeGaps, simplex[0].freeGaps));
        if (diameter > search_.xTolerance) return false;
        const double lo = simplex.front().objective;
        const double hi = simplex.back().objective;
        return lo == hi || hi - lo <= search_.fTolerance;
    }

    std::size_t n_;
    double minFidelity_;
    const SearchConfig& search_;
    std::vector<double> uniform_;
    RestartOutcome out_;
};

std::vector<double> perturbedStart(std::size_t n, const SearchConfig& search, std::size_t restart) {
    auto x = uniformFreeGaps(n);
    const auto s = search.seed;
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> d(-search.perturbation, search.perturbation);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto y = x;
        for (auto& g : y) g += d(rng);
        const auto all = expandGaps(n, y);
        if (std::all_of(all.begin(), all.end(), [&](double g) { return g >= search.gapMin; })) return y;
    }
    return x;
}

}  // namespace

std::size_t freeGapCount(std::size_t n) {
    if (n < 3) throw DomainError("mirror placement needs n >= 3");
    return (n - 1 + 1) / 2 - 1;
}

std::vector<double> uniformFreeGaps(std::size_t n) {
    return std::vector<double>(freeGapCount(n), 1.0 / static_cast<double>(n - 1));
}

Geometry mirrorChain(std::size_t n, const std::vector<double>& freeGaps) {
    if (freeGaps.size() != freeGapCount(n)) throw ShapeError("mirror chain: wrong number of free gaps");
    const auto gaps = expandGaps(n, freeGaps);
    if (!std::all_of(gaps.begin(), gaps.end(), [](double g) { return std::isfinite(g) && g > 0.0; }))
        throw InvalidGeometry("mirror chain: gaps must be positive");
    std::vector<double> x(n);
    x[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < (n + 1) / 2; ++i) {
        acc += gaps[i - 1];
        x[i] = snap(acc);
    }
    if (n % 2 == 1) x[n / 2] = 0.5;
    for (std::size_t i = 0; i < n / 2; ++i) x[n - 1 - i] = 1.0 - x[i];
    return Geometry::chain(std::move(x));
}

PlacementEvaluation evaluatePlacement(std::size_t n, const std::vector<double>& freeGaps, double minFidelity,
                                      const SearchConfig& search) {
    PlacementEvaluation e;
    e.freeGaps = freeGaps;
    e.objective = kInf;
    const auto gaps = expandGaps(n, freeGaps);
    if (!std::all_of(gaps.begin(), gaps.end(), [&](double g) { return g >= search.gapMin; })) return e;
    const auto h = buildChainHamiltonian(mirrorChain(n, freeGaps), search.coupling);
    e.summary = summarizeTransfer(h, SiteState::basis(n, 0), SiteState::basis(n, n - 1), search.peak,
                                  Execution::Serial);
    e.feasible = e.summary.fMax >= minFidelity && e.summary.tau.has_value();
    if (e.feasible) e.objective = *e.summary.tau;
    return e;
}

PlacementResult optimizePlacement(std::size_t n, Objective objective, double minFidelity, const SearchConfig& search,
                                  Execution exec) {
    if (objective != Objective::MinimizeTau) throw DomainError("unsupported objective");
    if (n < 3) throw DomainError("optimizePlacement: n must be >= 3");
    if (!(minFidelity >= 0.5 && minFidelity <= 1.0)) throw DomainError("minFidelity must lie in [0.5, 1]");
    if (!(search.gapMin > 0.0) || search.gapMin * static_cast<double>(n - 1) > 1.0)
        throw DomainError("gapMin must be > 0 and leave room for n-1 gaps in unit length");
    search.coupling.validate();

    PlacementResult result;
    result.minFidelity = minFidelity;
    result.startGaps = uniformFreeGaps(n);
    const auto start = evaluatePlacement(n, result.startGaps, minFidelity, search);
    result.startObjective = start.objective;
    result.evaluations = 1;

    std::vector<RestartOutcome> outcomes;
    if (result.startGaps.empty()) {
        RestartOutcome o;
        o.best = start;
        o.mostFaithful = start;
        o.converged = true;
        outcomes.push_back(std::move(o));
    } else {
        const std::size_t runs = search.restarts + 1;
        outcomes.resize(runs);
        parallelFor(runs, exec, [&](std::size_t r) {
            const auto x0 = r == 0 ? result.startGaps : perturbedStart(n, search, r);
            outcomes[r] = NelderMead(n, minFidelity, search).run(x0);
        });
    }

    // Reduction in restart order keeps the choice independent of scheduling.
    const auto uniform = result.startGaps;
    std::size_t win = 0;
    std::size_t faithful = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        result.evaluations += outcomes[r].evaluations;
        if (r > 0 && better(outcomes[r].best, outcomes[win].best, uniform)) win = r;
        if (outcomes[r].mostFaithful.summary.fMax > outcomes[faithful].mostFaithful.summary.fMax) faithful = r;
    }
    PlacementEvaluation chosen = outcomes[win].best;
    if (start.feasible && !better(chosen, start, uniform)) chosen = start;
    result.feasible = chosen.feasible;
    if (!result.feasible) chosen = outcomes[faithful].mostFaithful;

    result.geometry = mirrorChain(n, chosen.freeGaps);
    result.summary = chosen.summary;
    result.objective = chosen.objective;
    result.converged = outcomes[win].converged;
    result.trajectoryLength = outcomes[win].iterations;
    const auto& p = result.geometry.positions();
    for (std::size_t i = 1; i < p.size(); ++i) result.gaps.push_back(p[i] - p[i - 1]);
    return result;
}

std::pair<SiteState, SiteState> encodedEndStates(const ExcitationHamiltonian& h, std::size_t width) {
    const std::size_t n = h.size();
    if (width < 1 || 2 * width > n) throw DomainError("encoded states: need 1 <= width <= N/2");
    const auto spec = decompose(h);
    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < width; ++i) {
        const double a = spec.eigenvectors(static_cast<Eigen::Index>(i), 0);
        in(static_cast<Eigen::Index>(i)) = a;
        out(static_cast<Eigen::Index>(n - 1 - i)) = a;
    }
    return {SiteState::normalized(std::move(in)), SiteState::normalized(std::move(out))};
}

TransferSummary offEndTransferCheck(const ExcitationHamiltonian& h, std::size_t r, std::size_t s,
                                    const PeakSearchConfig& cfg, Execution exec) {
    const std::size_t n = h.size();
    if (r < 1 || s < 1 || r > n || s > n) throw DomainError("site indices must lie in 1..N");
    return summarizeTransfer(h, SiteState::basis(n, r - 1), SiteState::basis(n, s - 1), cfg, exec);
}

nlohmann::json placementToJson(const PlacementResult& r) {
    nlohmann::json j;
    j["start_gaps"] = r.startGaps;
    if (std::isfinite(r.startObjective)) j["start_objective"] = r.startObjective;
    else j["start_objective"] = nullptr;
    j["trajectory_length"] = r.trajectoryLength;
    j["evaluations"] = r.evaluations;
    j["gaps"] = r.gaps;
    j["geometry"] = geometryToJson(r.geometry);
    j["f_max"] = r.summary.fMax;
    j["t_peak"] = r.summary.tPeak;
    if (r.summary.tau) j["tau"] = *r.summary.tau;
    else j["tau"] = nullptr;
    j["min_fidelity"] = r.minFidelity;
    j["feasible"] = r.feasible;
    j["converged"] = r.converged;
    return j;
}

}  // namespace dipolink
