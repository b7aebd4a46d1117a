// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Every analysis is a subcommand writing CSV or JSON
// to stdout (or --output). Exit status: 0 ok, 1 bad input, 2 numeric failure.

#include "dipolink/boundstate.hpp"
#include "dipolink/disorder.hpp"
#include "dipolink/error.hpp"
#include "dipolink/io.hpp"
#include "dipolink/lattice.hpp"
#include "dipolink/optimize.hpp"
#include "dipolink/spectral.hpp"
#include "dipolink/transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace {

using namespace dipolink;
using nlohmann::json;

struct Common {
    std::string model = "dipole";
    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 0;
    std::string geometryFile;
    double c = 2.0;

    CouplingSpec coupling() const {
        CouplingSpec s{parseCouplingModel(model), c};
        s.validate();
        return s;
    }
    bool asJson() const { return format == "json"; }
};

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw DomainError("cannot open output file '" + path + "'");
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void writeJson(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

PeakSearchConfig peakConfig(double tMax) {
    PeakSearchConfig cfg;
    if (!std::isnan(tMax)) {
        if (!(tMax > 0.0)) throw DomainError("--t-max must be > 0");
        cfg.tMax = tMax;
    }
    return cfg;
}

// Geometry from --geometry-file, or a uniform chain/ring of n sites.
Geometry selectGeometry(const Common& common, std::size_t n, const std::string& topology) {
    if (!common.geometryFile.empty()) return readGeometryFile(common.geometryFile);
    if (parseTopology(topology) == Topology::Ring) return Geometry::ring(n);
    return Geometry::uniformChain(n);
}

std::size_t siteOrDefault(long site, std::size_t n, std::size_t fallback) {
    if (site == 0) return fallback;
    if (site < 1 || static_cast<std::size_t>(site) > n) throw DomainError("site index must lie in 1..N");
    return static_cast<std::size_t>(site) - 1;
}

// Default output site: far end of a chain, opposite site on a ring.
std::size_t defaultOutput(const Geometry& g) {
    return g.topology() == Topology::Ring ? ringOppositeSite(g.size()) : g.size() - 1;
}

json summaryJson(const TransferSummary& s) { return summaryToJson(s); }

void writeSummaryCsv(std::ostream& os, const TransferSummary& s) {
    os << "n,f_max,t_peak,delta_lambda,period,transfer_time,tau,length\n";
    os << s.n << ',' << formatDouble(s.fMax) << ',' << formatDouble(s.tPeak) << ',' << formatDouble(s.deltaLambda)
       << ',' << formatOptional(s.period) << ',' << formatOptional(s.transferTime) << ',' << formatOptional(s.tau)
       << ',' << formatDouble(s.length) << '\n';
}

void addCommon(CLI::App& sub, Common& c) {
    sub.add_option("--model", c.model, "Coupling model")->check(CLI::IsMember({"dipole", "nn"}));
    sub.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--output", c.output, "Output file (default stdout)");
    sub.add_option("--seed", c.seed, "Random seed");
    sub.add_option("--geometry-file", c.geometryFile, "Geometry JSON");
    sub.add_option("--c-const", c.c, "Coupling constant C");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dipolink: state transfer through dipole-coupled spin chains and rings"};
    app.require_subcommand(1);
    Common common;
    std::function<void()> run;

    // chain-sweep / ring-sweep -------------------------------------------
    struct SweepArgs {
        std::size_t nMin, nMax;
        double tMax = std::nan("");
    };
    SweepArgs cs{2, 23};
    auto* chainSweepCmd = app.add_subcommand("chain-sweep", "F_max, t_peak, dLambda, tau for uniform chains");
    addCommon(*chainSweepCmd, common);
    chainSweepCmd->add_option("--n-min", cs.nMin)->capture_default_str();
    chainSweepCmd->add_option("--n-max", cs.nMax)->capture_default_str();
    chainSweepCmd->add_option("--t-max", cs.tMax, "Peak search window");
    chainSweepCmd->callback([&] {
        run = [&] {
            const auto rows = chainSweep(cs.nMin, cs.nMax, common.coupling(), peakConfig(cs.tMax));
            Sink out(common.output);
            if (common.asJson()) writeJson(out.os(), sweepToJson(rows));
            else writeSweepCsv(out.os(), rows);
        };
    });

    SweepArgs rs{3, 30};
    auto* ringSweepCmd = app.add_subcommand("ring-sweep", "F_max between opposite sites of uniform rings");
    addCommon(*ringSweepCmd, common);
    ringSweepCmd->add_option("--n-min", rs.nMin)->capture_default_str();
    ringSweepCmd->add_option("--n-max", rs.nMax)->capture_default_str();
    ringSweepCmd->add_option("--t-max", rs.tMax, "Peak search window");
    ringSweepCmd->callback([&] {
        run = [&] {
            const auto rows = ringSweep(rs.nMin, rs.nMax, common.coupling(), peakConfig(rs.tMax));
            Sink out(common.output);
            if (common.asJson()) writeJson(out.os(), sweepToJson(rows));
            else writeSweepCsv(out.os(), rows);
        };
    });

    // fidelity-curve -------------------------------------------------------
    struct CurveArgs {
        std::size_t n = 10;
        std::string topology = "chain";
        double tMax = std::nan("");
        std::size_t steps = 5000;
        long in = 0;
        long out = 0;
    };
    CurveArgs fc;
    auto* curveCmd = app.add_subcommand("fidelity-curve", "F(t) on a uniform time grid");
    addCommon(*curveCmd, common);
    curveCmd->add_option("--n", fc.n)->capture_default_str();
    curveCmd->add_option("--topology", fc.topology)->check(CLI::IsMember({"chain", "ring"}))->capture_default_str();
    curveCmd->add_option("--t-max", fc.tMax, "End time (default: peak search window)");
    curveCmd->add_option("--steps", fc.steps)->capture_default_str();
    curveCmd->add_option("--in", fc.in, "Input site, 1-based (default 1)");
    curveCmd->add_option("--out", fc.out, "Output site, 1-based (default far end / opposite site)");
    curveCmd->callback([&] {
        run = [&] {
            const auto g = selectGeometry(common, fc.n, fc.topology);
            const auto h = buildHamiltonian(g, common.coupling());
            const auto spec = decompose(h);
            const auto in = SiteState::basis(g.size(), siteOrDefault(fc.in, g.size(), 0));
            const auto outState = SiteState::basis(g.size(), siteOrDefault(fc.out, g.size(), defaultOutput(g)));
            const double end = std::isnan(fc.tMax) ? defaultWindow(h, spec) : fc.tMax;
            const auto curve = fidelityCurve(spec, in, outState, end, fc.steps);
            Sink out(common.output);
            if (common.asJson()) writeJson(out.os(), {{"t", curve.times}, {"F", curve.values}});
            else writeCurveCsv(out.os(), curve);
        };
    });

    // onsite-energies ------------------------------------------------------
    std::size_t onsiteN = 15;
    auto* onsiteCmd = app.add_subcommand("onsite-energies", "Spin-flip energy of each site above the ground state");
    addCommon(*onsiteCmd, common);
    onsiteCmd->add_option("--n", onsiteN)->capture_default_str();
    onsiteCmd->callback([&] {
        run = [&] {
            const auto g = selectGeometry(common, onsiteN, "chain");
            const auto h = buildHamiltonian(g, common.coupling());
            Sink out(common.output);
            if (common.asJson()) {
                json rows = json::array();
                for (std::size_t j = 0; j < h.size(); ++j) {
                    const double d = h.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
                    rows.push_back({{"site", j + 1}, {"energy", d}, {"flip_energy", d - h.groundEnergy}});
                }
                writeJson(out.os(), {{"ground_energy", h.groundEnergy}, {"sites", rows}});
            } else {
                out.os() << "site,energy,flip_energy\n";
                for (std::size_t j = 0; j < h.size(); ++j) {
                    const double d = h.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
                    out.os() << j + 1 << ',' << formatDouble(d) << ',' << formatDouble(d - h.groundEnergy) << '\n';
                }
            }
        };
    });

    // spectrum-sweep -------------------------------------------------------
    SweepArgs ss{2, 23};
    auto* spectrumCmd = app.add_subcommand("spectrum-sweep", "Single-flip spectrum relative to the ground state vs N");
    addCommon(*spectrumCmd, common);
    spectrumCmd->add_option("--n-min", ss.nMin)->capture_default_str();
    spectrumCmd->add_option("--n-max", ss.nMax)->capture_default_str();
    spectrumCmd->callback([&] {
        run = [&] {
            if (ss.nMin < 2 || ss.nMin > ss.nMax) throw DomainError("need 2 <= n-min <= n-max");
            const auto coupling = common.coupling();
            Sink out(common.output);
            json rows = json::array();
            if (!common.asJson()) out.os() << "n,m,energy,delta_e\n";
            for (std::size_t k = ss.nMin; k <= ss.nMax; ++k) {
                const auto h = buildChainHamiltonian(Geometry::uniformChain(k), coupling);
                const auto spec = decompose(h);
                for (std::size_t m = 0; m < k; ++m) {
                    const double e = spec.eigenvalues(static_cast<Eigen::Index>(m));
                    if (common.asJson())
                        rows.push_back({{"n", k}, {"m", m}, {"energy", e}, {"delta_e", e - h.groundEnergy}});
                    else
                        out.os() << k << ',' << m << ',' << formatDouble(e) << ',' << formatDouble(e - h.groundEnergy)
                                 << '\n';
                }
            }
            if (common.asJson()) writeJson(out.os(), rows);
        };
    });

    // normalized-time ------------------------------------------------------
    SweepArgs nt{2, 23};
    auto* tauCmd = app.add_subcommand("normalized-time", "tau = (pi / dLambda) / L^3 for uniform dipole chains");
    addCommon(*tauCmd, common);
    tauCmd->add_option("--n-min", nt.nMin)->capture_default_str();
    tauCmd->add_option("--n-max", nt.nMax)->capture_default_str();
    tauCmd->callback([&] {
        run = [&] {
            const auto curve = normalizedTimeCurve(nt.nMin, nt.nMax, common.coupling());
            Sink out(common.output);
            if (common.asJson()) {
                json rows = json::array();
                for (const auto& p : curve) rows.push_back({{"n", p.n}, {"tau", p.tau}});
                writeJson(out.os(), rows);
            } else {
                out.os() << "n,tau\n";
                for (const auto& p : curve) out.os() << p.n << ',' << formatDouble(p.tau) << '\n';
            }
        };
    });

    // bound-state ----------------------------------------------------------
    std::size_t q = 4;
    std::size_t sourceN = 14;
    SweepArgs bs{14, 23};
    auto* boundCmd = app.add_subcommand("bound-state", "q-spin bound-state fit and its tau prediction vs exact");
    addCommon(*boundCmd, common);
    boundCmd->add_option("--q", q)->capture_default_str();
    boundCmd->add_option("--source-n", sourceN)->capture_default_str();
    boundCmd->add_option("--n-min", bs.nMin)->capture_default_str();
    boundCmd->add_option("--n-max", bs.nMax)->capture_default_str();
    boundCmd->callback([&] {
        run = [&] {
            const auto coupling = common.coupling();
            const auto model = fitBoundState(q, sourceN, coupling);
            if (bs.nMin < 2 * q || bs.nMin > bs.nMax) throw DomainError("need 2q <= n-min <= n-max");
            const auto rows = chainSweep(bs.nMin, bs.nMax, coupling);
            Sink out(common.output);
            json table = json::array();
            if (!common.asJson()) out.os() << "n,tau_exact,tau_model,tau_rel_error,t_peak,t_model,t_peak_rel_error,Q,R\n";
            for (const auto& row : rows) {
                const double len = static_cast<double>(row.n - 1);
                const auto pred = predictTransfer(model, len, 1.0, coupling);
                const double tauExact = *row.tau;
                const double tauErr = (pred.tau - tauExact) / tauExact;
                const double tErr = (pred.transferTime - row.tPeak) / row.tPeak;
                if (common.asJson()) {
                    table.push_back({{"n", row.n},
                                     {"tau_exact", tauExact},
                                     {"tau_model", pred.tau},
                                     {"tau_rel_error", tauErr},
                                     {"t_peak", row.tPeak},
                                     {"t_model", pred.transferTime},
                                     {"t_peak_rel_error", tErr}});
                } else {
                    out.os() << row.n << ',' << formatDouble(tauExact) << ',' << formatDouble(pred.tau) << ','
                             << formatDouble(tauErr) << ',' << formatDouble(row.tPeak) << ','
                             << formatDouble(pred.transferTime) << ',' << formatDouble(tErr) << ','
                             << formatDouble(model.qSum) << ',' << formatDouble(model.rSum) << '\n';
                }
            }
            if (common.asJson()) {
                auto j = boundStateToJson(model);
                j["comparison"] = table;
                writeJson(out.os(), j);
            }
        };
    });

    // optimize-placement ---------------------------------------------------
    std::size_t optN = 4;
    double minFidelity = 0.99;
    SearchConfig search;
    auto* optCmd = app.add_subcommand("optimize-placement", "Mirror-symmetric placement minimizing tau");
    addCommon(*optCmd, common);
    optCmd->add_option("--n", optN)->capture_default_str();
    optCmd->add_option("--min-fidelity", minFidelity)->capture_default_str();
    optCmd->add_option("--restarts", search.restarts)->capture_default_str();
    optCmd->add_option("--gap-min", search.gapMin)->capture_default_str();
    optCmd->callback([&] {
        run = [&] {
            search.seed = common.seed;
            search.coupling = common.coupling();
            const auto r = optimizePlacement(optN, Objective::MinimizeTau, minFidelity, search);
            if (!r.feasible)
                std::cerr << "warning: no placement reached F_max >= " << minFidelity
                          << "; reporting the highest-fidelity point\n";
            Sink out(common.output);
            if (common.asJson()) {
                writeJson(out.os(), placementToJson(r));
            } else {
                out.os() << "gap_index,gap\n";
                for (std::size_t i = 0; i < r.gaps.size(); ++i) out.os() << i + 1 << ',' << formatDouble(r.gaps[i]) << '\n';
                std::cerr << "f_max=" << formatDouble(r.summary.fMax) << " tau=" << formatOptional(r.summary.tau)
                          << " feasible=" << r.feasible << " converged=" << r.converged << '\n';
            }
        };
    });

    // encoded-transfer -----------------------------------------------------
    std::size_t width = 2;
    CurveArgs ec;
    auto* encCmd = app.add_subcommand("encoded-transfer", "Single-site vs encoded end-state transfer");
    addCommon(*encCmd, common);
    encCmd->add_option("--n", ec.n)->capture_default_str();
    encCmd->add_option("--width", width)->capture_default_str();
    encCmd->add_option("--t-max", ec.tMax, "End time of the curve (default: peak search window)");
    encCmd->add_option("--steps", ec.steps)->capture_default_str();
    encCmd->callback([&] {
        run = [&] {
            const auto g = selectGeometry(common, ec.n, "chain");
            const auto h = buildHamiltonian(g, common.coupling());
            const auto spec = decompose(h);
            const std::size_t size = g.size();
            const auto in1 = SiteState::basis(size, 0);
            const auto out1 = SiteState::basis(size, size - 1);
            const auto [inE, outE] = encodedEndStates(h, width);
            const auto cfg = peakConfig(std::nan(""));
            const auto single = summarizeTransfer(h, spec, in1, out1, cfg);
            const auto encoded = summarizeTransfer(h, spec, inE, outE, cfg);
            const double end = std::isnan(ec.tMax) ? defaultWindow(h, spec) : ec.tMax;
            const auto c1 = fidelityCurve(spec, in1, out1, end, ec.steps);
            const auto cE = fidelityCurve(spec, inE, outE, end, ec.steps);
            Sink out(common.output);
            if (common.asJson()) {
                std::vector<double> amps;
                for (std::size_t i = 0; i < width; ++i) amps.push_back(inE.amplitudes()(static_cast<Eigen::Index>(i)).real());
                writeJson(out.os(), {{"width", width},
                                     {"amplitudes", amps},
                                     {"single", summaryJson(single)},
                                     {"encoded", summaryJson(encoded)},
                                     {"t", c1.times},
                                     {"F_single", c1.values},
                                     {"F_encoded", cE.values}});
            } else {
                out.os() << "t,F_single,F_encoded\n";
                for (std::size_t k = 0; k < c1.times.size(); ++k)
                    out.os() << formatDouble(c1.times[k]) << ',' << formatDouble(c1.values[k]) << ','
                             << formatDouble(cE.values[k]) << '\n';
                std::cerr << "single f_max=" << formatDouble(single.fMax) << " t_peak=" << formatDouble(single.tPeak)
                          << "; encoded f_max=" << formatDouble(encoded.fMax)
                          << " t_peak=" << formatDouble(encoded.tPeak) << '\n';
            }
        };
    });

    // disorder -------------------------------------------------------------
    std::size_t disN = 4;
    DisorderConfig dis;
    std::string noise = "uniform";
    double length = 1.0;
    bool dumpSamples = false;
    auto* disCmd = app.add_subcommand("disorder", "Failure rate under random placement errors");
    addCommon(*disCmd, common);
    disCmd->add_option("--n", disN)->capture_default_str();
    disCmd->add_option("--length", length, "Length of the uniform chain")->capture_default_str();
    disCmd->add_option("--error-fraction", dis.errorFraction)->capture_default_str();
    disCmd->add_option("--samples", dis.samples)->capture_default_str();
    disCmd->add_option("--noise", noise)->check(CLI::IsMember({"uniform", "gaussian"}))->capture_default_str();
    disCmd->add_flag("--dump-samples", dumpSamples, "Write the per-sample CSV instead of the report");
    disCmd->callback([&] {
        run = [&] {
            if (disN < 2) throw DomainError("--n must be >= 2");
            if (!(length > 0.0)) throw DomainError("--length must be > 0");
            dis.seed = common.seed;
            dis.noiseModel = parseNoiseModel(noise);
            const auto g = common.geometryFile.empty()
                               ? Geometry::uniformChain(disN, length / static_cast<double>(disN - 1))
                               : readGeometryFile(common.geometryFile);
            const auto r = runDisorder(g, common.coupling(), dis);
            Sink out(common.output);
            if (dumpSamples) {
                writeSamplesCsv(out.os(), r);
            } else if (common.asJson()) {
                writeJson(out.os(), disorderToJson(r));
            } else {
                out.os() << "failures,failure_rate,mean_f_at_t_nominal,samples,seed,redraws,t_nominal\n";
                out.os() << r.failures << ',' << formatDouble(r.failureRate) << ',' << formatDouble(r.meanFidelity)
                         << ',' << r.samples << ',' << r.seed << ',' << r.redraws << ',' << formatDouble(r.tNominal)
                         << '\n';
            }
        };
    });

    // summary --------------------------------------------------------------
    CurveArgs sa;
    auto* sumCmd = app.add_subcommand("summary", "Transfer summary for one geometry and site pair");
    addCommon(*sumCmd, common);
    sumCmd->add_option("--n", sa.n)->capture_default_str();
    sumCmd->add_option("--topology", sa.topology)->check(CLI::IsMember({"chain", "ring"}))->capture_default_str();
    sumCmd->add_option("--t-max", sa.tMax, "Peak search window");
    sumCmd->add_option("--in", sa.in, "Input site, 1-based (default 1)");
    sumCmd->add_option("--out", sa.out, "Output site, 1-based (default far end / opposite site)");
    sumCmd->callback([&] {
        run = [&] {
            const auto g = selectGeometry(common, sa.n, sa.topology);
            const auto h = buildHamiltonian(g, common.coupling());
            const auto s = offEndTransferCheck(h, siteOrDefault(sa.in, g.size(), 0) + 1,
                                               siteOrDefault(sa.out, g.size(), defaultOutput(g)) + 1,
                                               peakConfig(sa.tMax));
            Sink out(common.output);
            if (common.asJson()) {
                auto j = summaryJson(s);
                j["geometry"] = geometryToJson(g);
                writeJson(out.os(), j);
            } else {
                writeSummaryCsv(out.os(), s);
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        run();
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
