#include "hcol/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "hcol/colouring.hpp"
#include "hcol/core.hpp"
#include "hcol/cycles.hpp"
#include "hcol/moments.hpp"
#include "hcol/thresholds.hpp"

namespace hcol {

using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "v1";

json config_json(const ExperimentConfig& cfg) {
    return json{{"version", kSchemaVersion},
                {"q", cfg.q_grid},
                {"k", cfg.k_grid},
                {"c", cfg.c_grid},
                {"n", cfg.n},
                {"trials", cfg.trials},
                {"baseSeed", cfg.base_seed},
                {"L", cfg.L},
                {"depthBudget", cfg.depth_budget},
                {"vertexCap", cfg.vertex_cap},
                {"planted", cfg.planted},
                {"scanSamples", cfg.scan_samples},
                {"workers", cfg.workers}};
}

void csv_preamble(const ExperimentConfig& cfg, const char* kind, std::ostream& os) {
    os << "# hcol " << kind << ' ' << kSchemaVersion << ' ' << config_json(cfg).dump() << '\n';
}

double mean_of(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0;
    const double m = mean_of(xs);
    double s2 = 0;
    for (double x : xs) s2 += (x - m) * (x - m);
    return std::sqrt(s2 / (static_cast<double>(xs.size()) - 1) /
                     static_cast<double>(xs.size()));
}

// chi-square p-value for observed counts against uniform expectation
double uniform_chi2_p(const std::vector<std::int64_t>& obs, double total) {
    const double expected = total / static_cast<double>(obs.size());
    double chi2 = 0;
    for (auto o : obs) {
        const double d = static_cast<double>(o) - expected;
        chi2 += d * d / expected;
    }
    const int dof = static_cast<int>(obs.size()) - 1;
    return boost::math::gamma_q(dof / 2.0, chi2 / 2.0);
}

std::uint64_t mix_seed(std::uint64_t s) { return s ^ 0x9E3779B97F4A7C15ull; }

}  // namespace

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (q_grid.empty() || k_grid.empty() || c_grid.empty())
        throw std::invalid_argument("config: parameter grids must be non-empty");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (L < 2) throw std::invalid_argument("config: L must be >= 2");
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
}

void parallel_trials(int trials, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const int nw = std::min(workers, trials);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= trials) return;
                try {
                    fn(t);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

int run_thresholds(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    std::vector<ThresholdReport> rows;
    for (int q : cfg.q_grid)
        for (int k : cfg.k_grid) rows.push_back(threshold_report(q, k));
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::pair(a.q, a.k) < std::pair(b.q, b.k);
    });

    if (cfg.format == OutputFormat::json) {
        json out{{"config", config_json(cfg)}, {"rows", json::array()}};
        for (const auto& r : rows)
            out["rows"].push_back({{"q", r.q},
                                   {"k", r.k},
                                   {"lambda_r", r.lambda_r},
                                   {"alpha_r", r.alpha_r},
                                   {"c_r", r.c_r_exact},
                                   {"c_r_asymptotic", r.c_r_asymptotic},
                                   {"c_cond", r.c_cond},
                                   {"first_regime_bound", r.first_regime_bound}});
        os << out.dump(2) << '\n';
        return 0;
    }
    csv_preamble(cfg, "thresholds", os);
    os << "q,k,lambda_r,alpha_r,c_r,c_r_asymptotic,c_cond,first_regime_bound\n";
    os.precision(12);
    for (const auto& r : rows)
        os << r.q << ',' << r.k << ',' << r.lambda_r << ',' << r.alpha_r << ','
           << r.c_r_exact << ',' << r.c_r_asymptotic << ',' << r.c_cond << ','
           << r.first_regime_bound << '\n';
    return 0;
}

int run_cycles(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    if (cfg.trials < 100)
        throw std::invalid_argument("run_cycles: need >= 100 trials for the fit");

    json out{{"config", config_json(cfg)}, {"results", json::array()}};
    if (cfg.format == OutputFormat::csv) {
        csv_preamble(cfg, "cycles", os);
        os << "q,k,c,n,trial,ell,count\n";
    }

    for (int q : cfg.q_grid)
        for (int k : cfg.k_grid)
            for (double c : cfg.c_grid) {
                ModelParams params{q, k, c, cfg.n};
                std::vector<CycleCensus> censuses(cfg.trials);
                parallel_trials(cfg.trials, cfg.workers, [&](int t) {
                    const std::uint64_t seed = trial_seed(cfg.base_seed, t);
                    Hypergraph h = cfg.planted
                                       ? gen_planted(params, sample_planted_map(params, seed),
                                                     mix_seed(seed))
                                       : gen_multi(params, seed);
                    censuses[t] = count_loose_cycles(h, cfg.L);
                });

                if (cfg.format == OutputFormat::csv) {
                    for (int t = 0; t < cfg.trials; ++t)
                        for (const auto& [ell, count] : censuses[t].counts)
                            os << q << ',' << k << ',' << c << ',' << cfg.n << ',' << t
                               << ',' << ell << ',' << count << '\n';
                    continue;
                }

                const auto ps = poisson_params(params, cfg.L);
                json fits = json::array();
                for (const auto& p : ps) {
                    std::vector<std::int64_t> samples;
                    for (const auto& census : censuses) samples.push_back(census.at(p.ell));
                    const double target = cfg.planted ? p.mu : p.lambda;
                    double mean = 0;
                    for (auto s : samples) mean += static_cast<double>(s);
                    mean /= static_cast<double>(samples.size());
                    json fit{{"ell", p.ell},
                             {"lambda", p.lambda},
                             {"delta", p.delta},
                             {"mu", p.mu},
                             {"target", target},
                             {"mean", mean}};
                    try {
                        const auto gof = poisson_fit(samples, target);
                        fit["chi2"] = gof.chi2;
                        fit["dof"] = gof.dof;
                        fit["p"] = gof.p_value;
                    } catch (const std::exception& e) {
                        fit["fit_error"] = e.what();
                    }
                    fits.push_back(fit);
                }
                out["results"].push_back(
                    {{"q", q}, {"k", k}, {"c", c}, {"n", cfg.n}, {"fits", fits}});
            }

    if (cfg.format == OutputFormat::json) os << out.dump(2) << '\n';
    return 0;
}

std::string core_trace_json(const CoreTrace& trace) {
    json j{{"rounds", trace.rounds},
           {"coreSize", trace.core.size()},
           {"core", trace.core},
           {"survivingEdges", trace.surviving_edges.size()}};
    return j.dump();
}

int run_core(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    if (cfg.format == OutputFormat::csv) {
        csv_preamble(cfg, "core", os);
        os << "n,k,q,c,seed,coreFraction,rounds\n";
    }
    json out{{"config", config_json(cfg)}, {"results", json::array()}};

    for (int q : cfg.q_grid)
        for (int k : cfg.k_grid)
            for (double c : cfg.c_grid) {
                ModelParams params{q, k, c, cfg.n};
                std::vector<double> fractions(cfg.trials);
                std::vector<int> round_counts(cfg.trials);
                parallel_trials(cfg.trials, cfg.workers, [&](int t) {
                    const std::uint64_t seed = trial_seed(cfg.base_seed, t);
                    const Colouring sigma = sample_planted_map(params, seed);
                    const Hypergraph h = gen_planted(params, sigma, mix_seed(seed));
                    const CoreTrace trace = extract_core(h, sigma);
                    fractions[t] = static_cast<double>(trace.core.size()) /
                                   static_cast<double>(cfg.n);
                    round_counts[t] = static_cast<int>(trace.rounds.size());
                });

                const double ups = upsilon(params);
                if (cfg.format == OutputFormat::csv) {
                    os.precision(10);
                    for (int t = 0; t < cfg.trials; ++t)
                        os << cfg.n << ',' << k << ',' << q << ',' << c << ','
                           << trial_seed(cfg.base_seed, t) << ',' << fractions[t] << ','
                           << round_counts[t] << '\n';
                    os << "# upsilon=" << ups << " mean=" << mean_of(fractions)
                       << " se=" << stderr_of(fractions) << '\n';
                } else {
                    out["results"].push_back({{"q", q},
                                              {"k", k},
                                              {"c", c},
                                              {"n", cfg.n},
                                              {"upsilon", ups},
                                              {"mean", mean_of(fractions)},
                                              {"se", stderr_of(fractions)},
                                              {"coreFractions", fractions}});
                }
            }
    if (cfg.format == OutputFormat::json) os << out.dump(2) << '\n';
    return 0;
}

int run_frozen(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    if (cfg.format == OutputFormat::csv) {
        csv_preamble(cfg, "frozen", os);
        os << "q,k,c,n,trial,seed,nonCore,attempted,certified,oracleChecked,contradictions\n";
    }
    json out{{"config", config_json(cfg)}, {"results", json::array()}};

    const bool oracle_scale =
        cfg.n * std::log(static_cast<double>(cfg.q_grid.front())) <= std::log(5e6);

    for (int q : cfg.q_grid)
        for (int k : cfg.k_grid)
            for (double c : cfg.c_grid) {
                ModelParams params{q, k, c, cfg.n};
                struct Row {
                    std::int64_t non_core = 0, attempted = 0, certified = 0;
                    std::int64_t oracle_checked = 0, contradictions = 0;
                };
                std::vector<Row> rows(cfg.trials);
                parallel_trials(cfg.trials, cfg.workers, [&](int t) {
                    const std::uint64_t seed = trial_seed(cfg.base_seed, t);
                    const Colouring sigma = sample_planted_map(params, seed);
                    const Hypergraph h = gen_planted(params, sigma, mix_seed(seed));
                    const Incidence inc = Incidence::build(h);
                    const CoreTrace trace = extract_core(h, sigma);
                    Row& row = rows[t];
                    for (Vertex v = 0; v < h.n(); ++v) {
                        if (trace.in_core(v)) continue;
                        ++row.non_core;
                        if (row.attempted >= cfg.vertex_cap) continue;
                        ++row.attempted;
                        const auto cert = recolouring_certificate(
                            h, inc, sigma, trace, v, cfg.depth_budget,
                            /*require_acyclic=*/false);
                        const bool certified =
                            cert && validate_recolouring(h, sigma, *cert);
                        if (certified) ++row.certified;
                        if (oracle_scale && certified) {
                            ++row.oracle_checked;
                            if (is_ell_frozen_exact(h, sigma, v, 1))
                                ++row.contradictions;
                        }
                    }
                });

                for (int t = 0; t < cfg.trials; ++t) {
                    const Row& r = rows[t];
                    if (cfg.format == OutputFormat::csv)
                        os << q << ',' << k << ',' << c << ',' << cfg.n << ',' << t << ','
                           << trial_seed(cfg.base_seed, t) << ',' << r.non_core << ','
                           << r.attempted << ',' << r.certified << ',' << r.oracle_checked
                           << ',' << r.contradictions << '\n';
                    else
                        out["results"].push_back({{"q", q},
                                                  {"k", k},
                                                  {"c", c},
                                                  {"n", cfg.n},
                                                  {"trial", t},
                                                  {"nonCore", r.non_core},
                                                  {"attempted", r.attempted},
                                                  {"certified", r.certified},
                                                  {"oracleChecked", r.oracle_checked},
                                                  {"contradictions", r.contradictions}});
                }
            }
    if (cfg.format == OutputFormat::json) os << out.dump(2) << '\n';
    return 0;
}

int run_moments(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    json out{{"config", config_json(cfg)}, {"results", json::array()}};
    if (cfg.format == OutputFormat::csv) {
        csv_preamble(cfg, "moments", os);
        os << "q,k,c,samples,maxDelta,maxDeltaSeparable,cathcalcChecked,cathcalcViolations,"
              "argmax\n";
    }
    for (int q : cfg.q_grid)
        for (int k : cfg.k_grid)
            for (double c : cfg.c_grid) {
                ModelParams params{q, k, c, cfg.n};
                const auto rep = landscape_scan(params, cfg.scan_samples, cfg.base_seed);
                if (cfg.format == OutputFormat::csv) {
                    os.precision(12);
                    os << q << ',' << k << ',' << c << ',' << rep.samples << ','
                       << rep.max_delta << ',' << rep.max_delta_separable << ','
                       << rep.cathcalc_checked << ',' << rep.cathcalc_violations << ",\"";
                    for (std::size_t i = 0; i < rep.argmax.m.size(); ++i)
                        os << rep.argmax.m[i] << (i + 1 < rep.argmax.m.size() ? " " : "");
                    os << "\"\n";
                } else {
                    out["results"].push_back({{"q", q},
                                              {"k", k},
                                              {"c", c},
                                              {"samples", rep.samples},
                                              {"maxDelta", rep.max_delta},
                                              {"maxDeltaSeparable", rep.max_delta_separable},
                                              {"cathcalcChecked", rep.cathcalc_checked},
                                              {"cathcalcViolations", rep.cathcalc_violations},
                                              {"argmax", rep.argmax.m}});
                }
            }
    if (cfg.format == OutputFormat::json) os << out.dump(2) << '\n';
    return 0;
}

int run_oracle(const ExperimentConfig& cfg, std::ostream& os) {
    cfg.validate();
    json out{{"config", config_json(cfg)}, {"results", json::array()}};
    auto emit = [&](const json& row) { out["results"].push_back(row); };

    // golden exact counts
    {
        Hypergraph single(3, 3);
        single.add_edge(std::vector<Vertex>{0, 1, 2});
        emit({{"name", "Z3_single_edge"},
              {"expected", 24},
              {"actual", count_colourings_exact(single, 3)}});

        Hypergraph two(6, 3);
        two.add_edge(std::vector<Vertex>{0, 1, 2});
        two.add_edge(std::vector<Vertex>{3, 4, 5});
        emit({{"name", "Z3_two_disjoint_edges"},
              {"expected", 576},
              {"actual", count_colourings_exact(two, 3)}});

        Hypergraph complete4(4, 3);
        for (Vertex a = 0; a < 4; ++a)
            for (Vertex b = a + 1; b < 4; ++b)
                for (Vertex cc = b + 1; cc < 4; ++cc)
                    complete4.add_edge(std::vector<Vertex>{a, b, cc});
        emit({{"name", "Z2_complete_4_3"},
              {"expected", 6},
              {"actual", count_colourings_exact(complete4, 2)}});
    }

    // Monte Carlo mean of exact Z vs the composition-sum identity
    {
        ModelParams params{3, 3, 1.0, 12};
        const double exact = expected_colourings_multi(12, 3, 3, 12);
        std::vector<double> zs(cfg.trials);
        parallel_trials(cfg.trials, cfg.workers, [&](int t) {
            const Hypergraph h = gen_multi(params, trial_seed(cfg.base_seed, t));
            zs[t] = static_cast<double>(count_colourings_exact(h, 3));
        });
        emit({{"name", "EZ_multi_12_3_12"},
              {"exactCompositionSum", exact},
              {"monteCarloMean", mean_of(zs)},
              {"se", stderr_of(zs)},
              {"trials", cfg.trials}});
    }

    // planted-map sampler uniformity on the n=3, q=2, m=1 instance
    {
        ModelParams params{3, 3, 1.0 / 3.0, 3};
        params.q = 2;  // admissible maps: the six non-constant ones
        std::vector<std::int64_t> counts(8, 0);
        for (int t = 0; t < cfg.trials; ++t) {
            const Colouring s = sample_planted_map(params, trial_seed(cfg.base_seed, t));
            int idx = 0;
            for (int i = 0; i < 3; ++i) idx = idx * 2 + s.assignment[i];
            ++counts[idx];
        }
        std::vector<std::int64_t> admissible;
        for (int idx = 1; idx < 7; ++idx) admissible.push_back(counts[idx]);
        emit({{"name", "planted_map_uniformity_n3_q2_m1"},
              {"constantMapsSeen", counts[0] + counts[7]},
              {"p", uniform_chi2_p(admissible, static_cast<double>(cfg.trials))}});
    }

    // uniform-colouring sampler on the single triple, q=3
    {
        Hypergraph single(3, 3);
        single.add_edge(std::vector<Vertex>{0, 1, 2});
        std::vector<std::int64_t> counts(27, 0);
        for (int t = 0; t < cfg.trials; ++t) {
            const Colouring s =
                sample_uniform_colouring(single, 3, trial_seed(cfg.base_seed, t));
            int idx = 0;
            for (int i = 0; i < 3; ++i) idx = idx * 3 + s.assignment[i];
            ++counts[idx];
        }
        std::vector<std::int64_t> proper;
        std::int64_t improper_seen = 0;
        for (int idx = 0; idx < 27; ++idx) {
            const bool mono = idx == 0 || idx == 13 || idx == 26;
            if (mono) improper_seen += counts[idx];
            else proper.push_back(counts[idx]);
        }
        emit({{"name", "uniform_colouring_uniformity_single_edge"},
              {"improperSeen", improper_seen},
              {"p", uniform_chi2_p(proper, static_cast<double>(cfg.trials))}});
    }

    if (cfg.format == OutputFormat::json) {
        os << out.dump(2) << '\n';
    } else {
        csv_preamble(cfg, "oracle", os);
        os << "name,detail\n";
        for (const auto& row : out["results"])
            os << row["name"].get<std::string>() << ",\"" << row.dump() << "\"\n";
    }
    return 0;
}

}  // namespace hcol
