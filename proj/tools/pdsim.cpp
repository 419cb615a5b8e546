// pdsim: multi-period correlated-default Monte Carlo with network contagion.
//
// Subcommands: simulate | rank | impact | beta | oracle | infer | baseline.
// Every run writes a report.json echoing the effective configuration (seed
// included, thread count excluded), so reruns with the same config and seed
// produce byte-identical outputs at any parallelism.

#include "pdsim/baselines.hpp"
#include "pdsim/common.hpp"
#include "pdsim/engine.hpp"
#include "pdsim/inference.hpp"
#include "pdsim/io.hpp"
#include "pdsim/markov.hpp"
#include "pdsim/risk.hpp"
#include "pdsim/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace pdsim;

namespace {

constexpr int kSchemaVersion = 1;

struct BankOptions {
    std::string banks_path;
    std::string rating_map_path;
    double lgd = 0.6;
};

struct NetworkOptions {
    std::string network_path; // empty: infer from the bank sheet marginals
    double alpha = 1.0;
    double min_loan_fraction = 0.05;
    std::uint64_t infer_seed = 0;
    bool infer_seed_set = false;
    std::size_t member = 0;
};

struct EngineOptions {
    int periods = 7;
    double dt = 1.0;
    double rho = 0.5;
    std::string rule = "merton";
    std::int64_t paths = 100000;
    std::uint64_t seed = 42;
    double discount_rate = 0.0;
    int threads = 0;
};

struct OutputOptions {
    std::string out_dir;
    std::vector<double> quantiles{0.95, 0.99, 0.999};
    std::size_t bins = 50;
};

void add_bank_options(CLI::App* cmd, BankOptions& o) {
    cmd->add_option("--banks", o.banks_path, "bank sheet CSV")->required();
    cmd->add_option("--rating-map", o.rating_map_path, "rating->pd CSV");
    cmd->add_option("--lgd", o.lgd, "loss given default applied to every bank");
}

void add_network_options(CLI::App* cmd, NetworkOptions& o) {
    cmd->add_option("--network", o.network_path,
                    "exposure edge list CSV; omit to infer from the bank sheet");
    cmd->add_option("--alpha", o.alpha, "inference attraction exponent");
    cmd->add_option("--min-loan-fraction", o.min_loan_fraction,
                    "loan chunk as a share of the borrower's total liabilities");
    cmd->add_option("--infer-seed", o.infer_seed, "inference master seed (default: --seed)")
        ->each([&o](const std::string&) { o.infer_seed_set = true; });
    cmd->add_option("--member", o.member, "ensemble member index used for the run");
}

void add_engine_options(CLI::App* cmd, EngineOptions& o) {
    cmd->add_option("--periods", o.periods, "number of periods M");
    cmd->add_option("--dt", o.dt, "period length in years");
    cmd->add_option("--rho", o.rho, "uniform pairwise correlation");
    cmd->add_option("--rule", o.rule, "pd update rule: merton | linear")
        ->check(CLI::IsMember({"merton", "linear"}));
    cmd->add_option("--paths", o.paths, "Monte Carlo paths");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--discount-rate", o.discount_rate, "flat annual discount rate");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores); never affects results");
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out_dir, "output directory")->required();
    cmd->add_option("--quantiles", o.quantiles, "loss quantile levels");
    cmd->add_option("--bins", o.bins, "histogram bins");
}

LoadedBanks load_bank_sheet(const BankOptions& o) {
    std::map<std::string, double> rating_map;
    if (!o.rating_map_path.empty())
        rating_map = load_rating_map(o.rating_map_path);
    return load_banks(o.banks_path, rating_map, o.lgd);
}

struct ResolvedNetwork {
    ExposureNetwork network{1};
    json metadata;
};

ResolvedNetwork resolve_network(const LoadedBanks& loaded, const NetworkOptions& o,
                                std::uint64_t engine_seed) {
    ResolvedNetwork r;
    if (!o.network_path.empty()) {
        r.network = read_network(o.network_path, loaded.banks.size());
        r.metadata["source"] = "file";
        r.metadata["path"] = o.network_path;
        return r;
    }
    InferenceConfig cfg;
    cfg.alpha = o.alpha;
    cfg.min_loan_fraction = o.min_loan_fraction;
    cfg.seed = o.infer_seed_set ? o.infer_seed : engine_seed;
    const std::uint64_t member_seed = derive_seed(cfg.seed, o.member);
    const InferredNetwork inferred = infer_network(loaded.marginals, cfg, member_seed);
    r.network = inferred.network;
    r.metadata["source"] = "inferred";
    r.metadata["alpha"] = cfg.alpha;
    r.metadata["min_loan_fraction"] = cfg.min_loan_fraction;
    r.metadata["infer_seed"] = cfg.seed;
    r.metadata["member"] = o.member;
    r.metadata["member_seed"] = member_seed;
    r.metadata["liability_scale"] = inferred.liability_scale;
    return r;
}

SimulationConfig make_engine_config(const EngineOptions& o) {
    SimulationConfig cfg;
    cfg.periods = o.periods;
    cfg.dt = o.dt;
    cfg.uniform_rho = o.rho;
    cfg.discount_rate = o.discount_rate;
    cfg.rule = parse_update_rule(o.rule);
    cfg.n_paths = o.paths;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

json echo_config(const std::string& command, const BankOptions& b, const NetworkOptions* n,
                 const EngineOptions* e, const json* extra) {
    json cfg;
    cfg["command"] = command;
    cfg["banks"] = b.banks_path;
    cfg["rating_map"] = b.rating_map_path;
    cfg["lgd"] = b.lgd;
    if (e) {
        cfg["periods"] = e->periods;
        cfg["dt"] = e->dt;
        cfg["rho"] = e->rho;
        cfg["rule"] = e->rule;
        cfg["paths"] = e->paths;
        cfg["seed"] = e->seed;
        cfg["discount_rate"] = e->discount_rate;
    }
    if (n) {
        cfg["network"] = n->network_path;
        cfg["alpha"] = n->alpha;
        cfg["min_loan_fraction"] = n->min_loan_fraction;
        cfg["infer_seed"] = n->infer_seed_set ? json(n->infer_seed) : json(nullptr);
        cfg["member"] = n->member;
    }
    if (extra)
        cfg.update(*extra);
    return cfg;
}

void write_report(const OutputOptions& out, const json& config, const json& results,
                  const json& network_meta = json()) {
    fs::create_directories(out.out_dir);
    json report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = "pdsim";
    report["config"] = config;
    report["config_hash"] = std::to_string(fnv1a_hash(config.dump()));
    if (!network_meta.is_null() && !network_meta.empty())
        report["network"] = network_meta;
    report["results"] = results;

    std::ofstream f(fs::path(out.out_dir) / "report.json", std::ios::binary);
    require(f.good(), "cannot write report in ", out.out_dir);
    f << report.dump(2) << '\n';
    require(f.good(), "failed writing report in ", out.out_dir);
}

json summary_json(const Summary& s) {
    json j;
    j["n_paths"] = s.n_paths;
    j["mean"] = s.mean;
    j["std_error"] = s.std_error;
    j["zero_loss_paths"] = s.zero_loss_paths;
    json q = json::array();
    for (const auto& [level, value] : s.quantiles)
        q.push_back({{"level", level}, {"value", value}});
    j["quantiles"] = q;
    j["common_random_numbers"] = true;
    return j;
}

void write_histogram_csv(const std::string& path, const Histogram& h) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"0", "0", std::to_string(h.zero_count), "1"});
    for (std::size_t k = 0; k + 1 < h.edges.size(); ++k)
        rows.push_back({format_double(h.edges[k]), format_double(h.edges[k + 1]),
                        std::to_string(h.counts[k]), "0"});
    write_csv(path, {"bin_low", "bin_high", "count", "is_zero_bin"}, rows);
}

std::vector<double> parse_grid(const std::vector<double>& values, const char* what) {
    require(!values.empty(), "empty ", what, " grid");
    return values;
}

// ---------------------------------------------------------------------------

int run_simulate(const BankOptions& b, const NetworkOptions& n, const EngineOptions& e,
                 const OutputOptions& out) {
    const LoadedBanks loaded = load_bank_sheet(b);
    const ResolvedNetwork net = resolve_network(loaded, n, e.seed);
    const SimulationConfig cfg = make_engine_config(e);

    const LossDistribution dist = run_simulation(loaded.banks, net.network, cfg);
    const Summary s = summarize(dist, out.quantiles);
    const Histogram h = histogram(dist, out.bins);

    double a_glob = 0.0;
    for (const auto& bank : loaded.banks)
        a_glob += bank.total_asset;

    json results = summary_json(s);
    results["max_loss_bound"] = dist.max_loss_bound;
    results["global_assets"] = a_glob;
    results["mean_over_global_assets"] = s.mean / a_glob;

    write_report(out, echo_config("simulate", b, &n, &e, nullptr), results, net.metadata);
    write_histogram_csv((fs::path(out.out_dir) / "histogram.csv").string(), h);
    std::cout << "simulate: mean loss " << format_double(s.mean) << " (se "
              << format_double(s.std_error) << ") over " << s.n_paths << " paths\n";
    return 0;
}

int run_rank(const BankOptions& b, const NetworkOptions& n, const EngineOptions& e,
             const OutputOptions& out) {
    const LoadedBanks loaded = load_bank_sheet(b);
    const ResolvedNetwork net = resolve_network(loaded, n, e.seed);
    const SimulationConfig cfg = make_engine_config(e);

    const std::vector<double> ranks = pd_rank_all(loaded.banks, net.network, cfg);

    std::vector<std::size_t> order(ranks.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return ranks[x] != ranks[y] ? ranks[x] > ranks[y] : x < y;
    });

    std::vector<std::vector<std::string>> rows;
    json table = json::array();
    for (std::size_t i : order) {
        const auto& bank = loaded.banks[i];
        rows.push_back({format_double(bank.pd0), format_double(bank.capital),
                        format_double(bank.total_asset), bank.name, format_double(ranks[i]),
                        format_double(bank.pd0 * bank.total_asset)});
        table.push_back({{"bank", bank.name},
                         {"pd", bank.pd0},
                         {"capital", bank.capital},
                         {"total_asset", bank.total_asset},
                         {"pd_rank", ranks[i]},
                         {"pd_times_total_asset", bank.pd0 * bank.total_asset}});
    }
    json results;
    results["table"] = table;
    results["common_random_numbers"] = true;

    write_report(out, echo_config("rank", b, &n, &e, nullptr), results, net.metadata);
    write_csv((fs::path(out.out_dir) / "rank.csv").string(),
              {"pd", "capital", "total_asset", "bank", "pd_rank", "pd_times_total_asset"}, rows);
    std::cout << "rank: top node " << loaded.banks[order[0]].name << " at "
              << format_double(ranks[order[0]]) << "\n";
    return 0;
}

int run_impact_or_beta(bool fit_beta, const BankOptions& b, const NetworkOptions& n,
                       const EngineOptions& e, const OutputOptions& out,
                       const std::vector<double>& x_grid) {
    const LoadedBanks loaded = load_bank_sheet(b);
    const ResolvedNetwork net = resolve_network(loaded, n, e.seed);
    const SimulationConfig cfg = make_engine_config(e);

    const BetaFit fit = pd_beta(loaded.banks, net.network, cfg, parse_grid(x_grid, "x"));

    std::vector<std::vector<std::string>> rows;
    json series = json::array();
    for (std::size_t k = 0; k < fit.x_percent.size(); ++k) {
        rows.push_back({format_double(fit.x_percent[k]), format_double(fit.impact[k])});
        series.push_back({{"x_percent", fit.x_percent[k]}, {"pd_impact", fit.impact[k]}});
    }

    json results;
    results["series"] = series;
    results["common_random_numbers"] = true;
    if (fit_beta) {
        double a_glob = 0.0;
        for (const auto& bank : loaded.banks)
            a_glob += bank.total_asset;
        results["pd_beta"] = fit.slope;
        results["r_squared"] = fit.r_squared;
        results["residual_rms"] = fit.residual_rms;
        results["pd_beta_over_global_assets"] = fit.slope / a_glob;
    }

    json extra;
    extra["x_grid"] = x_grid;
    const char* command = fit_beta ? "beta" : "impact";
    write_report(out, echo_config(command, b, &n, &e, &extra), results, net.metadata);
    write_csv((fs::path(out.out_dir) / (fit_beta ? "beta.csv" : "impact.csv")).string(),
              {"x_percent", "pd_impact"}, rows);
    if (fit_beta)
        std::cout << "beta: slope " << format_double(fit.slope) << " per percent (R^2 "
                  << format_double(fit.r_squared) << ")\n";
    else
        std::cout << "impact: " << fit.x_percent.size() << " grid points written\n";
    return 0;
}

int run_oracle(const OutputOptions& out, double asset, double pd, double lgd,
               double exposure_loss, const std::vector<double>& capital_grid,
               const std::vector<double>& rho_grid, int periods) {
    TwoNodeParams base;
    base.asset = asset;
    base.capital = capital_grid.front();
    base.pd = pd;
    base.lgd = lgd;
    base.exposure_loss = exposure_loss;
    base.rho = 0.0;

    const StrongContagionScan scan =
        strong_contagion_scan(base, capital_grid, rho_grid, periods);

    std::vector<std::string> header{"rho"};
    for (double e : capital_grid)
        header.push_back("pi12_E" + format_double(e));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < rho_grid.size(); ++r) {
        std::vector<std::string> row{format_double(rho_grid[r])};
        for (std::size_t ei = 0; ei < capital_grid.size(); ++ei)
            row.push_back(format_double(scan.pi12[ei][r]));
        rows.push_back(std::move(row));
    }

    auto to_text = [](Monotonicity m) {
        switch (m) {
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::Decreasing: return "decreasing";
        case Monotonicity::Flat: return "flat";
        default: return "non-monotone";
        }
    };
    json classifications = json::array();
    for (std::size_t ei = 0; ei < capital_grid.size(); ++ei)
        classifications.push_back(
            {{"capital", capital_grid[ei]}, {"pi12_vs_rho", to_text(scan.classification[ei])}});

    json results;
    results["classifications"] = classifications;
    results["single_crossover"] = scan.single_crossover;
    results["crossover_capital"] =
        scan.crossover_e ? json(*scan.crossover_e) : json(nullptr);

    json cfg;
    cfg["command"] = "oracle";
    cfg["asset"] = asset;
    cfg["pd"] = pd;
    cfg["lgd"] = lgd;
    cfg["exposure_loss"] = exposure_loss;
    cfg["capital_grid"] = capital_grid;
    cfg["rho_grid"] = rho_grid;
    cfg["periods"] = periods;

    write_report(out, cfg, results);
    write_csv((fs::path(out.out_dir) / "oracle.csv").string(), header, rows);
    std::cout << "oracle: " << (scan.single_crossover ? "single crossover at E = " +
                                                            format_double(*scan.crossover_e)
                                                      : std::string("no single crossover"))
              << "\n";
    return 0;
}

int run_infer(const BankOptions& b, const OutputOptions& out, double alpha,
              double min_loan_fraction, std::uint64_t seed, std::size_t ensemble) {
    const LoadedBanks loaded = load_bank_sheet(b);
    InferenceConfig cfg;
    cfg.alpha = alpha;
    cfg.min_loan_fraction = min_loan_fraction;
    cfg.seed = seed;
    cfg.ensemble_size = ensemble;

    const auto networks = generate_ensemble(loaded.marginals, cfg);
    fs::create_directories(out.out_dir);
    json members = json::array();
    for (std::size_t k = 0; k < networks.size(); ++k) {
        const std::string name = "network_" + std::to_string(k) + ".csv";
        write_network((fs::path(out.out_dir) / name).string(), networks[k].network);
        members.push_back({{"file", name},
                           {"seed", networks[k].seed},
                           {"liability_scale", networks[k].liability_scale}});
    }

    json cfg_echo;
    cfg_echo["command"] = "infer";
    cfg_echo["banks"] = b.banks_path;
    cfg_echo["rating_map"] = b.rating_map_path;
    cfg_echo["lgd"] = b.lgd;
    cfg_echo["alpha"] = alpha;
    cfg_echo["min_loan_fraction"] = min_loan_fraction;
    cfg_echo["seed"] = seed;
    cfg_echo["ensemble"] = ensemble;

    json results;
    results["members"] = members;
    write_report(out, cfg_echo, results);
    std::cout << "infer: wrote " << networks.size() << " network(s) to " << out.out_dir << "\n";
    return 0;
}

int run_baseline(const BankOptions& b, const NetworkOptions& n, const OutputOptions& out,
                 const std::string& model, std::size_t shock_node, double shock,
                 std::uint64_t seed) {
    const LoadedBanks loaded = load_bank_sheet(b);
    const ResolvedNetwork net = resolve_network(loaded, n, seed);
    require(shock_node < loaded.banks.size(), "shock node ", shock_node, " out of range");

    json results;
    if (model == "furfine") {
        std::vector<double> shocks(loaded.banks.size(), 0.0);
        shocks[shock_node] = shock;
        const FurfineResult r = furfine_cascade(loaded.banks, net.network, shocks);
        json defaulted = json::array();
        for (std::size_t i = 0; i < r.defaulted.size(); ++i)
            if (r.defaulted[i])
                defaulted.push_back(loaded.banks[i].name);
        results["model"] = "furfine";
        results["total_loss"] = r.total_loss;
        results["rounds"] = r.rounds;
        results["defaulted"] = defaulted;
    } else if (model == "debtrank") {
        require(shock >= 0.0 && shock <= 1.0, "debtrank shock must be a capital fraction in [0,1]");
        std::vector<double> stress(loaded.banks.size(), 0.0);
        stress[shock_node] = shock;
        const DebtRankResult r = gen_debtrank(loaded.banks, net.network, stress);
        json h = json::array();
        for (std::size_t i = 0; i < r.h.size(); ++i)
            h.push_back({{"bank", loaded.banks[i].name}, {"h", r.h[i]}});
        results["model"] = "debtrank";
        results["loss"] = r.loss;
        results["iterations"] = r.iterations;
        results["converged"] = r.converged;
        results["leverage_spectral_radius"] = r.leverage_spectral_radius;
        results["stress"] = h;
    } else {
        detail::fail<ValidationError>("unknown baseline model '", model, "'");
    }

    json extra;
    extra["model"] = model;
    extra["shock_node"] = shock_node;
    extra["shock"] = shock;
    extra["seed"] = seed;
    write_report(out, echo_config("baseline", b, &n, nullptr, &extra), results, net.metadata);
    std::cout << "baseline " << model << ": done\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pdsim: correlated-default Monte Carlo with network contagion"};
    app.require_subcommand(1);
    app.set_config("--config");

    BankOptions bank_opt;
    NetworkOptions net_opt;
    EngineOptions engine_opt;
    OutputOptions out_opt;

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the loss-distribution Monte Carlo");
    sim->configurable();
    add_bank_options(sim, bank_opt);
    add_network_options(sim, net_opt);
    add_engine_options(sim, engine_opt);
    add_output_options(sim, out_opt);

    // rank
    auto* rank = app.add_subcommand("rank", "per-node expected-loss attribution table");
    rank->configurable();
    add_bank_options(rank, bank_opt);
    add_network_options(rank, net_opt);
    add_engine_options(rank, engine_opt);
    add_output_options(rank, out_opt);

    // impact / beta
    std::vector<double> x_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    auto* impact = app.add_subcommand("impact", "loss response to uniform pd increases");
    impact->configurable();
    add_bank_options(impact, bank_opt);
    add_network_options(impact, net_opt);
    add_engine_options(impact, engine_opt);
    add_output_options(impact, out_opt);
    impact->add_option("--x-grid", x_grid, "percentage increases of all pds");

    auto* beta = app.add_subcommand("beta", "zero-intercept slope of the pd-impact series");
    beta->configurable();
    add_bank_options(beta, bank_opt);
    add_network_options(beta, net_opt);
    add_engine_options(beta, engine_opt);
    add_output_options(beta, out_opt);
    beta->add_option("--x-grid", x_grid, "percentage increases of all pds");

    // oracle
    double o_asset = 200.0, o_pd = 0.001, o_lgd = 0.6, o_exposure = 1.0;
    std::vector<double> o_capitals{1.05, 1.1, 1.2, 1.5, 2.0, 4.0, 8.0};
    std::vector<double> o_rhos{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                               0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
    int o_periods = 7;
    OutputOptions oracle_out;
    auto* oracle = app.add_subcommand("oracle", "exact two-bank chain curves and regime scan");
    oracle->configurable();
    oracle->add_option("--asset", o_asset, "total asset A of each bank");
    oracle->add_option("--pd", o_pd, "per-period default probability");
    oracle->add_option("--olgd", o_lgd, "loss given default");
    oracle->add_option("--exposure-loss", o_exposure, "a_hat = exposure * LGD");
    oracle->add_option("--capital-grid", o_capitals, "capital levels E");
    oracle->add_option("--rho-grid", o_rhos, "correlations (sorted)");
    oracle->add_option("--operiods", o_periods, "chain horizon in periods");
    oracle->add_option("--out", oracle_out.out_dir, "output directory")->required();

    // infer
    double i_alpha = 1.0, i_fraction = 0.05;
    std::uint64_t i_seed = 42;
    std::size_t i_ensemble = 10;
    OutputOptions infer_out;
    BankOptions infer_banks;
    auto* infer = app.add_subcommand("infer", "reconstruct bilateral exposure networks");
    infer->configurable();
    add_bank_options(infer, infer_banks);
    infer->add_option("--alpha", i_alpha, "attraction exponent");
    infer->add_option("--min-loan-fraction", i_fraction, "loan chunk fraction");
    infer->add_option("--seed", i_seed, "master seed");
    infer->add_option("--ensemble", i_ensemble, "number of networks");
    infer->add_option("--out", infer_out.out_dir, "output directory")->required();

    // baseline
    std::string b_model = "furfine";
    std::size_t b_node = 0;
    double b_shock = 0.0;
    auto* baseline = app.add_subcommand("baseline", "Furfine cascade / DebtRank iteration");
    baseline->configurable();
    add_bank_options(baseline, bank_opt);
    add_network_options(baseline, net_opt);
    baseline->add_option("--model", b_model, "furfine | debtrank")
        ->check(CLI::IsMember({"furfine", "debtrank"}));
    baseline->add_option("--shock-node", b_node, "index of the shocked node");
    baseline->add_option("--shock", b_shock,
                         "external shock (currency for furfine, capital fraction for debtrank)")
        ->required();
    baseline->add_option("--seed", engine_opt.seed, "seed for network inference");
    add_output_options(baseline, out_opt);

    try {
        app.parse(argc, argv);
        if (sim->parsed())
            return run_simulate(bank_opt, net_opt, engine_opt, out_opt);
        if (rank->parsed())
            return run_rank(bank_opt, net_opt, engine_opt, out_opt);
        if (impact->parsed())
            return run_impact_or_beta(false, bank_opt, net_opt, engine_opt, out_opt, x_grid);
        if (beta->parsed())
            return run_impact_or_beta(true, bank_opt, net_opt, engine_opt, out_opt, x_grid);
        if (oracle->parsed())
            return run_oracle(oracle_out, o_asset, o_pd, o_lgd, o_exposure, o_capitals, o_rhos,
                              o_periods);
        if (infer->parsed())
            return run_infer(infer_banks, infer_out, i_alpha, i_fraction, i_seed, i_ensemble);
        if (baseline->parsed())
            return run_baseline(bank_opt, net_opt, out_opt, b_model, b_node, b_shock,
                                engine_opt.seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
