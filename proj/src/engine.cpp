#include "pdsim/engine.hpp"

#include "pdsim/common.hpp"
#include "pdsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace pdsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double threshold_for(double pd) {
    if (pd >= 1.0)
        return kInf; // doomed: defaults on the next draw
    if (pd <= 0.0)
        return -kInf; // immune: never defaults
    return norm_inv(pd);
}

} // namespace

void ScenarioOverride::validate(std::size_t n) const {
    require(mode.empty() || mode.size() == n, "scenario override: mode vector size ", mode.size(),
            " does not match bank count ", n);
    require(delta_pd.empty() || delta_pd.size() == n, "scenario override: delta_pd size ",
            delta_pd.size(), " does not match bank count ", n);
    for (double d : delta_pd)
        require(std::isfinite(d), "scenario override: non-finite delta_pd");
}

void SimulationConfig::validate(std::size_t n_banks) const {
    require(n_banks >= 1, "no banks configured");
    require(n_banks <= 64, "engine supports at most 64 nodes, got ", n_banks);
    require(periods >= 1, "periods must be >= 1, got ", periods);
    require(dt > 0.0, "dt must be positive, got ", dt);
    require(n_paths >= 1, "n_paths must be >= 1, got ", n_paths);
    require(threads >= 0, "threads must be >= 0, got ", threads);
    require(std::isfinite(discount_rate) && discount_rate >= 0.0,
            "discount rate must be nonnegative, got ", discount_rate);
    if (rho_matrix) {
        require(rho_matrix->size() == n_banks, "correlation matrix size ", rho_matrix->size(),
                " does not match bank count ", n_banks);
    } else {
        require(std::abs(uniform_rho) <= 1.0, "uniform rho out of [-1,1]: ", uniform_rho);
        if (n_banks > 1)
            require(uniform_rho >= -1.0 / static_cast<double>(n_banks - 1), "uniform rho ",
                    uniform_rho, " is not PSD for n = ", n_banks);
    }
}

double LossDistribution::mean() const {
    if (path_loss.empty())
        return 0.0;
    double s = 0.0;
    for (double v : path_loss)
        s += v;
    return s / static_cast<double>(path_loss.size());
}

double LossDistribution::std_error() const {
    const std::size_t n = path_loss.size();
    if (n < 2)
        return 0.0;
    const double m = mean();
    double ss = 0.0;
    for (double v : path_loss)
        ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

ContagionEngine::ContagionEngine(std::vector<BankNode> banks, ExposureNetwork net,
                                 SimulationConfig config, ScenarioOverride scenario)
    : banks_(std::move(banks)), net_(std::move(net)), config_(std::move(config)),
      scenario_(std::move(scenario)) {
    validate_banks(banks_);
    const std::size_t n = banks_.size();
    config_.validate(n);
    scenario_.validate(n);
    require(net_.size() == n, "exposure network size ", net_.size(),
            " does not match bank count ", n);

    effective_pd0_.resize(n);
    sigma_.assign(n, 0.0);
    liability_.resize(n);
    lgd_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeScenario mode = scenario_.mode.empty() ? NodeScenario::None : scenario_.mode[i];
        double pd = std::max(banks_[i].pd0, kPdFloor);
        if (!scenario_.delta_pd.empty()) {
            pd += scenario_.delta_pd[i];
            require(pd <= 1.0 + 1e-12, "scenario override: shifted pd for '", banks_[i].name,
                    "' exceeds 1");
            pd = std::clamp(pd, kPdFloor, 1.0);
        }
        if (mode == NodeScenario::ForceDefault)
            pd = 1.0;
        else if (mode == NodeScenario::Immune)
            pd = 0.0;
        effective_pd0_[i] = pd;
        liability_[i] = banks_[i].total_asset - banks_[i].capital;
        lgd_[i] = banks_[i].lgd;
        // Volatility is only meaningful for nodes that can both survive and
        // default; it is never read for pinned ones.
        if (config_.rule == UpdateRule::Merton && pd > 0.0 && pd < 1.0)
            sigma_[i] = merton_sigma(banks_[i].total_asset, banks_[i].capital, pd);
    }

    DiscountCurve curve(config_.discount_rate);
    discount_.resize(static_cast<std::size_t>(config_.periods));
    for (int t = 1; t <= config_.periods; ++t)
        discount_[static_cast<std::size_t>(t - 1)] = curve.factor(t * config_.dt);

    if (config_.rho_matrix) {
        uniform_mode_ = false;
        full_factor_ = cholesky_lower(*config_.rho_matrix);
    } else if (config_.uniform_rho >= 0.0) {
        uniform_mode_ = true;
        sqrt_rho_ = std::sqrt(config_.uniform_rho);
        sqrt_one_minus_rho_ = std::sqrt(1.0 - config_.uniform_rho);
    } else {
        // Negative uniform rho has no one-factor representation; fall back to
        // the explicit factorization.
        uniform_mode_ = false;
        config_.rho_matrix = CorrelationMatrix::uniform(n, config_.uniform_rho);
        full_factor_ = cholesky_lower(*config_.rho_matrix);
    }

    initial_state_ = SystemState::initial(banks_);
    initial_state_.pd = effective_pd0_;
    initial_threshold_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        initial_threshold_[i] = threshold_for(effective_pd0_[i]);
}

struct ContagionEngine::Workspace {
    SystemState state;
    std::vector<double> threshold;    // norm_inv(pd) per node, +-inf when pinned
    std::vector<double> draws;        // per-slot normals for the current period
    std::vector<std::size_t> alive_idx;
    std::vector<double> factor;       // Cholesky factor on alive slots (matrix mode)
    std::vector<double> mixed;
    bool factor_stale = false;
};

void ContagionEngine::sample_defaults(Workspace& ws, std::uint64_t path,
                                      std::uint32_t period) const {
    const std::size_t n = banks_.size();
    NormalStream stream(config_.seed, path, period);

    if (uniform_mode_) {
        const double common = sqrt_rho_ > 0.0 ? stream.normal(static_cast<std::uint32_t>(n)) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!ws.state.alive[i])
                continue;
            const double t = ws.threshold[i];
            if (t == -kInf)
                continue;
            bool hit;
            if (t == kInf) {
                hit = true;
            } else {
                const double x = sqrt_rho_ * common +
                                 sqrt_one_minus_rho_ * stream.normal(static_cast<std::uint32_t>(i));
                hit = x < t;
            }
            ws.state.defaulted_this_period[i] = hit;
        }
        return;
    }

    // Matrix mode: mix the alive slots through the Cholesky factor of the
    // alive-set principal submatrix, refreshed whenever the alive set changed.
    if (ws.factor_stale) {
        ws.alive_idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (ws.state.alive[i])
                ws.alive_idx.push_back(i);
        const std::size_t k = ws.alive_idx.size();
        std::vector<double> sub(k * k);
        const CorrelationMatrix& corr = *config_.rho_matrix;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                sub[a * k + b] = corr(ws.alive_idx[a], ws.alive_idx[b]);
        ws.factor = cholesky_lower(k, sub);
        ws.factor_stale = false;
    }

    const std::size_t k = ws.alive_idx.size();
    ws.draws.resize(k);
    for (std::size_t a = 0; a < k; ++a)
        ws.draws[a] = stream.normal(static_cast<std::uint32_t>(ws.alive_idx[a]));
    ws.mixed.assign(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        double x = 0.0;
        for (std::size_t b = 0; b <= a; ++b)
            x += ws.factor[a * k + b] * ws.draws[b];
        ws.mixed[a] = x;
    }
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t i = ws.alive_idx[a];
        const double t = ws.threshold[i];
        ws.state.defaulted_this_period[i] = (t == kInf) || (t != -kInf && ws.mixed[a] < t);
    }
}

void ContagionEngine::run_path_into(Workspace& ws, std::uint64_t path_index,
                                    PathResult& result) const {
    const std::size_t n = banks_.size();
    ws.state = initial_state_;
    ws.threshold = initial_threshold_;
    ws.factor_stale = true;

    result.total_loss = 0.0;
    result.defaulted_mask = 0;
    if (config_.retain_period_losses)
        result.period_loss.assign(static_cast<std::size_t>(config_.periods), 0.0);

    for (int t = 1; t <= config_.periods; ++t) {
        sample_defaults(ws, path_index, static_cast<std::uint32_t>(t));

        double period_loss = 0.0;
        bool any_default = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!ws.state.defaulted_this_period[j])
                continue;
            any_default = true;
            period_loss += std::max(ws.state.asset[j], 0.0) * lgd_[j];
            result.defaulted_mask |= std::uint64_t{1} << j;
        }

        if (any_default) {
            result.total_loss += period_loss * discount_[static_cast<std::size_t>(t - 1)];
            if (config_.retain_period_losses)
                result.period_loss[static_cast<std::size_t>(t - 1)] = period_loss;

            const std::vector<double> hits = impact(ws.state, net_, banks_);
            apply_impact(ws.state, hits, config_.rule, sigma_, liability_, config_.dt);
            for (std::size_t i = 0; i < n; ++i)
                if (ws.state.alive[i])
                    ws.threshold[i] = threshold_for(ws.state.pd[i]);
            ws.factor_stale = true;

            if (ws.state.alive_count() == 0)
                break;
        }
        // No defaults: same network, same parameters, next sampling.
    }
}

PathResult ContagionEngine::run_path(std::uint64_t path_index) const {
    Workspace ws;
    PathResult result;
    run_path_into(ws, path_index, result);
    return result;
}

LossDistribution ContagionEngine::run() const {
    const std::int64_t n_paths = config_.n_paths;
    LossDistribution dist;
    dist.path_loss.resize(static_cast<std::size_t>(n_paths));
    dist.defaulted_mask.resize(static_cast<std::size_t>(n_paths));
    if (config_.retain_period_losses)
        dist.period_loss.resize(static_cast<std::size_t>(n_paths));
    for (std::size_t i = 0; i < banks_.size(); ++i)
        dist.max_loss_bound += banks_[i].total_asset * banks_[i].lgd;

    unsigned workers = config_.threads > 0 ? static_cast<unsigned>(config_.threads)
                                           : std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_paths));

    auto worker = [&](std::int64_t begin, std::int64_t end) {
        Workspace ws;
        PathResult r;
        for (std::int64_t p = begin; p < end; ++p) {
            run_path_into(ws, static_cast<std::uint64_t>(p), r);
            dist.path_loss[static_cast<std::size_t>(p)] = r.total_loss;
            dist.defaulted_mask[static_cast<std::size_t>(p)] = r.defaulted_mask;
            if (config_.retain_period_losses)
                dist.period_loss[static_cast<std::size_t>(p)] = r.period_loss;
        }
    };

    if (workers == 1) {
        worker(0, n_paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::int64_t begin = n_paths * w / workers;
            const std::int64_t end = n_paths * (w + 1) / workers;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool)
            th.join();
    }
    return dist;
}

LossDistribution run_simulation(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                                const SimulationConfig& config, const ScenarioOverride& scenario) {
    return ContagionEngine(banks, net, config, scenario).run();
}

} // namespace pdsim
