#include "pdsim/model.hpp"

#include "pdsim/common.hpp"
#include "pdsim/math.hpp"

#include <algorithm>
#include <cmath>

namespace pdsim {

void BankNode::validate() const {
    require(std::isfinite(total_asset) && total_asset > 0.0, "bank '", name,
            "': total asset must be positive, got ", total_asset);
    require(std::isfinite(capital) && capital > 0.0 && capital < total_asset, "bank '", name,
            "': capital must satisfy 0 < E < A, got E=", capital, " A=", total_asset);
    require(std::isfinite(pd0) && pd0 >= 0.0 && pd0 < 1.0, "bank '", name,
            "': pd0 must lie in [0,1), got ", pd0);
    require(std::isfinite(lgd) && lgd >= 0.0 && lgd <= 1.0, "bank '", name,
            "': lgd must lie in [0,1], got ", lgd);
}

void validate_banks(const std::vector<BankNode>& banks) {
    require(!banks.empty(), "bank list is empty");
    for (std::size_t i = 0; i < banks.size(); ++i) {
        require(banks[i].id == i, "bank '", banks[i].name, "': id ", banks[i].id,
                " does not match position ", i);
        banks[i].validate();
    }
}

ExposureNetwork::ExposureNetwork(std::size_t n, std::vector<double> entries) : n_(n) {
    require(entries.size() == n * n, "exposure network: expected ", n * n, " entries, got ",
            entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        require(entries[i * n + i] == 0.0, "exposure network: diagonal entry (", i, ",", i,
                ") must be zero");
        for (std::size_t j = 0; j < n; ++j)
            require(std::isfinite(entries[i * n + j]) && entries[i * n + j] >= 0.0,
                    "exposure network: entry (", i, ",", j, ") must be nonnegative");
    }
    a_ = std::move(entries);
}

void ExposureNetwork::set(std::size_t i, std::size_t j, double amount) {
    require(i < n_ && j < n_, "exposure network: index out of range");
    require(i != j, "exposure network: diagonal must stay zero");
    require(std::isfinite(amount) && amount >= 0.0, "exposure network: amount must be nonnegative");
    a_[i * n_ + j] = amount;
}

double ExposureNetwork::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
        s += a_[i * n_ + j];
    return s;
}

double ExposureNetwork::column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        s += a_[i * n_ + j];
    return s;
}

DiscountCurve::DiscountCurve(double annual_rate) : rate_(annual_rate) {
    require(std::isfinite(annual_rate) && annual_rate >= 0.0,
            "discount rate must be nonnegative, got ", annual_rate);
}

double DiscountCurve::factor(double t_years) const {
    return std::pow(1.0 + rate_, -t_years);
}

UpdateRule parse_update_rule(const std::string& name) {
    if (name == "merton")
        return UpdateRule::Merton;
    if (name == "linear")
        return UpdateRule::Linear;
    detail::fail<ValidationError>("unknown update rule '", name, "' (expected merton or linear)");
}

std::string to_string(UpdateRule rule) {
    return rule == UpdateRule::Merton ? "merton" : "linear";
}

SystemState SystemState::initial(const std::vector<BankNode>& banks) {
    SystemState s;
    const std::size_t n = banks.size();
    s.alive.assign(n, 1);
    s.defaulted_this_period.assign(n, 0);
    s.asset.resize(n);
    s.capital.resize(n);
    s.pd.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.asset[i] = banks[i].total_asset;
        s.capital[i] = banks[i].capital;
        s.pd[i] = std::max(banks[i].pd0, kPdFloor);
    }
    return s;
}

std::size_t SystemState::alive_count() const {
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), std::uint8_t{1}));
}

std::vector<double> impact(const SystemState& state, const ExposureNetwork& net,
                           const std::vector<BankNode>& banks) {
    const std::size_t n = state.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (!state.defaulted_this_period[j])
            continue;
        const double severity = banks[j].lgd;
        for (std::size_t i = 0; i < n; ++i) {
            if (state.alive[i] && !state.defaulted_this_period[i])
                out[i] += net(i, j) * severity;
        }
    }
    return out;
}

double merton_update(double asset, double impact, double capital, double liability, double sigma,
                     double dt) {
    if (impact >= capital)
        return 1.0;
    const double num = std::log(asset - impact) - std::log(liability) - 0.5 * sigma * sigma * dt;
    return 1.0 - norm_cdf(num / (sigma * std::sqrt(dt)));
}

double linear_update(double pd, double impact, double capital) {
    if (impact >= capital)
        return 1.0;
    return std::min(1.0, pd + (1.0 - pd) * impact / capital);
}

void apply_impact(SystemState& state, const std::vector<double>& impacts, UpdateRule rule,
                  const std::vector<double>& sigma, const std::vector<double>& liability,
                  double dt) {
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        // Nodes flagged this period leave the system; their edges die with them.
        if (state.defaulted_this_period[i]) {
            state.alive[i] = 0;
            continue;
        }
        if (!state.alive[i])
            continue;

        const double hit = impacts[i];
        const bool immune = state.pd[i] == 0.0;
        if (hit > 0.0 && !immune && state.pd[i] < 1.0) {
            if (rule == UpdateRule::Merton) {
                state.pd[i] = merton_update(state.asset[i], hit, state.capital[i], liability[i],
                                            sigma[i], dt);
            } else {
                state.pd[i] = linear_update(state.pd[i], hit, state.capital[i]);
            }
            if (state.pd[i] < 1.0)
                state.pd[i] = std::max(state.pd[i], kPdFloor);
        }
        state.asset[i] -= hit;
        state.capital[i] -= hit;
    }
    std::fill(state.defaulted_this_period.begin(), state.defaulted_this_period.end(),
              std::uint8_t{0});
    ++state.period;
}

} // namespace pdsim
