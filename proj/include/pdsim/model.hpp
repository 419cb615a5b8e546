#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pdsim {

// Static per-institution data. Monetary amounts are billions of EUR
// throughout.
struct BankNode {
    std::size_t id = 0;
    std::string name;
    double total_asset = 0.0; // A
    double capital = 0.0;     // E
    double pd0 = 0.0;         // probability of default per period
    double lgd = 0.6;

    void validate() const; // throws ValidationError
};

void validate_banks(const std::vector<BankNode>& banks);

// Weighted directed exposures: entry (i, j) is what node i stands to lose
// (before LGD scaling) if node j defaults. Zero diagonal.
class ExposureNetwork {
  public:
    explicit ExposureNetwork(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    ExposureNetwork(std::size_t n, std::vector<double> entries);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double amount);
    void add(std::size_t i, std::size_t j, double amount) { set(i, j, (*this)(i, j) + amount); }

    double row_sum(std::size_t i) const;    // total exposure of lender i
    double column_sum(std::size_t j) const; // total liabilities of borrower j

  private:
    std::size_t n_;
    std::vector<double> a_;
};

// Flat annual discounting, D(t) = (1+r)^-t.
class DiscountCurve {
  public:
    explicit DiscountCurve(double annual_rate = 0.0);
    double rate() const { return rate_; }
    double factor(double t_years) const;

  private:
    double rate_;
};

enum class UpdateRule { Merton, Linear };

UpdateRule parse_update_rule(const std::string& name); // "merton" | "linear"
std::string to_string(UpdateRule rule);

// Mutable per-path system state. A value object: simulation paths evolve
// independent copies.
struct SystemState {
    int period = 0;
    std::vector<std::uint8_t> alive;
    std::vector<std::uint8_t> defaulted_this_period;
    std::vector<double> asset;   // A_i(t)
    std::vector<double> capital; // E_i(t)
    std::vector<double> pd;      // PD_i(t); 0 pins an immune node, 1 a doomed one

    static SystemState initial(const std::vector<BankNode>& banks);
    std::size_t size() const { return alive.size(); }
    std::size_t alive_count() const;
};

// Received impact per node for the defaults flagged in state.defaulted_this_period:
// I_i = sum over defaulting j of a_ij * LGD_j. Zero for dead nodes.
std::vector<double> impact(const SystemState& state, const ExposureNetwork& net,
                           const std::vector<BankNode>& banks);

// One period of Eq.-style bookkeeping: assets and capital both shrink by the
// impact, the default probability moves under the selected rule, and nodes
// whose impact reaches their capital are doomed (pd = 1, default next
// period). `sigma` and `liability` are the t=0 Merton calibration outputs and
// are only read under UpdateRule::Merton.
void apply_impact(SystemState& state, const std::vector<double>& impacts, UpdateRule rule,
                  const std::vector<double>& sigma, const std::vector<double>& liability,
                  double dt);

// The two update rules in isolation. Both return 1 once the impact reaches
// the current capital.
double merton_update(double asset, double impact, double capital, double liability, double sigma,
                     double dt);
double linear_update(double pd, double impact, double capital);

} // namespace pdsim
