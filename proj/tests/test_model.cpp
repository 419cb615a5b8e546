#include "pdsim/model.hpp"

#include "pdsim/common.hpp"
#include "pdsim/math.hpp"

#include <doctest.h>

#include <cmath>

using namespace pdsim;

namespace {

std::vector<BankNode> toy_banks(std::size_t n) {
    std::vector<BankNode> banks(n);
    for (std::size_t i = 0; i < n; ++i) {
        banks[i].id = i;
        banks[i].name = "bank" + std::to_string(i);
        banks[i].total_asset = 100.0 + 10.0 * static_cast<double>(i);
        banks[i].capital = 10.0;
        banks[i].pd0 = 0.01;
        banks[i].lgd = 0.6;
    }
    return banks;
}

} // namespace

TEST_CASE("bank validation") {
    BankNode b{0, "x", 100.0, 10.0, 0.01, 0.6};
    CHECK_NOTHROW(b.validate());
    b.capital = 100.0;
    CHECK_THROWS_AS(b.validate(), ValidationError);
    b.capital = 10.0;
    b.pd0 = 1.0;
    CHECK_THROWS_AS(b.validate(), ValidationError);
    b.pd0 = 0.01;
    b.lgd = 1.2;
    CHECK_THROWS_AS(b.validate(), ValidationError);
}

TEST_CASE("exposure network") {
    ExposureNetwork net(3);
    net.set(0, 1, 5.0);
    net.add(0, 2, 2.0);
    net.add(0, 2, 1.0);
    CHECK(net(0, 1) == 5.0);
    CHECK(net(0, 2) == 3.0);
    CHECK(net.row_sum(0) == 8.0);
    CHECK(net.column_sum(2) == 3.0);
    CHECK_THROWS_AS(net.set(1, 1, 1.0), ValidationError);
    CHECK_THROWS_AS(net.set(0, 1, -1.0), ValidationError);
    CHECK_THROWS_AS(ExposureNetwork(2, {0.0, 1.0, 1.0, 0.5}), ValidationError);
}

TEST_CASE("discount curve") {
    DiscountCurve flat(0.0);
    CHECK(flat.factor(0.0) == 1.0);
    CHECK(flat.factor(5.0) == 1.0);
    DiscountCurve r(1.0 / 0.95 - 1.0);
    CHECK(r.factor(1.0) == doctest::Approx(0.95).epsilon(1e-12));
    CHECK_THROWS_AS(DiscountCurve(-0.1), ValidationError);
}

TEST_CASE("impact sums only over this period's defaults") {
    auto banks = toy_banks(3);
    ExposureNetwork net(3);
    net.set(0, 1, 1.0);
    net.set(0, 2, 4.0);
    net.set(2, 1, 7.0);

    SystemState s = SystemState::initial(banks);
    SUBCASE("no defaults") {
        const auto I = impact(s, net, banks);
        CHECK(I == std::vector<double>{0.0, 0.0, 0.0});
    }
    SUBCASE("single default") {
        s.defaulted_this_period[1] = 1;
        const auto I = impact(s, net, banks);
        CHECK(I[0] == doctest::Approx(0.6));
        CHECK(I[1] == 0.0);
        CHECK(I[2] == doctest::Approx(4.2));
    }
}

TEST_CASE("impact with simultaneous defaults matches brute-force enumeration") {
    auto banks = toy_banks(4);
    banks[1].lgd = 0.5;
    banks[3].lgd = 0.25;
    ExposureNetwork net(4);
    net.set(0, 1, 2.0);
    net.set(0, 3, 8.0);
    net.set(2, 1, 1.5);
    net.set(2, 3, 0.5);
    net.set(1, 3, 9.0);

    SystemState s = SystemState::initial(banks);
    s.defaulted_this_period[1] = 1;
    s.defaulted_this_period[3] = 1;
    const auto I = impact(s, net, banks);

    // brute force: loop every (survivor, defaulter) pair
    std::vector<double> expected(4, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        if (s.defaulted_this_period[i])
            continue;
        for (std::size_t j = 0; j < 4; ++j)
            if (s.defaulted_this_period[j])
                expected[i] += net(i, j) * banks[j].lgd;
    }
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(I[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(I[0] == doctest::Approx(2.0 * 0.5 + 8.0 * 0.25));
    CHECK(I[1] == 0.0); // defaulting nodes receive nothing
}

TEST_CASE("linear_update") {
    CHECK(linear_update(0.3, 0.0, 10.0) == 0.3);
    CHECK(linear_update(0.3, 10.0, 10.0) == 1.0);
    CHECK(linear_update(0.2, 5.0, 10.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(linear_update(0.999, 9.999, 10.0) <= 1.0);
}

TEST_CASE("merton_update") {
    const double A = 200.0, E = 50.0, pd0 = 0.001;
    const double B = A - E;
    const double sigma = merton_sigma(A, E, pd0);
    // zero impact at t=0 reproduces the calibrated pd
    CHECK(merton_update(A, 0.0, E, B, sigma, 1.0) == doctest::Approx(pd0).epsilon(1e-12));
    // impact at the capital threshold dooms the node
    CHECK(merton_update(A, E, E, B, sigma, 1.0) == 1.0);
    CHECK(merton_update(A, E + 1.0, E, B, sigma, 1.0) == 1.0);
    // interior impact lands strictly between
    const double mid = merton_update(A, 25.0, E, B, sigma, 1.0);
    CHECK(mid > pd0);
    CHECK(mid < 1.0);
    // independent evaluation of the same expression
    const double direct =
        1.0 - norm_cdf((std::log(A - 25.0) - std::log(B) - 0.5 * sigma * sigma) / sigma);
    CHECK(mid == doctest::Approx(direct).epsilon(1e-15));
    CHECK(mid == doctest::Approx(0.051069485281960657).epsilon(1e-10));
}

TEST_CASE("apply_impact keeps A - E constant and dooms wiped-out nodes") {
    auto banks = toy_banks(3);
    std::vector<double> sigma(3), liability(3);
    for (std::size_t i = 0; i < 3; ++i) {
        sigma[i] = merton_sigma(banks[i].total_asset, banks[i].capital, banks[i].pd0);
        liability[i] = banks[i].total_asset - banks[i].capital;
    }

    SystemState s = SystemState::initial(banks);
    const double gap0 = s.asset[0] - s.capital[0];
    std::vector<double> hits{4.0, 10.0, 0.0};
    apply_impact(s, hits, UpdateRule::Merton, sigma, liability, 1.0);

    CHECK(s.asset[0] - s.capital[0] == doctest::Approx(gap0).epsilon(1e-15));
    CHECK(s.pd[0] > banks[0].pd0);
    CHECK(s.pd[1] == 1.0); // impact reached capital
    CHECK(s.pd[2] == banks[2].pd0);
    CHECK(s.period == 1);

    SUBCASE("under linear rule") {
        SystemState t = SystemState::initial(banks);
        apply_impact(t, hits, UpdateRule::Linear, sigma, liability, 1.0);
        CHECK(t.pd[0] == doctest::Approx(0.01 + 0.99 * 0.4).epsilon(1e-15));
        CHECK(t.pd[1] == 1.0);
        CHECK(t.pd[2] == banks[2].pd0);
    }
}

TEST_CASE("apply_impact removes this period's defaulters") {
    auto banks = toy_banks(2);
    SystemState s = SystemState::initial(banks);
    s.defaulted_this_period[0] = 1;
    std::vector<double> sigma(2, 0.1), liability{90.0, 100.0};
    apply_impact(s, {0.0, 0.0}, UpdateRule::Linear, sigma, liability, 1.0);
    CHECK(s.alive[0] == 0);
    CHECK(s.alive[1] == 1);
    CHECK(s.alive_count() == 1);
    CHECK(s.defaulted_this_period[0] == 0);
}

TEST_CASE("immune nodes keep pd zero through impacts") {
    auto banks = toy_banks(2);
    SystemState s = SystemState::initial(banks);
    s.pd[0] = 0.0;
    std::vector<double> sigma(2, 0.1), liability{90.0, 100.0};
    apply_impact(s, {5.0, 5.0}, UpdateRule::Linear, sigma, liability, 1.0);
    CHECK(s.pd[0] == 0.0);
    CHECK(s.pd[1] > banks[1].pd0);
}

TEST_CASE("update rule parsing") {
    CHECK(parse_update_rule("merton") == UpdateRule::Merton);
    CHECK(parse_update_rule("linear") == UpdateRule::Linear);
    CHECK(to_string(UpdateRule::Merton) == "merton");
    CHECK_THROWS_AS(parse_update_rule("quadratic"), ValidationError);
}
