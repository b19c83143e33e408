// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Criterion 1 drives the installed CLI binary (path via --cli).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "meanclt/errors.hpp"
#include "meanclt/finite_dist.hpp"
#include "meanclt/functionals.hpp"
#include "meanclt/harness.hpp"
#include "meanclt/mixtures.hpp"
#include "meanclt/wasserstein.hpp"
#include "meanclt/zero_bias.hpp"
#include "oracles.hpp"

using namespace meanclt;
namespace mt = meanclt::testing;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& msg) {
        if (!ok) {
            if (!pass) detail << "; ";
            pass = false;
            detail << msg;
        }
    }
};

std::string g_cli_path;

FiniteDist rademacher() { return FiniteDist::from_points({-1.0, 1.0}, {0.5, 0.5}); }

FiniteDist asym_two_point_std() {
    const double s = std::sqrt(2.0);
    return FiniteDist::from_points({-1.0 / s, 2.0 / s}, {2.0 / 3.0, 1.0 / 3.0});
}

FiniteDist lattice_three_point_std() {
    return FiniteDist::from_points({-1.5, 0.5, 1.5}, {7.0 / 24.0, 15.0 / 24.0, 2.0 / 24.0});
}

std::string run_cli(const std::string& args, int& exit_code) {
    const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    exit_code = status >= 0 ? WEXITSTATUS(status) : -1;
    return out;
}

// 1. psi(1/2) through the CLI.
void criterion1(Check& c) {
    if (g_cli_path.empty()) {
        c.require(false, "no --cli path given");
        return;
    }
    int code = 0;
    const std::string out = run_cli("lower-bound --p-grid 0.5:0.5:1", code);
    c.require(code == 0, "CLI exit code " + std::to_string(code));
    std::istringstream is(out);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    c.require(header == "p,psi", "unexpected header: " + header);
    const auto comma = row.find(',');
    c.require(comma != std::string::npos, "unexpected row: " + row);
    if (comma == std::string::npos) return;
    const double psi = std::stod(row.substr(comma + 1));
    c.detail << "psi(1/2)=" << psi;
    c.require(std::abs(psi - 0.535377) <= 1e-5, "psi(1/2) off by more than 1e-5");
}

// 2. B == 1 and the two-point W1 closed form on 100 seeded laws.
void criterion2(Check& c) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_two_point_centered(rng);
        const double x = d.support()[0];
        const double y = d.support()[1];
        const double b = b_functional(d);
        c.require(std::abs(b - 1.0) <= 1e-12, "B != 1 at trial " + std::to_string(trial));
        const double w1 = w1_step_pwl(d, zero_bias(d));
        const double closed = (x * x + y * y) / (2.0 * (y - x));
        c.require(std::abs(w1 - closed) <= 1e-12,
                  "two-point W1 mismatch at trial " + std::to_string(trial));
        if (!c.pass) return;
    }
}

// 3. Theorem bound on random lists and iid doubling schedules.
void criterion3(Check& c) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> count(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FiniteDist> comps;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) comps.push_back(random_standardized_law(rng, 2, 5));
        const auto r = verify_bound(comps);
        c.require(r.ratio_be <= 1.0 + 1e-9, "ratio_be > 1 on random list");
        c.require(r.ratio_bg <= 1.0 + 1e-9, "ratio_bg > 1 on random list");
        c.require(r.bg_bound <= r.be_bound + 1e-12, "bg bound above be bound");
        if (!c.pass) return;
    }

    int rows = 0;
    for (const auto& g : {rademacher(), asym_two_point_std(), lattice_three_point_std()}) {
        for (std::int64_t n = 1; n <= 4096; n *= 2) {
            const auto r = verify_bound_iid(g, n, false);
            ++rows;
            c.require(r.ratio_be <= 1.0 + 1e-9,
                      "ratio_be > 1 at iid n=" + std::to_string(n));
            c.require(r.ratio_bg <= 1.0 + 1e-9,
                      "ratio_bg > 1 at iid n=" + std::to_string(n));
            c.require(r.bg_bound <= r.be_bound + 1e-12, "bg bound above be bound (iid)");
            if (!c.pass) return;
        }
    }
    c.detail << "100 lists + " << rows << " iid rows, zero violations";
}

// 4. Esseen limit for the Bernoulli(1/2) law.
void criterion4(Check& c) {
    std::vector<std::int64_t> schedule;
    for (std::int64_t n = 1; n <= 4096; n *= 2) schedule.push_back(n);
    const auto rows = asymptotic_sweep(rademacher(), schedule);
    c.require(std::abs(*rows.front().a_value - 0.5) <= 1e-12, "A != 1/2");
    const double final_gap = std::abs(rows.back().sqrtn_w1 - 0.5);
    c.detail << "sqrt(n) w1 at 4096 = " << rows.back().sqrtn_w1;
    c.require(final_gap <= 0.02, "final gap above 0.02");
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].n < 64) continue;
        c.require(rows[i + 1].sqrtn_w1 <= rows[i].sqrtn_w1 + 1e-3,
                  "sequence not 1e-3-slack nonincreasing at n=" +
                      std::to_string(rows[i + 1].n));
    }
}

// 5. A(G) against the tensor-grid oracle on lattice and nonlattice laws.
void criterion5(Check& c) {
    std::mt19937_64 rng(5);
    int done = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const bool lattice_case = trial < 10;
        const auto d = lattice_case ? mt::random_lattice_three_point(rng)
                                    : mt::random_nonlattice_three_point(rng);
        const auto ms = moments(d);
        const auto lat = lattice_span(d);
        c.require(lat.is_lattice == lattice_case, "span detector disagrees with family");
        const double a = a_functional(d);
        const double oracle = mt::a_oracle_tensor(
            ms.omega, lat.is_lattice ? lat.span : 0.0, std::sqrt(ms.variance));
        c.require(std::abs(a - oracle) <= 1e-6,
                  "oracle gap " + std::to_string(std::abs(a - oracle)));
        const double ratio = zolotarev_ratio(d);
        c.require(ratio <= 0.5 + 1e-9, "Zolotarev ratio above 1/2");
        ++done;
        if (!c.pass) return;
    }
    c.detail << done << " laws within 1e-6 of the tensor oracle";
}

// 6. D3 grid search: violations = 0, best at the two-point edge.
void criterion6(Check& c) {
    D3GridSpec spec;
    spec.x = {-3.0, -0.1, 100};
    spec.z = {0.1, 3.0, 100};
    spec.alpha = {0.0, 1.0, 50};
    const auto result = search_d3(spec, 0);
    c.detail << "grid_size=" << result.grid_size << " best_b=" << result.best_b;
    c.require(result.grid_size >= 100000, "fewer than 1e5 admissible grid points");
    c.require(result.violations == 0,
              std::to_string(result.violations) + " violations of B <= 1");
    c.require(result.best_b >= 0.999, "best B below 0.999");
    c.require(result.best_b <= 1.0 + 1e-9, "best B above 1");
}

// 7. The two-point-pair inequality gap, both routes, 1e4 seeded triples.
void criterion7(Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(std::log(1e-3), std::log(1e3));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int done = 0;
    while (done < 10000) {
        const double x = -std::exp(mag(rng));
        const double z = std::exp(mag(rng));
        const double y = x * unit(rng);
        if (!(x < y && y < 0.0)) continue;
        ++done;
        try {
            const double gap = qp_inequality_gap(x, y, z);
            c.require(gap >= -1e-12, "negative gap at triple " + std::to_string(done));
        } catch (const Error& e) {
            c.require(false, std::string("route disagreement: ") + e.what());
        }
        if (!c.pass) return;
    }
    c.detail << "10000 triples, gap >= -1e-12, routes within 1e-10";
}

// 8. Mixture zero-bias equals zero-bias of the composed law, for equal and
// unequal component variances and with point masses at zero.
void criterion8(Check& c) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::uniform_real_distribution<double> stretch(0.5, 2.0);
    std::uniform_int_distribution<int> count(2, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FiniteDist> comps;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            auto comp = random_standardized_law(rng, 2, 4);
            if (trial % 2 == 1) comp = scale(comp, stretch(rng));
            comps.push_back(std::move(comp));
        }
        if (trial % 3 == 0) comps.push_back(FiniteDist::point_mass(0.0));
        std::vector<double> weights(comps.size());
        double total = 0.0;
        for (double& w : weights) {
            w = unit(rng);
            total += w;
        }
        for (double& w : weights) w /= total;

        const double dist = w1_pwl_pwl(zero_bias_mixture(weights, comps),
                                       zero_bias(mixture_law(weights, comps)));
        c.require(dist <= 1e-10, "mixture transform gap " + std::to_string(dist));
        if (!c.pass) return;
    }
    c.detail << "100 mixtures (delta_0 every third, unequal variances every other)";
}

// 9. reduce_to_d3 round trip and the mixture bound on B.
void criterion9(Check& c) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_standardized_law(rng, 4, 10);
        const auto mix = reduce_to_d3(d);
        double max_b = 0.0;
        for (std::size_t s = 0; s < mix.components.size(); ++s) {
            const auto& comp = mix.components[s];
            c.require(comp.size() <= 3, "component with more than 3 atoms");
            const auto ms = moments(comp);
            c.require(std::abs(ms.mean) <= 1e-9, "component mean off");
            c.require(std::abs(ms.variance - 1.0) <= 1e-9, "component variance off");
            max_b = std::max(max_b, b_functional(comp));
        }
        c.require(w1_step_step(mix.compose(), d) <= 1e-10, "recomposition W1 above 1e-10");
        c.require(b_functional(d) <= max_b + 1e-10, "B(input) above max component B");
        if (!c.pass) return;
    }
    c.detail << "50 laws, 4-10 atoms";
}

// 10. Continuous-reference discretizations of the uniform and the normal.
void criterion10(Check& c) {
    const double b_unif =
        b_functional(mt::uniform_discretization(2001, std::sqrt(3.0)));
    c.detail << "B(uniform,2001)=" << b_unif;
    c.require(std::abs(b_unif - 1.0 / 3.0) <= 1e-3, "uniform discretization off 1/3");

    double prev = 1e9;
    for (int n : {201, 801, 3201}) {
        const double b = b_functional(mt::normal_discretization(n));
        if (n == 801) {
            c.detail << " B(normal,801)=" << b;
            c.require(b <= 0.01, "normal discretization above 0.01");
        }
        c.require(b < prev, "B not decreasing across normal grids");
        prev = b;
    }
}

// 11. W1 oracle suite: coupling + Riemann agreement, metric axioms, scaling.
void criterion11(Check& c) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_standardized_law(rng, 2, 5);
        const auto b = random_standardized_law(rng, 2, 5);

        const double exact = w1_step_step(a, b);
        const double coupled = w1_by_coupling(a, b, 1 << 20);
        c.require(std::abs(exact - coupled) <= 1e-5, "coupling oracle gap (step-step)");
        const double grid = mt::riemann_w1(
            [&](double x) { return a.cdf(x); }, [&](double x) { return b.cdf(x); },
            std::min(a.min(), b.min()) - 0.5, std::max(a.max(), b.max()) + 0.5, 1'000'000);
        c.require(std::abs(exact - grid) <= 1e-5, "Riemann oracle gap (step-step)");

        const auto z = zero_bias(b);
        const double exact_pwl = w1_step_pwl(a, z);
        c.require(std::abs(exact_pwl - w1_by_coupling(a, z, 1 << 20)) <= 1e-5,
                  "coupling oracle gap (step-pwl)");

        c.require(std::abs(w1_step_step(b, a) - exact) == 0.0, "asymmetric");
        c.require(exact >= 0.0, "negative distance");
        const auto e = random_standardized_law(rng, 2, 5);
        c.require(exact <= w1_step_step(a, e) + w1_step_step(e, b) + 1e-12,
                  "triangle inequality");
        for (double s : {-2.0, 0.5}) {
            const double scaled = w1_step_step(scale(a, s), scale(b, s));
            c.require(std::abs(scaled - std::abs(s) * exact) <=
                          1e-10 * std::max(1.0, std::abs(s) * exact),
                      "scale equivariance");
        }
        if (!c.pass) return;
    }
    c.detail << "100 pairs against both oracles";
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
        if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"lower-bound constant psi(1/2) via CLI", criterion1},
        {"two-point extremality B = 1, W1 closed form", criterion2},
        {"main theorem bound, random lists + iid sweeps", criterion3},
        {"asymptotic constant for Bernoulli(1/2)", criterion4},
        {"A(G) vs tensor-grid oracle, Zolotarev ratio", criterion5},
        {"D3 search: no B > 1, two-point edge attained", criterion6},
        {"two-point-pair inequality gap, dual routes", criterion7},
        {"mixture zero-bias theorem with delta_0", criterion8},
        {"reduce-to-D3 round trip and mixture bound", criterion9},
        {"uniform/normal discretization constants", criterion10},
        {"W1 oracle suite, metric axioms, scaling", criterion11},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (only != 0 && only != num) continue;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s%s%s (%.2fs)\n", check.pass ? "PASS" : "FAIL",
                    num, criteria[i].first.c_str(),
                    check.detail.str().empty() ? "" : " — ", check.detail.str().c_str(),
                    secs);
        std::fflush(stdout);
        all_pass = all_pass && check.pass;
    }
    return all_pass ? 0 : 1;
}
