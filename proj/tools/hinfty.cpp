#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hinfty/error.hpp"

namespace {

using hinfty::cli::RunConfig;

void common_flags(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--n", c.n, "Dimension of H^n (n >= 2)");
    sub->add_option("--t", c.t, "Parameter t = (n-1)(s - 1/2)")->each([&c](const std::string&) { c.t_set = true; });
    sub->add_option("--t-list", c.t_list, "Several values of t")->delimiter(',');
    sub->add_option("--K", c.K, "Harmonic truncation degree (K >= 4)");
    sub->add_option("--tol", c.tol, "Tolerance of the checked invariant");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--out", c.out, "Output CSV path (stdout when omitted)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical toolkit for exotic hyperbolic embeddings"};
    app.require_subcommand(1);
    RunConfig c;
    const std::vector<std::pair<std::string, std::string>> subs{
        {"signature", "Index of the form B_t over an (n,t) grid"},
        {"lambda", "Table of the intertwiner eigenvalues lambda_k"},
        {"dist", "u, I_u, arccosh I_u and t u along a u grid"},
        {"speed", "Closed-form and fitted speed, curvature"},
        {"boundary", "Boundary direction coefficients and partial sums"},
        {"continuity", "Hausdorff and equivariance defects as t -> t0"},
        {"renorm", "d/sqrt(t) and the KL slope as t -> 0"},
        {"cocycle", "Cocycle residuals and the power law of ||c(v)||^2"},
        {"tree", "Certification of tree embeddings"},
        {"relation", "Residuals of the sigma relation"},
    };
    for (const auto& [name, help] : subs) {
        CLI::App* sub = app.add_subcommand(name, help);
        common_flags(sub, c);
        if (name == "signature")
            sub->add_option("--n-list", c.n_list, "Several dimensions")->delimiter(',');
        if (name == "dist") {
            sub->add_option("--u-grid", c.u_grid, "start:stop:step or a comma list");
            sub->add_option("--u", c.u, "Single displacement")->each([&c](const std::string&) { c.u_set = true; });
        }
        if (name == "renorm")
            sub->add_option("--u", c.u, "Displacement of g_u")->each([&c](const std::string&) { c.u_set = true; });
        if (name == "continuity") {
            sub->add_option("--m", c.m, "Boundary sample size");
            sub->add_option("--R", c.R, "Ball radius");
        }
        if (name == "cocycle") {
            sub->add_option("--l", c.l, "Dimension of the boundary R^l");
            sub->add_option("--count", c.count, "Random similarity pairs");
        }
        if (name == "tree") {
            sub->add_option("--tree", c.tree, "Edge-list file, one 'u v' pair per line");
            sub->add_option("--lam", c.lam, "Values of lambda > 1")->delimiter(',');
            sub->add_option("--m", c.m, "Maximum vertex count of random trees");
            sub->add_option("--count", c.count, "Number of random trees");
        }
        if (name == "relation")
            sub->add_option("--count", c.count, "Random (lambda, mu, v) triples");
        sub->final_callback([&c, sub]() { c.subcommand = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // The table is buffered so that a configuration error leaves no partial
    // file; after an invariant failure the table is still written.
    std::ostringstream table;
    int status = 0;
    try {
        hinfty::cli::finalize(c);
        hinfty::cli::run(c, table);
    } catch (const hinfty::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hinfty::InvariantError& e) {
        std::cerr << "invariant failed: " << e.what() << '\n';
        status = 3;
    }
    if (c.out.empty()) {
        std::cout << table.str();
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            std::cerr << "config error: cannot open " << c.out << '\n';
            return 2;
        }
        f << table.str();
    }
    return status;
}
