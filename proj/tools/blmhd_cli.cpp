// Command-line front end: blmhd <verb> --config PATH --out DIR [--seed N] [--strict]
#include "blmhd/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

const char* describe(const std::string& verb) {
    if (verb == "simulate") return "run the solver and report the energy functionals";
    if (verb == "verify-inequalities") return "check the Hardy, Sobolev, Moser and heat bounds on the test corpora";
    if (verb == "cancellation") return "good-unknown residual refinement study";
    if (verb == "sweep") return "eps ladder with pairwise differences and rates";
    if (verb == "stability") return "difference of two nearby solutions against a Gronwall envelope";
    if (verb == "norms") return "conormal norms and energy functionals of the initial data";
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized MHD boundary-layer experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BLMHD_VERSION);

    struct Args {
        std::string config;
        std::string out = "out";
        std::uint64_t seed = 0;
        bool strict = false;
    };
    std::vector<Args> args(blmhd::command_verbs().size());
    std::vector<CLI::App*> subs;
    std::vector<CLI::Option*> seeds;
    for (std::size_t k = 0; k < args.size(); ++k) {
        auto* sub = app.add_subcommand(blmhd::command_verbs()[k], describe(blmhd::command_verbs()[k]));
        sub->add_option("--config", args[k].config, "INI config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", args[k].out, "output directory")->capture_default_str();
        seeds.push_back(sub->add_option("--seed", args[k].seed, "shuffle corpus order"));
        sub->add_flag("--strict", args[k].strict, "treat warnings as failures");
        subs.push_back(sub);
    }
    CLI11_PARSE(app, argc, argv);

    for (std::size_t k = 0; k < subs.size(); ++k) {
        if (!subs[k]->parsed()) continue;
        const Args& a = args[k];
        try {
            const auto cfg = blmhd::load_config(a.config);
            blmhd::CommandOptions opts;
            opts.strict = a.strict;
            if (seeds[k]->count() > 0) opts.seed = a.seed;
            const auto res = blmhd::run_command(subs[k]->get_name(), cfg, a.out, opts);
            for (const auto& [suite, ok] : res.manifest.suites)
                std::printf("%-26s %s\n", suite.c_str(), ok ? "pass" : "FAIL");
            if (res.exit_code != 0) std::cerr << res.summary["failures"].dump(2) << "\n";
            return res.exit_code;
        } catch (const blmhd::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
