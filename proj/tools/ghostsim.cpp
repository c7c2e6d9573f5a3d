// Command line front end. Exit codes: 0 success, 2 configuration problem
// (bad flags, unreadable or invalid config), 3 runtime failure (including
// refusing to overwrite existing outputs).
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghostsim/experiments.hpp"
#include "ghostsim/version.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir = "out";
    bool overwrite = false;
    std::string seed;     // optional overrides, applied on top of the config
    std::string threads;
};

void add_common(CLI::App* sub, CliArgs* args, bool with_out) {
    sub->add_option("--config", args->config_path, "configuration file (key = value lines)")
        ->required();
    if (with_out)
        sub->add_option("--out", args->out_dir, "output directory (default: out)");
    sub->add_flag("--overwrite", args->overwrite, "replace existing output files");
    sub->add_option("--seed", args->seed, "override run.seed");
    sub->add_option("--threads", args->threads, "override run.threads");
}

ghostsim::Config load(const CliArgs& args) {
    try {
        ghostsim::Config cfg = ghostsim::Config::parse_file(args.config_path);
        if (!args.seed.empty()) cfg.set("run.seed", args.seed);
        if (!args.threads.empty()) cfg.set("run.threads", args.threads);
        return cfg;
    } catch (const std::exception& e) {
        throw ghostsim::ConfigError(e.what());
    }
}

void report(const std::vector<std::string>& paths) {
    for (const std::string& p : paths) std::printf("wrote %s\n", p.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal-light ghost imaging: sampled reconstruction and closed-form "
                 "reference profiles"};
    app.set_version_flag("--version", std::string(ghostsim::kVersion));
    app.require_subcommand(1);

    CliArgs args;
    std::function<std::vector<std::string>()> action;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "draw a speckle ensemble and reconstruct the correlation image");
    add_common(simulate, &args, true);
    simulate->callback([&] {
        action = [&] { return ghostsim::run_simulate(load(args), args.out_dir, args.overwrite); };
    });

    CLI::App* oracle = app.add_subcommand(
        "oracle", "evaluate the closed-form correlation profile for the same configuration");
    add_common(oracle, &args, true);
    oracle->callback([&] {
        action = [&] { return ghostsim::run_oracle(load(args), args.out_dir, args.overwrite); };
    });

    CLI::App* experiment =
        app.add_subcommand("experiment", "canned multi-run studies with summary tables");
    experiment->require_subcommand(1);

    CLI::App* freq = experiment->add_subcommand(
        "freq-response", "first-order response across slit widths at fixed open area");
    add_common(freq, &args, true);
    freq->callback([&] {
        action = [&] {
            return ghostsim::run_freq_response(load(args), args.out_dir, args.overwrite);
        };
    });

    CLI::App* vis = experiment->add_subcommand(
        "visibility", "bucket-detector visibility across slit counts and seeds");
    add_common(vis, &args, true);
    vis->callback([&] {
        action = [&] {
            return ghostsim::run_visibility(load(args), args.out_dir, args.overwrite);
        };
    });

    CLI::App* comp = experiment->add_subcommand(
        "complement", "signal-to-noise of a grating against its complement");
    add_common(comp, &args, true);
    comp->callback([&] {
        action = [&] {
            return ghostsim::run_complement(load(args), args.out_dir, args.overwrite);
        };
    });

    CLI::App* mask = app.add_subcommand("mask", "inspect or render the configured object mask");
    mask->require_subcommand(1);

    CLI::App* render = mask->add_subcommand("render", "write the mask as a portable graymap");
    add_common(render, &args, true);
    render->callback([&] {
        action = [&] {
            return ghostsim::run_mask_render(load(args), args.out_dir, args.overwrite);
        };
    });

    CLI::App* info = mask->add_subcommand("info", "print mask geometry and open area");
    add_common(info, &args, false);
    info->callback([&] {
        action = [&] {
            std::printf("%s", ghostsim::mask_info(load(args)).c_str());
            return std::vector<std::string>{};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is a configuration problem
    }

    try {
        report(action());
    } catch (const ghostsim::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
