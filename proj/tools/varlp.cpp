// Command-line frontend for the variable exponent reconstruction
// pipeline: phantom -> project -> noise -> maps -> reconstruct ->
// metrics / compare. Stages communicate through the files named in the
// [io] section of an INI config; any key can be overridden on the
// command line as --section.key=value.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "varlp/varlp.hpp"

namespace {

void print_usage() {
    std::printf(
        "usage: varlp <command> --config FILE [--section.key=value ...] [--deterministic]\n"
        "       varlp compare LOG.csv LOG.csv [...] --out SUMMARY.csv\n"
        "\n"
        "commands:\n"
        "  phantom      write the synthetic test image (io.phantom)\n"
        "  project      forward-project the phantom (io.sinogram)\n"
        "  noise        corrupt the sinogram (io.sinogram_noisy)\n"
        "  maps         pilot run + exponent map interpolation (io.p_map, io.q_map)\n"
        "  reconstruct  run the configured solver (io.reconstruction, io.runlog)\n"
        "  metrics      MAE/PSNR/SSIM against the phantom (io.metrics)\n"
        "  compare      rank run logs by best PSNR\n"
        "\n"
        "exit codes: 0 ok, 2 configuration error, 3 numerical failure\n"
        "VARLP_THREADS caps operator parallelism; --deterministic forces one thread.\n");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage();
        return 2;
    }
    std::string verb = argv[1];
    if (verb == "--help" || verb == "-h" || verb == "help") {
        print_usage();
        return 0;
    }

    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    std::vector<std::string> positional;
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config") {
            if (++i >= argc) {
                std::fprintf(stderr, "error: --config needs a path\n");
                return 2;
            }
            config_path = argv[i];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        } else if (arg == "--out") {
            if (++i >= argc) {
                std::fprintf(stderr, "error: --out needs a path\n");
                return 2;
            }
            out_path = argv[i];
        } else if (arg.rfind("--out=", 0) == 0) {
            out_path = arg.substr(6);
        } else if (arg == "--deterministic") {
            varlp::set_max_threads(1);
        } else if (arg.rfind("--", 0) == 0 && arg.find('=') != std::string::npos) {
            overrides.push_back(arg.substr(2));
        } else if (arg.rfind("--", 0) == 0) {
            std::fprintf(stderr, "error: unknown flag %s\n", arg.c_str());
            return 2;
        } else {
            positional.push_back(arg);
        }
    }

    try {
        if (verb == "compare") {
            if (out_path.empty()) throw varlp::ConfigInvalid("compare needs --out PATH");
            varlp::cli::cmd_compare(positional, out_path);
            return 0;
        }
        if (config_path.empty()) throw varlp::ConfigInvalid("missing --config PATH");
        if (!positional.empty())
            throw varlp::ConfigInvalid("unexpected argument: " + positional.front());
        varlp::ExperimentConfig cfg = varlp::load_experiment_config(config_path, overrides);

        if (verb == "phantom")
            varlp::cli::cmd_phantom(cfg);
        else if (verb == "project")
            varlp::cli::cmd_project(cfg);
        else if (verb == "noise")
            varlp::cli::cmd_noise(cfg);
        else if (verb == "maps")
            varlp::cli::cmd_maps(cfg);
        else if (verb == "reconstruct")
            varlp::cli::cmd_reconstruct(cfg);
        else if (verb == "metrics")
            varlp::cli::cmd_metrics(cfg);
        else {
            std::fprintf(stderr, "error: unknown command '%s'\n", verb.c_str());
            print_usage();
            return 2;
        }
        return 0;
    } catch (const varlp::ConfigInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const varlp::GeometryInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const varlp::PartitionInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const varlp::FileError& e) {
        std::fprintf(stderr, "file error: %s\n", e.what());
        return 2;
    } catch (const varlp::MismatchedLogs& e) {
        std::fprintf(stderr, "compare error: %s\n", e.what());
        return 2;
    } catch (const varlp::Error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
