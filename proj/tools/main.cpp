// frfboot command-line front end.
//
// Exit codes: 0 completed without rejection, 3 completed with rejection,
// 1 usage error, 2 data error.

#include "frfboot/frfboot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_reject = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << bytes))
        throw DataError("cannot write '" + path.string() + "'");
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec)
        throw DataError("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

frfboot::FrfGroup load_group(const std::string& path, const std::string& bytes) {
    try {
        return frfboot::read_frf_group(bytes);
    } catch (const frfboot::Error& e) {
        throw DataError(path + ": " + e.what());
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    return seed ? *seed : frfboot::entropy_seed();
}

// Options shared by the commands that run the bootstrap.
struct BootstrapOptions {
    double alpha = 0.95;
    std::size_t B = 10000;
    std::size_t Bs = 200;
    std::optional<std::uint64_t> seed;
    double oversample = 10.0;
    std::string quantile_method = "order";
    bool inclusive_endpoint = false;
    unsigned threads = 1;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--alpha", alpha, "Confidence level, fraction in (0,1)")->capture_default_str();
        cmd.add_option("--B", B, "Outer bootstrap replications")->capture_default_str();
        cmd.add_option("--Bs", Bs, "Nested replications for the standard deviation")->capture_default_str();
        cmd.add_option("--seed", seed, "Random seed (drawn from system entropy when omitted)");
        cmd.add_option("--oversample", oversample, "Sample rate as a multiple of the highest frequency")
            ->capture_default_str();
        cmd.add_option("--quantile-method", quantile_method, "Critical constant method")
            ->check(CLI::IsMember({"order", "histogram"}))
            ->capture_default_str();
        cmd.add_flag("--inclusive-endpoint", inclusive_endpoint,
                     "Sample [0, period] inclusive (one duplicate-phase sample)");
        cmd.add_option("--threads", threads, "Worker threads for the outer bootstrap loop (0 = all cores)")
            ->envname("FRFBOOT_THREADS")
            ->capture_default_str();
    }

    frfboot::BootstrapParams params(std::uint64_t resolved_seed) const {
        frfboot::BootstrapParams p;
        p.alpha = alpha;
        p.B = B;
        p.Bs = Bs;
        p.seed = resolved_seed;
        p.threads = threads;
        try {
            p.quantile_method = frfboot::parse_quantile_method(quantile_method);
            p.validate();
        } catch (const frfboot::ValidationError& e) {
            throw UsageError(e.what());
        }
        if (!(oversample > 2.0))
            throw UsageError("--oversample must exceed 2");
        return p;
    }
};

// ---------------------------------------------------------------- test

struct TestCommand {
    std::string group1, group2, out = ".";
    bool svg = false;
    BootstrapOptions boot;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("test", "Unpaired bootstrap test on the difference of two group means");
        cmd->add_option("--group1", group1, "First group file")->required();
        cmd->add_option("--group2", group2, "Second group file")->required();
        boot.add_to(*cmd);
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
        cmd->add_flag("--svg", svg, "Also render figure.svg");
    }

    int run() const {
        const auto params = boot.params(resolve_seed(boot.seed));
        const auto bytes1 = read_file(group1);
        const auto bytes2 = read_file(group2);
        const auto g1 = load_group(group1, bytes1);
        const auto g2 = load_group(group2, bytes2);
        if (!(g1.grid() == g2.grid()))
            throw DataError("group files have different frequency headers");

        frfboot::BandResult result;
        std::optional<frfboot::TimeGrid> tg;
        try {
            tg = frfboot::make_time_grid(g1.grid(), boot.oversample, boot.inclusive_endpoint);
            result = frfboot::confidence_band_difference(g1, g2, *tg, params);
        } catch (const frfboot::Error& e) {
            throw DataError(e.what());
        }

        frfboot::ResultMeta meta{params, g1.grid(), *tg, boot.oversample,
                                 {{"group1", frfboot::sha256_hex(bytes1), g1.size()},
                                  {"group2", frfboot::sha256_hex(bytes2), g2.size()}}};
        const auto spec = frfboot::residual_spectrum(frfboot::zero_line_residual(result), *tg, g1.grid());

        const auto dir = prepare_out_dir(out);
        write_file(dir / "result.json", frfboot::write_result(result, meta));
        write_file(dir / "band.csv", frfboot::band_plot_csv(result, *tg));
        write_file(dir / "residual_spectrum.csv", frfboot::spectrum_plot_csv(spec));
        if (svg)
            write_file(dir / "figure.svg", frfboot::render_svg(result, *tg, spec));

        std::cout << "seed " << params.seed << "\n"
                  << "cc " << frfboot::format_double(result.cc) << "\n"
                  << "reject " << (result.reject ? "yes" : "no") << "\n";
        for (const auto& c : result.crossings)
            std::cout << "crossing " << frfboot::format_double(c.t_start) << " " << frfboot::format_double(c.t_end)
                      << " (" << c.n_samples << " samples)\n";
        if (result.degenerate)
            std::cerr << "warning: degenerate data (zero bootstrap variance)\n";
        return result.reject ? exit_reject : exit_ok;
    }
};

// ---------------------------------------------------------------- pir

struct PirCommand {
    std::string group, out = ".";
    double oversample = 10.0;
    bool inclusive_endpoint = false;
    bool roundtrip = false;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("pir", "Pseudo-impulse-responses of every subject in a group file");
        cmd->add_option("--group", group, "Group file")->required();
        cmd->add_option("--oversample", oversample, "Sample rate as a multiple of the highest frequency")
            ->capture_default_str();
        cmd->add_flag("--inclusive-endpoint", inclusive_endpoint, "Sample [0, period] inclusive");
        cmd->add_flag("--roundtrip", roundtrip, "Report the max error of FRF -> PIR -> FRF per subject");
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
    }

    int run() const {
        if (!(oversample > 2.0))
            throw UsageError("--oversample must exceed 2");
        const auto bytes = read_file(group);
        const auto g = load_group(group, bytes);
        const auto tg = frfboot::make_time_grid(g.grid(), oversample, inclusive_endpoint);
        const auto pirs = frfboot::group_pirs(g, tg);

        nlohmann::json meta = nlohmann::json::object();
        meta["freqs"] = g.grid().freqs();
        meta["base_freq"] = g.grid().base_freq();
        meta["period"] = g.grid().period();
        meta["sample_rate"] = tg.sample_rate();
        meta["n_samples"] = static_cast<std::uint64_t>(tg.n_samples());
        meta["inclusive_endpoint"] = inclusive_endpoint;
        meta["subjects"] = g.labels();

        if (roundtrip) {
            nlohmann::json errs = nlohmann::json::object();
            for (std::size_t i = 0; i < g.size(); ++i) {
                frfboot::Frf back;
                try {
                    back = frfboot::frf_from_pir(pirs[i], g.grid(), tg);
                } catch (const frfboot::Error& e) {
                    throw DataError(e.what());
                }
                double err = 0.0;
                for (std::size_t k = 0; k < back.size(); ++k)
                    err = std::max(err, std::abs(back.values[k] - g[i].values[k]));
                errs[g.labels()[i]] = err;
                std::cout << g.labels()[i] << " " << frfboot::format_double(err) << "\n";
            }
            meta["roundtrip_max_abs_error"] = std::move(errs);
        }

        std::string csv = "t";
        for (const auto& l : g.labels())
            csv += "," + l;
        csv += '\n';
        for (std::size_t n = 0; n < tg.n_samples(); ++n) {
            csv += frfboot::format_double(tg.time(n));
            for (const auto& p : pirs)
                csv += "," + frfboot::format_double(p.samples[n]);
            csv += '\n';
        }
        const auto dir = prepare_out_dir(out);
        write_file(dir / "pir.csv", csv);
        write_file(dir / "pir_meta.json", frfboot::canonical_dump(meta));
        std::cerr << g.size() << " PIRs of " << tg.n_samples() << " samples at "
                  << frfboot::format_double(tg.sample_rate()) << " Hz\n";
        return exit_ok;
    }
};

// ---------------------------------------------------------------- synth

struct SynthCommand {
    std::size_t n = 10;
    std::optional<std::size_t> n2;
    double noise = 0.1;
    std::optional<std::uint64_t> seed;
    double shift_real = 0.0;
    std::string pipeline = "direct";
    std::string out = ".";

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("synth", "Write two synthetic group files");
        cmd->add_option("--n", n, "Subjects in group 1 (and group 2 unless --n2)")->capture_default_str();
        cmd->add_option("--n2", n2, "Subjects in group 2");
        cmd->add_option("--noise", noise, "Noise standard deviation")->capture_default_str();
        cmd->add_option("--seed", seed, "Random seed (drawn from system entropy when omitted)");
        cmd->add_option("--shift-real", shift_real, "Added to every real part of group 2")->capture_default_str();
        cmd->add_option("--pipeline", pipeline, "direct: noisy copies of a base FRF; full: PRTS simulation")
            ->check(CLI::IsMember({"direct", "full"}))
            ->capture_default_str();
        cmd->add_option("--out", out, "Output directory")->capture_default_str();
    }

    int run() const {
        if (n < 2 || n2.value_or(n) < 2)
            throw UsageError("groups need at least 2 subjects");
        if (!(noise >= 0.0))
            throw UsageError("--noise must be non-negative");
        const std::uint64_t s = resolve_seed(seed);
        const auto grid = frfboot::posture_grid();
        const auto make = [&](std::size_t count, std::uint64_t child) {
            if (pipeline == "full")
                return frfboot::synth_group_pipeline(frfboot::PipelineConfig{}, grid, noise, count, child);
            return frfboot::synth_group(frfboot::default_base_frf(grid), grid, noise, count, child);
        };
        const auto g1 = make(n, frfboot::derive_seed(s, 1));
        auto g2 = make(n2.value_or(n), frfboot::derive_seed(s, 2));
        if (shift_real != 0.0)
            g2 = frfboot::shift_real(g2, shift_real);

        const auto dir = prepare_out_dir(out);
        write_file(dir / "group1.csv", frfboot::write_frf_group(g1));
        write_file(dir / "group2.csv", frfboot::write_frf_group(g2));
        std::cout << "seed " << s << "\n";
        return exit_ok;
    }
};

// ---------------------------------------------------------------- calibrate

struct CalibrateCommand {
    std::string mode = "type1";
    std::size_t replicates = 200;
    std::size_t n = 10;
    double noise = 0.1;
    double shift = 1.0;
    std::string out;
    BootstrapOptions boot;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("calibrate", "Monte Carlo rejection rate on synthetic groups");
        cmd->add_option("--mode", mode, "type1: same distribution; power: group 2 shifted")
            ->check(CLI::IsMember({"type1", "power"}))
            ->capture_default_str();
        cmd->add_option("--replicates", replicates, "Monte Carlo replicates")->capture_default_str();
        cmd->add_option("--n", n, "Subjects per group")->capture_default_str();
        cmd->add_option("--noise", noise, "Noise standard deviation")->capture_default_str();
        cmd->add_option("--shift", shift, "Real-part shift of group 2 in power mode")->capture_default_str();
        boot.B = 2000;
        boot.Bs = 100;
        boot.add_to(*cmd);
        cmd->add_option("--out", out, "Also write the report to this file");
    }

    int run() const {
        if (replicates == 0)
            throw UsageError("--replicates must be at least 1");
        if (n < 2)
            throw UsageError("--n must be at least 2");
        const auto grid = frfboot::posture_grid();
        frfboot::CalibrationConfig cfg;
        cfg.mode = frfboot::parse_calibration_mode(mode);
        cfg.replicates = replicates;
        cfg.n1 = cfg.n2 = n;
        cfg.noise = noise;
        cfg.shift = shift;
        cfg.oversample = boot.oversample;
        cfg.inclusive_endpoint = boot.inclusive_endpoint;
        cfg.params = boot.params(resolve_seed(boot.seed));

        const auto rep = frfboot::calibrate(cfg, grid, frfboot::default_base_frf(grid), [&](std::size_t r, bool) {
            if ((r + 1) % 10 == 0 || r + 1 == replicates)
                std::cerr << "\r" << (r + 1) << "/" << replicates << std::flush;
        });
        std::cerr << "\n";

        nlohmann::json j = nlohmann::json::object();
        j["mode"] = mode;
        j["replicates"] = static_cast<std::uint64_t>(rep.replicates);
        j["rejections"] = static_cast<std::uint64_t>(rep.rejections);
        j["rate"] = rep.rate;
        j["ci95"] = {rep.ci_low, rep.ci_high};
        j["shift"] = rep.shift;
        j["n"] = static_cast<std::uint64_t>(n);
        j["noise"] = noise;
        j["alpha"] = cfg.params.alpha;
        j["B"] = static_cast<std::uint64_t>(cfg.params.B);
        j["Bs"] = static_cast<std::uint64_t>(cfg.params.Bs);
        j["seed"] = cfg.params.seed;
        const auto text = frfboot::canonical_dump(j);
        std::cout << text;
        if (!out.empty())
            write_file(fs::path(out), text);
        return exit_ok;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unpaired bootstrap test for groups of frequency response functions"};
    app.set_version_flag("--version", std::string(frfboot::software_version));
    app.require_subcommand(1);

    TestCommand test;
    PirCommand pir;
    SynthCommand synth;
    CalibrateCommand calibrate;
    test.add_to(app);
    pir.add_to(app);
    synth.add_to(app);
    calibrate.add_to(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (app.got_subcommand("test"))
            return test.run();
        if (app.got_subcommand("pir"))
            return pir.run();
        if (app.got_subcommand("synth"))
            return synth.run();
        return calibrate.run();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const frfboot::Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
}
