// bzone: build bisector arrangements of (perturbed) integer windows, export
// zone metrics and ray gaps, and run the verification suite.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bz/arrangement.hpp"
#include "bz/io.hpp"
#include "bz/lattice_model.hpp"
#include "bz/verify.hpp"
#include "bz/zone_metrics.hpp"

namespace fs = std::filesystem;

namespace {

struct RunConfig {
    int m = 9;
    std::int64_t p = 10000;
    std::int64_t q = 0;
    std::uint64_t seed = 0;
    std::optional<int> kmax;
    std::size_t directions = 64;
    int k = 6;
    int adversarial_k = 5;
    std::string tau = "0.4";
    std::string out = ".";
    bool unsafe = false;
};

bz::GeneratorSet generators(const RunConfig& cfg)
{
    if (cfg.q == 0) return bz::integer_window(cfg.m);
    return bz::perturb(bz::PerturbationConfig{cfg.m, cfg.p, cfg.q, cfg.seed});
}

fs::path output(const RunConfig& cfg, const char* name)
{
    fs::create_directories(cfg.out);
    return fs::path(cfg.out) / name;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

int resolve_kmax(const RunConfig& cfg, const bz::Arrangement& arr)
{
    const long reliable = arr.reliable_kmax();
    if (!cfg.kmax) return static_cast<int>(reliable);
    if (*cfg.kmax < 0) throw CLI::ValidationError("--kmax", "must be nonnegative");
    if (*cfg.kmax > reliable && !cfg.unsafe)
        throw CLI::ValidationError("--kmax", "exceeds the reliable bound " + std::to_string(reliable) + " (use --unsafe)");
    return *cfg.kmax;
}

int cmd_build(const RunConfig& cfg)
{
    const bz::Arrangement arr = bz::build(generators(cfg));
    write_file(output(cfg, "arrangement.json"), bz::arrangement_to_json(arr).dump() + "\n");
    std::cout << bz::stats_to_json(bz::stats(arr)).dump() << "\n";
    return 0;
}

int cmd_metrics(const RunConfig& cfg)
{
    const bz::Arrangement arr = bz::build(generators(cfg));
    const int kmax = resolve_kmax(cfg, arr);
    const auto reports = bz::zone_reports(arr, kmax);
    std::ofstream f(output(cfg, "zones.csv"), std::ios::binary);
    bz::write_zones_csv(f, reports);
    std::cout << "zones 1.." << kmax << " (reliable up to " << arr.reliable_kmax() << ")\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg)
{
    const bz::Arrangement arr = bz::build(generators(cfg));
    bz::VerifyOptions opt;
    opt.kmax = resolve_kmax(cfg, arr);
    opt.directions = cfg.directions;
    opt.seed = cfg.seed;
    opt.adversarial_k = cfg.adversarial_k;
    opt.adversarial_tau = bz::parse_rat(cfg.tau);
    const bz::VerifyReport rep = bz::run_verify(arr, opt);
    write_file(output(cfg, "verify.json"), bz::verify_report_to_json(rep).dump(2) + "\n");
    for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (c.k_hi > 0) std::cout << " [k=" << c.k_lo << ".." << c.k_hi << "]";
        if (!c.passed) std::cout << ": " << c.witness;
        std::cout << "\n";
    }
    return rep.all_passed() ? 0 : 1;
}

int cmd_rays(const RunConfig& cfg)
{
    const bz::GeneratorSet base = bz::integer_window(cfg.m);
    const bz::GeneratorSet pert = generators(cfg);
    const long reliable = bz::reliable_k(cfg.m, cfg.q, cfg.p).kmax;
    if (cfg.k < 1 || (cfg.k > reliable && !cfg.unsafe))
        throw CLI::ValidationError("--k", "must be in 1.." + std::to_string(reliable) + " (use --unsafe)");
    const auto dirs = bz::ray_directions(cfg.directions);
    const bz::StabilityResult res = bz::stability_gap(base, pert, cfg.k, dirs);
    std::ofstream f(output(cfg, "rays.csv"), std::ios::binary);
    bz::write_rays_csv(f, res);
    std::cout << "k=" << cfg.k << " directions=" << dirs.size() << " max_gap=" << bz::format_double(res.max_gap) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Brillouin zones of perturbed integer windows"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "window half-width")->check(CLI::Range(1, 1000))->capture_default_str();
        sub->add_option("--p", cfg.p, "scale of the integer grid")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--q", cfg.q, "perturbation strength in grid units (0 = unperturbed)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "perturbation seed")->capture_default_str();
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    };

    auto* build = app.add_subcommand("build", "write arrangement.json and print stats");
    common(build);
    auto* metrics = app.add_subcommand("metrics", "write zones.csv");
    common(metrics);
    metrics->add_option("--kmax", cfg.kmax, "last zone (default: reliable bound)");
    metrics->add_flag("--unsafe", cfg.unsafe, "allow zones beyond the reliable bound");
    auto* verify = app.add_subcommand("verify", "run the verification suite, write verify.json");
    common(verify);
    verify->add_option("--kmax", cfg.kmax, "last zone (default: reliable bound)");
    verify->add_flag("--unsafe", cfg.unsafe, "allow zones beyond the reliable bound");
    verify->add_option("--directions", cfg.directions, "ray directions")->capture_default_str();
    verify->add_option("--k", cfg.adversarial_k, "zone of the adversarial construction (0 skips it)")->capture_default_str();
    verify->add_option("--tau", cfg.tau, "strength of the adversarial construction")->capture_default_str();
    auto* rays = app.add_subcommand("rays", "write rays.csv with the k-th crossing gaps");
    common(rays);
    rays->add_option("--k", cfg.k, "crossing rank")->capture_default_str();
    rays->add_option("--directions", cfg.directions, "ray directions")->capture_default_str();
    rays->add_flag("--unsafe", cfg.unsafe, "allow k beyond the reliable bound");

    try {
        app.parse(argc, argv);
        if (*build) return cmd_build(cfg);
        if (*metrics) return cmd_metrics(cfg);
        if (*verify) return cmd_verify(cfg);
        return cmd_rays(cfg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
