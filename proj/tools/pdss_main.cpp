#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdss/config.hpp"
#include "pdss/goodmatrix.hpp"
#include "pdss/io.hpp"
#include "pdss/simnet.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> field;
    std::optional<std::size_t> b;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file")->required();
    cmd->add_option("--field", flags.field, "override the configured field, e.g. gf(4)");
    cmd->add_option("--b", flags.b, "override the configured dimension b");
    cmd->add_option("--seed", flags.seed, "override the configured seed");
}

pdss::RunConfig load_with_overrides(const CommonFlags& flags) {
    pdss::RunConfig rc = pdss::load_run_config(flags.config_path);
    if (flags.field) {
        rc.field_text = *flags.field;
        rc.modulus = 0;  // an override names a field afresh; no stale modulus
    }
    if (flags.b) rc.b = *flags.b;
    if (flags.seed) rc.seed = *flags.seed;
    return rc;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty())
        std::cout << text;
    else
        pdss::write_text_file(output_path, text);
}

int cmd_store(const CommonFlags& flags, const std::string& file_path,
              const std::string& output_path) {
    pdss::Cluster cluster = pdss::build_cluster(load_with_overrides(flags));
    const pdss::SystemConfig& cfg = cluster.config;
    const std::vector<std::uint8_t> bytes = pdss::read_binary_file(file_path);
    const std::vector<pdss::Fe> file = pdss::bytes_to_symbols(cfg.field, bytes, cfg.file_len());
    cluster.nodes = pdss::encode_store(cfg, file, cluster.assignment.vectors, &cluster.ledger);
    emit(pdss::snapshot_to_text(cluster), output_path);
    return 0;
}

int cmd_run(const CommonFlags& flags, const std::string& scenario_path,
            const std::string& output_path) {
    pdss::Cluster cluster = pdss::build_cluster(load_with_overrides(flags));
    const pdss::Scenario scenario =
        pdss::parse_scenario(pdss::read_text_file(scenario_path), scenario_path);
    const pdss::ScenarioReport report = pdss::run_scenario(cluster, scenario);
    std::cout << report.to_text();
    if (!output_path.empty()) pdss::write_text_file(output_path, report.to_json());
    return report.pass() ? 0 : 1;
}

int cmd_goodmatrix(std::size_t b, const std::string& output_path) {
    emit(pdss::build_good_matrix(b).to_text(), output_path);
    return 0;
}

int cmd_verify_assignment(const CommonFlags& flags, std::size_t t,
                          const std::string& output_path) {
    const pdss::RunConfig rc = load_with_overrides(flags);
    const pdss::Field f = pdss::make_field(rc);
    const pdss::Assignment asg = pdss::build_assignment(rc, f);
    const pdss::SystemConfig cfg(f, *rc.b, asg.vectors.size());
    const pdss::SweepReport report = pdss::resilience_sweep(cfg, asg, t, rc.seed);
    std::cout << report.to_text();
    if (!output_path.empty()) pdss::write_text_file(output_path, report.to_json());
    return report.pass ? 0 : 1;
}

int cmd_gen_assignment(const CommonFlags& flags, const std::string& output_path) {
    const pdss::RunConfig rc = load_with_overrides(flags);
    const pdss::Field f = pdss::make_field(rc);
    const pdss::Assignment asg = pdss::build_assignment(rc, f);

    std::vector<std::vector<pdss::Fe>> rows;
    rows.reserve(asg.vectors.size());
    for (const pdss::NodeVector& v : asg.vectors) rows.push_back(v.coords());
    emit(pdss::int_matrix_to_text(rows), output_path);

    std::cerr << asg.vectors.size() << " vectors generated\n";
    if (asg.claimed_resilience) {
        try {
            const pdss::ResilienceCheck check = pdss::is_t_resilient(
                f, asg.vectors, static_cast<std::size_t>(*asg.claimed_resilience));
            if (!check.pass) {
                std::cerr << "error: claimed resilience " << *asg.claimed_resilience
                          << " FAILED certification\n";
                return 1;
            }
            std::cerr << "claimed resilience " << *asg.claimed_resilience << " certified\n";
        } catch (const pdss::BudgetError&) {
            std::cerr << "claimed resilience " << *asg.claimed_resilience
                      << " not certified (enumeration over budget)\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equidistant-subspace-code storage simulator"};
    app.require_subcommand(1);

    CommonFlags store_flags, run_flags, verify_flags, gen_flags;
    std::string store_file, store_output;
    std::string run_scenario_path, run_output;
    std::size_t goodmatrix_b = 0;
    std::string goodmatrix_output;
    std::size_t verify_t = 0;
    std::string verify_output;
    std::string gen_output;

    CLI::App* store = app.add_subcommand("store", "encode a file onto a fresh cluster");
    add_common(store, store_flags);
    store->add_option("--file", store_file, "raw input file of exactly B symbols")->required();
    store->add_option("--output", store_output, "snapshot destination (default stdout)");

    CLI::App* run = app.add_subcommand("run", "execute a scenario against a fresh cluster");
    add_common(run, run_flags);
    run->add_option("--scenario", run_scenario_path, "scenario script")->required();
    run->add_option("--output", run_output, "also write the JSON report here");

    CLI::App* goodmatrix =
        app.add_subcommand("goodmatrix", "print the reconstruction schedule for dimension b");
    goodmatrix->add_option("b", goodmatrix_b, "dimension (>= 3)")->required();
    goodmatrix->add_option("--output", goodmatrix_output, "destination (default stdout)");

    CLI::App* verify = app.add_subcommand(
        "verify-assignment", "exhaustively check repairability under up to t failures");
    add_common(verify, verify_flags);
    verify->add_option("--t", verify_t, "maximum simultaneous failures")->required();
    verify->add_option("--output", verify_output, "also write the JSON report here");

    CLI::App* gen = app.add_subcommand("gen-assignment",
                                       "write the configured assignment as a vectors file");
    add_common(gen, gen_flags);
    gen->add_option("--output", gen_output, "destination (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (store->parsed()) return cmd_store(store_flags, store_file, store_output);
        if (run->parsed()) return cmd_run(run_flags, run_scenario_path, run_output);
        if (goodmatrix->parsed()) return cmd_goodmatrix(goodmatrix_b, goodmatrix_output);
        if (verify->parsed()) return cmd_verify_assignment(verify_flags, verify_t, verify_output);
        if (gen->parsed()) return cmd_gen_assignment(gen_flags, gen_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
