// gcnm — scans of Gaussian-channel non-Markovianity measures.
//
// Exit codes: 0 success, 1 configuration/input error, 2 numerical failure,
// 3 I/O failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gcnm/coeffs.hpp"
#include "gcnm/errors.hpp"
#include "gcnm/scan.hpp"

namespace {

gcnm::nonmark::ChannelKind parse_channel(const std::string& name) {
    if (name == "qbm_exact") return gcnm::nonmark::ChannelKind::qbm_exact;
    if (name == "qbm_rwa") return gcnm::nonmark::ChannelKind::qbm_rwa;
    if (name == "pd") return gcnm::nonmark::ChannelKind::pd;
    throw CLI::ValidationError("--channel", "expected qbm_exact, qbm_rwa or pd");
}

int run(int argc, char** argv) {
    CLI::App app{
        "Exact and approximate open-system dynamics of single-mode Gaussian quantum\n"
        "channels (quantum Brownian motion, its rotating-wave form, pure damping),\n"
        "with divisibility-based non-Markovianity measures.  All quantities are\n"
        "dimensionless: frequencies in units of the bath cutoff, tau = w_c t,\n"
        "theta = k_B T/(hbar w_c), x = w_c/w_0."};
    app.require_subcommand(1);

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "Run a (channel, x, tau) scan and write a CSV");
    std::vector<std::string> channel_names{"qbm_exact"};
    std::vector<double> xs;
    gcnm::scan::ScanConfig cfg;
    scan->add_option("--channel", channel_names,
                     "Channel(s): qbm_exact, qbm_rwa, pd (repeatable)")
        ->capture_default_str();
    scan->add_option("--x", xs, "Non-Markovianity parameter(s) w_c/w_0 (repeatable)")->required();
    scan->add_option("--theta", cfg.theta, "Dimensionless temperature k_B T/(hbar w_c)")
        ->capture_default_str();
    scan->add_option("--alpha", cfg.alpha, "System-bath coupling")->capture_default_str();
    scan->add_option("--s", cfg.s, "Ohmicity exponent of the spectral density")
        ->capture_default_str();
    scan->add_option("--tau-max", cfg.tau_max, "Scan end time (dimensionless)")
        ->capture_default_str();
    scan->add_option("--grid", cfg.grid, "Number of output rows per (channel, x) cell")
        ->capture_default_str();
    scan->add_option("--out", cfg.out, "Output CSV path")->required();
    scan->add_option("--witness-pairs", cfg.witness_pairs,
                     "Optional state-pair family for the distance witness, e.g. "
                     "'coherent:1.0,squeezed:0.8,thermal:2.0'; writes <out>_witness.csv");

    // ---- summarize ----
    auto* summarize = app.add_subcommand("summarize", "Summarize a scan CSV to stdout");
    std::string csv_path;
    double sum_theta = 100.0;
    summarize->add_option("csv", csv_path, "CSV produced by 'gcnm scan'")->required();
    summarize->add_option("--theta", sum_theta,
                          "Temperature used for the asymptotic reference column")
        ->capture_default_str();

    // ---- table ----
    auto* table_cmd =
        app.add_subcommand("table", "Dump the master-equation coefficient table as CSV");
    gcnm::coeffs::ChannelParams tp;
    std::string table_out;
    table_cmd->add_option("--x", tp.x, "Non-Markovianity parameter w_c/w_0")->required();
    table_cmd->add_option("--theta", tp.theta, "Dimensionless temperature")->capture_default_str();
    table_cmd->add_option("--alpha", tp.alpha, "System-bath coupling")->capture_default_str();
    table_cmd->add_option("--s", tp.sd.s, "Ohmicity exponent")->capture_default_str();
    table_cmd->add_option("--tau-max", tp.tau_max, "Table end time")->capture_default_str();
    table_cmd->add_option("--grid", tp.n_grid, "Grid points (0 = automatic)")
        ->capture_default_str();
    table_cmd->add_option("--out", table_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version -> 0, anything else is a config error
    }

    if (scan->parsed()) {
        cfg.channels.clear();
        for (const std::string& name : channel_names) cfg.channels.push_back(parse_channel(name));
        cfg.xs = xs;
        gcnm::scan::run_scan(cfg);
        std::cerr << "wrote " << cfg.out << "\n";
        return 0;
    }
    if (summarize->parsed()) {
        std::ifstream is(csv_path, std::ios::binary);
        if (!is) throw gcnm::io_error("summarize: cannot open '" + csv_path + "'");
        const auto rows = gcnm::scan::summarize_csv(is, sum_theta);
        gcnm::scan::print_summary(rows, std::cout);
        return 0;
    }
    if (table_cmd->parsed()) {
        const gcnm::coeffs::CoefficientTable table = gcnm::coeffs::build_table(tp);
        for (const std::string& w : table.warnings) std::cerr << "warning: " << w << "\n";
        std::ofstream os(table_out, std::ios::binary);
        if (!os) throw gcnm::io_error("table: cannot open '" + table_out + "'");
        gcnm::coeffs::dump_table_csv(table, os);
        os.flush();
        if (!os) throw gcnm::io_error("table: write failed for '" + table_out + "'");
        std::cerr << "wrote " << table_out << "\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gcnm::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gcnm::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
