#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gcnm/nonmark.hpp"

namespace gcnm::scan {

/// One (channel, x, tau) scan cell configuration.  `grid` is the number of
/// output rows per cell (the integration grid underneath is chosen
/// independently for accuracy).  `witness_pairs` is an optional pair-family
/// spec, e.g. "coherent:1.0,squeezed:0.8,thermal:2.0"; when non-empty a
/// companion "<out>_witness.csv" is written.
struct ScanConfig {
    std::vector<nonmark::ChannelKind> channels;
    std::vector<double> xs;
    double theta = 100.0;
    double alpha = 0.1;
    double s = 1.0;
    double tau_max = 50.0;
    int grid = 2001;
    std::string out;
    std::string witness_pairs;
};

struct ScanRecord {
    nonmark::ChannelKind channel;
    double x;
    double tau;
    double gamma;
    double delta;
    double pi;
    double lambda_plus;
    double lambda_minus;
    double np;
};

/// Parses a witness pair-family spec into state pairs.
std::vector<nonmark::StatePair> parse_witness_pairs(const std::string& spec);

/// Runs the scan cells ((channel, x) in parallel) and returns the records
/// sorted by (channel name, x, tau).
std::vector<ScanRecord> run_scan_records(const ScanConfig& cfg);

/// Header exactly "channel,x,tau,gamma,Delta,Pi,lambda_plus,lambda_minus,N_p".
void write_scan_csv(const std::vector<ScanRecord>& records, std::ostream& os);

/// Full scan: validates, computes, writes CSV (and the witness CSV when
/// requested).  Throws on invalid config / numerical failure / I/O failure.
void run_scan(const ScanConfig& cfg);

/// Per-(channel, x) summary of a scan CSV.
struct SummaryRow {
    std::string channel;
    double x = 0.0;
    std::size_t rows = 0;
    double np_min = 0.0;
    double np_max = 0.0;
    double frac_positive = 0.0;   // fraction of tau > 0 rows with N_p > 0
    double last_quartile_mean = 0.0;
    double np_asymptotic = 0.0;   // evaluated at the supplied theta
};

/// Parses a CSV produced by run_scan; throws std::invalid_argument with the
/// offending line number on malformed input.
std::vector<SummaryRow> summarize_csv(std::istream& is, double theta);

void print_summary(const std::vector<SummaryRow>& rows, std::ostream& os);

}  // namespace gcnm::scan
