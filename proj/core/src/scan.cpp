#include "gcnm/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gcnm/errors.hpp"

namespace gcnm::scan {

namespace {

constexpr const char* kHeader = "channel,x,tau,gamma,Delta,Pi,lambda_plus,lambda_minus,N_p";

void validate(const ScanConfig& cfg) {
    if (cfg.channels.empty()) throw std::invalid_argument("scan: channel list is empty");
    if (cfg.xs.empty()) throw std::invalid_argument("scan: x list is empty");
    for (double x : cfg.xs)
        if (!(x >= 0.05)) throw std::invalid_argument("scan: every x must be >= 0.05");
    if (!(cfg.theta > 0.0)) throw std::invalid_argument("scan: theta must be > 0");
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("scan: alpha must be > 0");
    if (!(cfg.s > 0.0)) throw std::invalid_argument("scan: s must be > 0");
    if (!(cfg.tau_max > 0.0)) throw std::invalid_argument("scan: tau-max must be > 0");
    if (cfg.grid < 2) throw std::invalid_argument("scan: grid must be >= 2");
    if (cfg.out.empty()) throw std::invalid_argument("scan: output path is empty");
}

struct Cell {
    std::vector<ScanRecord> records;
    std::vector<double> witness_tau, witness_distance, witness_derivative, witness_value;
    std::vector<std::string> warnings;
};

Cell compute_cell(const ScanConfig& cfg, double x, const std::vector<nonmark::StatePair>& pairs) {
    coeffs::ChannelParams p;
    p.x = x;
    p.theta = cfg.theta;
    p.alpha = cfg.alpha;
    p.sd.s = cfg.s;
    p.tau_max = cfg.tau_max;
    coeffs::CoefficientTable table = coeffs::build_table(p);

    Cell cell;
    cell.warnings = table.warnings;
    const double dt = cfg.tau_max / (cfg.grid - 1);
    for (nonmark::ChannelKind ch : cfg.channels) {
        for (int j = 0; j < cfg.grid; ++j) {
            const double tau = std::min(j * dt, table.tau_max());
            ScanRecord rec;
            rec.channel = ch;
            rec.x = x;
            rec.tau = tau;
            rec.gamma = table.gamma_at(tau);
            rec.delta = table.delta_at(tau);
            rec.pi = table.pi_at(tau);
            switch (ch) {
                case nonmark::ChannelKind::qbm_exact: {
                    const double r = std::sqrt(rec.delta * rec.delta + rec.gamma * rec.gamma +
                                               rec.pi * rec.pi);
                    rec.lambda_plus = rec.delta + r;
                    rec.lambda_minus = rec.delta - r;
                    rec.np = nonmark::np_qbm_exact(table, tau).value;
                    break;
                }
                case nonmark::ChannelKind::qbm_rwa:
                    rec.lambda_plus = std::max(rec.delta + rec.gamma, rec.delta - rec.gamma);
                    rec.lambda_minus = std::min(rec.delta + rec.gamma, rec.delta - rec.gamma);
                    rec.np = nonmark::np_rwa(table, tau).value;
                    break;
                case nonmark::ChannelKind::pd:
                    rec.lambda_plus = rec.gamma;
                    rec.lambda_minus = rec.gamma;
                    rec.np = nonmark::np_pd(table, tau).value;
                    break;
            }
            cell.records.push_back(rec);
        }
    }
    if (!pairs.empty()) {
        gchannel::QbmChannel channel(table);
        std::vector<double> grid(cfg.grid);
        for (int j = 0; j < cfg.grid; ++j) grid[j] = std::min(j * dt, table.tau_max());
        nonmark::WitnessResult w = nonmark::distance_witness(channel, pairs, grid);
        cell.witness_tau = std::move(w.tau);
        cell.witness_distance = std::move(w.distance);
        cell.witness_derivative = std::move(w.derivative);
        cell.witness_value = std::move(w.witness);
    }
    return cell;
}

struct ScanData {
    std::vector<double> xs;      // sorted, deduplicated
    std::vector<Cell> cells;     // one per x
    std::vector<ScanRecord> records;  // merged, sorted
};

ScanData compute_scan(const ScanConfig& cfg) {
    validate(cfg);
    const std::vector<nonmark::StatePair> pairs = parse_witness_pairs(cfg.witness_pairs);

    ScanData data;
    data.xs = cfg.xs;
    std::sort(data.xs.begin(), data.xs.end());
    data.xs.erase(std::unique(data.xs.begin(), data.xs.end()), data.xs.end());

    std::vector<std::future<Cell>> futures;
    futures.reserve(data.xs.size());
    for (double x : data.xs)
        futures.push_back(std::async(std::launch::async,
                                     [&cfg, x, &pairs] { return compute_cell(cfg, x, pairs); }));
    for (auto& f : futures) {
        data.cells.push_back(f.get());
        const Cell& cell = data.cells.back();
        data.records.insert(data.records.end(), cell.records.begin(), cell.records.end());
    }
    std::stable_sort(data.records.begin(), data.records.end(),
                     [](const ScanRecord& a, const ScanRecord& b) {
                         const int c = std::strcmp(nonmark::to_string(a.channel),
                                                   nonmark::to_string(b.channel));
                         if (c != 0) return c < 0;
                         if (a.x != b.x) return a.x < b.x;
                         return a.tau < b.tau;
                     });
    return data;
}

}  // namespace

std::vector<nonmark::StatePair> parse_witness_pairs(const std::string& spec) {
    std::vector<nonmark::StatePair> pairs;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        const std::string kind = item.substr(0, colon);
        double arg = 1.0;
        if (colon != std::string::npos) {
            try {
                arg = std::stod(item.substr(colon + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("witness-pairs: bad value in '" + item + "'");
            }
        }
        if (kind == "coherent") {
            // vacua displaced by +-arg along x
            pairs.emplace_back(gchannel::coherent_state(arg, 0.0),
                               gchannel::coherent_state(-arg, 0.0));
        } else if (kind == "squeezed") {
            // orthogonally squeezed vacua
            pairs.emplace_back(gchannel::squeezed_state(arg), gchannel::squeezed_state(-arg));
        } else if (kind == "thermal") {
            pairs.emplace_back(gchannel::thermal_state(arg), gchannel::vacuum_state());
        } else {
            throw std::invalid_argument("witness-pairs: unknown pair kind '" + kind +
                                        "' (expected coherent|squeezed|thermal)");
        }
    }
    return pairs;
}

std::vector<ScanRecord> run_scan_records(const ScanConfig& cfg) {
    return compute_scan(cfg).records;
}

void write_scan_csv(const std::vector<ScanRecord>& records, std::ostream& os) {
    os << kHeader << '\n';
    char buf[256];
    for (const ScanRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      nonmark::to_string(r.channel), r.x, r.tau, r.gamma, r.delta, r.pi,
                      r.lambda_plus, r.lambda_minus, r.np);
        os << buf;
    }
}

void run_scan(const ScanConfig& cfg) {
    const ScanData data = compute_scan(cfg);
    const std::vector<double>& xs = data.xs;
    const std::vector<Cell>& cells = data.cells;

    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw io_error("scan: cannot open output file '" + cfg.out + "'");
    write_scan_csv(data.records, os);
    os.flush();
    if (!os) throw io_error("scan: write failed for '" + cfg.out + "'");

    if (!cfg.witness_pairs.empty() && !cells.empty() && !cells.front().witness_tau.empty()) {
        std::string wpath = cfg.out;
        const auto dot = wpath.rfind(".csv");
        if (dot != std::string::npos && dot == wpath.size() - 4) wpath.erase(dot);
        wpath += "_witness.csv";
        std::ofstream ws(wpath, std::ios::binary);
        if (!ws) throw io_error("scan: cannot open output file '" + wpath + "'");
        ws << "x,tau,distance,derivative,witness\n";
        char buf[192];
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const Cell& cell = cells[ci];
            for (std::size_t k = 0; k < cell.witness_tau.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", xs[ci],
                              cell.witness_tau[k], cell.witness_distance[k],
                              cell.witness_derivative[k], cell.witness_value[k]);
                ws << buf;
            }
        }
        ws.flush();
        if (!ws) throw io_error("scan: write failed for '" + wpath + "'");
    }
}

namespace {

double parse_double_field(const std::string& field, std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("summarize: parse error at line " + std::to_string(line_no) +
                                    ": bad numeric field '" + field + "'");
    return v;
}

}  // namespace

std::vector<SummaryRow> summarize_csv(std::istream& is, double theta) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line))
        throw std::invalid_argument("summarize: parse error at line 1: empty input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw std::invalid_argument("summarize: parse error at line 1: unexpected header");

    struct Acc {
        std::vector<double> tau, np;
    };
    std::map<std::pair<std::string, double>, Acc> groups;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 9)
            throw std::invalid_argument("summarize: parse error at line " +
                                        std::to_string(line_no) + ": expected 9 fields, got " +
                                        std::to_string(fields.size()));
        const std::string& channel = fields[0];
        const double x = parse_double_field(fields[1], line_no);
        const double tau = parse_double_field(fields[2], line_no);
        for (int i = 3; i < 8; ++i) (void)parse_double_field(fields[i], line_no);
        const double np = parse_double_field(fields[8], line_no);
        Acc& acc = groups[{channel, x}];
        acc.tau.push_back(tau);
        acc.np.push_back(np);
    }
    if (groups.empty())
        throw std::invalid_argument("summarize: parse error at line " + std::to_string(line_no) +
                                    ": no data rows");

    std::vector<SummaryRow> rows;
    for (const auto& [key, acc] : groups) {
        SummaryRow row;
        row.channel = key.first;
        row.x = key.second;
        row.rows = acc.np.size();
        row.np_min = *std::min_element(acc.np.begin(), acc.np.end());
        row.np_max = *std::max_element(acc.np.begin(), acc.np.end());
        const double tmax = *std::max_element(acc.tau.begin(), acc.tau.end());
        std::size_t pos = 0, tot = 0, nq = 0;
        double qsum = 0.0;
        for (std::size_t k = 0; k < acc.np.size(); ++k) {
            if (acc.tau[k] > 0.0) {
                ++tot;
                if (acc.np[k] > 0.0) ++pos;
            }
            if (acc.tau[k] >= 0.75 * tmax) {
                ++nq;
                qsum += acc.np[k];
            }
        }
        row.frac_positive = tot == 0 ? 0.0 : static_cast<double>(pos) / tot;
        row.last_quartile_mean = nq == 0 ? 0.0 : qsum / nq;
        row.np_asymptotic = nonmark::np_asymptotic(row.x, theta);
        rows.push_back(row);
    }
    return rows;
}

void print_summary(const std::vector<SummaryRow>& rows, std::ostream& os) {
    os << "channel      x        rows   N_p_min      N_p_max      frac>0   lastq_mean   "
          "N_asymp\n";
    char buf[256];
    for (const SummaryRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%-12s %-8.4g %-6zu %-12.6g %-12.6g %-8.4f %-12.6g %-12.6g\n",
                      r.channel.c_str(), r.x, r.rows, r.np_min, r.np_max, r.frac_positive,
                      r.last_quartile_mean, r.np_asymptotic);
        os << buf;
    }
}

}  // namespace gcnm::scan
