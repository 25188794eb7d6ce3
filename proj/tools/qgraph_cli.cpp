// Command-line front end: scenario runs, matching listings, Permanent/Hafnian
// of explicit matrices, and count-rate tables.

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qgraph/matrix_functions.hpp"
#include "qgraph/rates.hpp"
#include "qgraph/scenario.hpp"

namespace {

using namespace qgraph;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentSpec load_spec(const std::string& scenario, const std::string& spec_file) {
    if (!scenario.empty() && !spec_file.empty())
        throw std::runtime_error("give either --scenario or --spec, not both");
    if (!scenario.empty()) return scenario_spec(scenario);
    if (!spec_file.empty()) return parse_spec(read_file(spec_file));
    throw std::runtime_error("need --scenario NAME or --spec FILE");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json-lines") return OutputFormat::JsonLines;
    if (name == "csv") return OutputFormat::Csv;
    throw std::runtime_error("unknown format '" + name + "'");
}

struct Sweep {
    double start = 0, end = 0;
    int steps = 0;
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> s.start >> c1 >> s.end >> c2 >> s.steps) || c1 != ':' || c2 != ':' || s.steps < 1)
        throw std::runtime_error("--phase-sweep wants START:END:STEPS");
    return s;
}

// n on the first line, then n rows of 2n reals (re im per entry).
Eigen::MatrixXcd read_matrix(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 0) throw std::runtime_error("matrix input: bad dimension");
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re, im;
            if (!(in >> re >> im)) throw std::runtime_error("matrix input: truncated");
            m(i, j) = Complex{re, im};
        }
    return m;
}

Eigen::MatrixXcd read_matrix_arg(const std::string& file) {
    if (file.empty() || file == "-") return read_matrix(std::cin);
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open '" + file + "'");
    return read_matrix(in);
}

int cmd_run(const ExperimentSpec& spec, const RunOptions& base, OutputFormat format,
            const std::string& sweep_text, int jobs) {
    if (sweep_text.empty()) {
        std::cout << emit(run_spec(spec, base), format);
        return 0;
    }
    const Sweep sweep = parse_sweep(sweep_text);
    std::vector<double> phis(sweep.steps);
    for (int i = 0; i < sweep.steps; ++i)
        phis[i] = sweep.steps == 1
                      ? sweep.start
                      : sweep.start + (sweep.end - sweep.start) * i / (sweep.steps - 1);

    std::vector<RunReport> reports(phis.size());
    jobs = std::max(1, jobs);
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < phis.size(); i = next.fetch_add(1)) {
                RunOptions opts = base;
                opts.phase = phis[i];
                reports[i] = run_spec(spec, opts);
            }
        });
    for (auto& w : workers) w.join();

    // Deterministic merge in sweep order.
    std::cout << "phi,probability";
    const bool with_fock = reports[0].fock_probability.has_value();
    if (with_fock) std::cout << ",fock_probability";
    std::cout << "\n" << std::setprecision(12);
    for (std::size_t i = 0; i < phis.size(); ++i) {
        std::cout << phis[i] << "," << reports[i].state.norm_squared();
        if (with_fock) std::cout << "," << reports[i].fock_probability.value_or(0.0);
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph calculus for linear-optical experiments"};
    app.require_subcommand(1);

    std::string scenario, spec_file, format_name = "table", sweep_text, matrix_file;
    int order = 0, jobs = 1;
    double loss = -1.0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "registered scenario name");
        cmd->add_option("--spec", spec_file, "experiment file");
        cmd->add_option("--format", format_name, "table | json-lines | csv");
        cmd->add_option("--order", order, "Fock expansion order override");
        cmd->add_option("--loss", loss, "uniform per-path survival probability");
        cmd->add_option("--phase-sweep", sweep_text, "START:END:STEPS for the first phase shifter");
        cmd->add_option("--jobs", jobs, "parallel sweep workers");
        cmd->add_option("--seed", seed, "seed recorded in report metadata");
    };

    auto* run = app.add_subcommand("run", "run a scenario or experiment file");
    add_common(run);

    auto* matchings_cmd = app.add_subcommand("matchings", "list perfect matchings");
    add_common(matchings_cmd);

    auto* perm = app.add_subcommand("perm", "Permanent of a matrix (n, then rows of re im)");
    perm->add_option("--matrix", matrix_file, "matrix file ('-' = stdin)");

    auto* haf = app.add_subcommand("haf", "Hafnian of a symmetric matrix");
    haf->add_option("--matrix", matrix_file, "matrix file ('-' = stdin)");

    int rm = 13, rn = 3;
    double rp = 0.01;
    auto* rates = app.add_subcommand("rates", "count-rate comparison for (m, n, p)");
    rates->add_option("--m", rm, "modes per side");
    rates->add_option("--n", rn, "photon pairs");
    rates->add_option("--p", rp, "pair probability per crystal");
    rates->add_option("--format", format_name, "table | csv");

    auto* scenarios = app.add_subcommand("scenarios", "scenario registry");
    auto* list = scenarios->add_subcommand("list", "list registered scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& name : qgraph::scenario_names()) std::cout << name << "\n";
            return 0;
        }
        if (*run || *matchings_cmd) {
            const auto spec = load_spec(scenario, spec_file);
            qgraph::RunOptions opts;
            if (order > 0) opts.order = order;
            if (loss >= 0.0) opts.loss = loss;
            opts.seed = seed;
            if (*run) return cmd_run(spec, opts, parse_format(format_name), sweep_text, jobs);

            const auto g = qgraph::build_graph(spec, opts);
            const auto terms =
                qgraph::enumerate_matchings(g, spec.detect_kind == qgraph::DetectKind::Counts
                                                   ? spec.pattern
                                                   : qgraph::DetectionPattern::one_per(spec.paths));
            std::cout << std::setprecision(12);
            for (const auto& t : terms) {
                std::cout << qgraph::assignment_str(t.assignment) << "  (" << t.weight.real()
                          << ", " << t.weight.imag() << ")  [";
                for (std::size_t i = 0; i < t.edges.size(); ++i)
                    std::cout << (i ? " " : "") << t.edges[i].str();
                std::cout << "]\n";
            }
            std::cout << terms.size() << " matchings\n";
            return 0;
        }
        if (*perm || *haf) {
            const auto m = read_matrix_arg(matrix_file);
            const qgraph::Complex v =
                *perm ? qgraph::permanent_ryser(m) : qgraph::hafnian(m);
            std::cout << std::setprecision(12) << v.real() << " " << v.imag() << "\n";
            return 0;
        }
        if (*rates) {
            const qgraph::RateQuery q{rm, rn, rp};
            const double aa = qgraph::rate_aa(q), ss = qgraph::rate_scattershot(q),
                         pi = qgraph::rate_path_identity(q), ratio = qgraph::ratio_pi_ss(q);
            std::cout << std::setprecision(12);
            if (format_name == "csv") {
                std::cout << "m,n,p,rate_aa,rate_scattershot,rate_path_identity,ratio_pi_ss\n"
                          << rm << "," << rn << "," << rp << "," << aa << "," << ss << "," << pi
                          << "," << ratio << "\n";
            } else {
                std::cout << "m=" << rm << " n=" << rn << " p=" << rp << "\n"
                          << "  rate_aa            " << aa << "\n"
                          << "  rate_scattershot   " << ss << "\n"
                          << "  rate_path_identity " << pi << "\n"
                          << "  ratio_pi_ss        " << ratio << "\n";
            }
            return 0;
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
