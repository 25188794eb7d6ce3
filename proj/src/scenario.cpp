#include "qgraph/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qgraph {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

double parse_real(const std::string& tok) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    return v;
}

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i"; }

struct Parser {
    ExperimentSpec spec;
    std::vector<std::string> diagnostics;
    int line_no = 0;
    bool seen_detect = false;

    void fail(const std::string& msg) {
        diagnostics.push_back("line " + std::to_string(line_no) + ": " + msg);
    }

    bool known_path(const std::string& name) {
        return std::any_of(spec.paths.begin(), spec.paths.end(),
                           [&](const PathId& p) { return p.name == name; });
    }

    PathId need_path(const std::string& name) {
        if (!known_path(name)) fail("undeclared path '" + name + "'");
        return PathId{name};
    }

    ModeLabel need_label(const std::string& tok) {
        try {
            return ModeLabel::parse(tok);
        } catch (const std::exception&) {
            fail("bad mode label '" + tok + "'");
            return ModeLabel::number(0);
        }
    }

    double need_real(const std::string& tok) {
        try {
            return parse_real(tok);
        } catch (const std::exception&) {
            fail("bad number '" + tok + "'");
            return 0.0;
        }
    }

    void handle_crystal(const std::vector<std::string>& t) {
        if (t.size() < 7) {
            fail("crystal needs: path1 label1 path2 label2 (g phase | amp re im) [flag]");
            return;
        }
        CrystalLine c;
        c.path1 = need_path(t[1]);
        c.label1 = need_label(t[2]);
        c.path2 = need_path(t[3]);
        c.label2 = need_label(t[4]);
        std::size_t rest;
        if (t[5] == "amp") {
            if (t.size() < 8) {
                fail("crystal amp needs re and im");
                return;
            }
            c.amp = Complex{need_real(t[6]), need_real(t[7])};
            rest = 8;
        } else {
            c.amp = std::polar(need_real(t[5]), need_real(t[6]));
            rest = 7;
        }
        if (rest < t.size()) {
            if (t[rest] == "flag")
                c.flagged = true;
            else
                fail("unexpected token '" + t[rest] + "'");
        }
        spec.steps.emplace_back(c);
    }

    void handle_element(const std::vector<std::string>& t) {
        if (t.size() < 2) {
            fail("element needs a kind");
            return;
        }
        const std::string& kind = t[1];
        if (kind == "phase") {
            if (t.size() != 4) return fail("element phase needs: path value");
            spec.steps.emplace_back(PhaseShifter{need_path(t[2]), need_real(t[3])});
        } else if (kind == "bs") {
            if (t.size() != 4 && !(t.size() == 5 && t[4] == "flip"))
                return fail("element bs needs: pathV pathW [flip]");
            spec.steps.emplace_back(BeamSplitter{need_path(t[2]), need_path(t[3]), t.size() == 5});
        } else if (kind == "pbs") {
            if (t.size() != 4) return fail("element pbs needs: pathV pathW");
            spec.steps.emplace_back(PolarizingBS{need_path(t[2]), need_path(t[3])});
        } else if (kind == "modeshift") {
            if (t.size() < 4) return fail("element modeshift needs: path L=L ...");
            ModeShifter ms;
            ms.path = need_path(t[2]);
            for (std::size_t i = 3; i < t.size(); ++i) {
                auto eq = t[i].find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == t[i].size())
                    return fail("bad label mapping '" + t[i] + "'");
                ms.label_map[need_label(t[i].substr(0, eq))] = need_label(t[i].substr(eq + 1));
            }
            std::set<ModeLabel> images;
            for (const auto& [from, to] : ms.label_map) images.insert(to);
            if (images.size() != ms.label_map.size()) return fail("label map is not a bijection");
            spec.steps.emplace_back(ms);
        } else if (kind == "spp") {
            if (t.size() != 3) return fail("element spp needs: path");
            spec.steps.emplace_back(SPPReflection{need_path(t[2])});
        } else if (kind == "sorter") {
            if (t.size() != 4) return fail("element sorter needs: pathV pathW");
            spec.steps.emplace_back(OAMSorter{need_path(t[2]), need_path(t[3])});
        } else if (kind == "project") {
            if (t.size() < 3) return fail("element project needs: path [labels...]");
            Projection pr;
            pr.path = need_path(t[2]);
            for (std::size_t i = 3; i < t.size(); ++i) pr.accepted.insert(need_label(t[i]));
            spec.steps.emplace_back(pr);
        } else {
            fail("unknown element kind '" + kind + "'");
        }
    }

    void handle_detect(const std::vector<std::string>& t) {
        seen_detect = true;
        if (t.size() == 3 && (t[1] == "subsets" || t[1] == "total")) {
            spec.detect_kind = t[1] == "subsets" ? DetectKind::Subsets : DetectKind::Total;
            spec.detect_k = int(need_real(t[2]));
            if (spec.detect_k <= 0) fail("detect count must be positive");
            return;
        }
        if (t.size() < 3 || t.size() % 2 == 0) return fail("detect needs: (path count)+ | subsets k | total k");
        spec.detect_kind = DetectKind::Counts;
        for (std::size_t i = 1; i + 1 < t.size(); i += 2)
            spec.pattern.counts[need_path(t[i])] = int(need_real(t[i + 1]));
        if (spec.pattern.total() % 2 != 0) fail("detection total is odd");
    }

    void handle_line(const std::vector<std::string>& t) {
        const std::string& key = t[0];
        if (key == "name") {
            if (t.size() != 2) return fail("name needs one token");
            spec.name = t[1];
        } else if (key == "path") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (known_path(t[i]))
                    fail("duplicate path '" + t[i] + "'");
                else
                    spec.paths.push_back(PathId{t[i]});
            }
        } else if (key == "crystal") {
            handle_crystal(t);
        } else if (key == "element") {
            handle_element(t);
        } else if (key == "detect") {
            handle_detect(t);
        } else if (key == "order") {
            if (t.size() != 2) return fail("order needs one integer");
            spec.expansion_order = int(need_real(t[1]));
        } else if (key == "loss") {
            if (t.size() != 3) return fail("loss needs: (path|all) eta");
            double eta = need_real(t[2]);
            if (t[1] == "all")
                for (const auto& p : spec.paths) spec.loss[p] = eta;
            else
                spec.loss[need_path(t[1])] = eta;
        } else if (key == "output") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (t[i] != "state" && t[i] != "matchings" && t[i] != "histogram" && t[i] != "norm")
                    fail("unknown output '" + t[i] + "'");
                else
                    spec.outputs.insert(t[i]);
            }
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
};

}  // namespace

ExperimentSpec parse_spec(const std::string& text) {
    Parser p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++p.line_no;
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        p.handle_line(toks);
    }
    if (!p.seen_detect) p.diagnostics.push_back("missing detect directive");
    if (p.spec.detect_kind == DetectKind::Counts && p.spec.expansion_order > 0 &&
        p.spec.expansion_order * 2 < p.spec.pattern.total())
        p.diagnostics.push_back("expansion order " + std::to_string(p.spec.expansion_order) +
                                " too small for " + std::to_string(p.spec.pattern.total()) +
                                " detected photons");
    if (!p.diagnostics.empty()) {
        std::string msg = "experiment spec invalid:";
        for (const auto& d : p.diagnostics) msg += "\n  " + d;
        throw std::runtime_error(msg);
    }
    if (p.spec.outputs.empty()) p.spec.outputs = {"state", "matchings"};
    return p.spec;
}

std::string emit_spec(const ExperimentSpec& spec) {
    std::ostringstream out;
    if (!spec.name.empty()) out << "name " << spec.name << "\n";
    out << "path";
    for (const auto& p : spec.paths) out << " " << p.name;
    out << "\n";
    for (const auto& step : spec.steps) {
        if (const auto* c = std::get_if<CrystalLine>(&step)) {
            out << "crystal " << c->path1.name << " " << c->label1.str() << " " << c->path2.name
                << " " << c->label2.str() << " amp " << fmt(c->amp.real()) << " "
                << fmt(c->amp.imag());
            if (c->flagged) out << " flag";
            out << "\n";
            continue;
        }
        const auto& op = std::get<ElementOp>(step);
        out << "element ";
        std::visit(
            [&out](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, PhaseShifter>) {
                    out << "phase " << e.path.name << " " << fmt(e.phi);
                } else if constexpr (std::is_same_v<T, BeamSplitter>) {
                    out << "bs " << e.path_v.name << " " << e.path_w.name
                        << (e.oam_flip ? " flip" : "");
                } else if constexpr (std::is_same_v<T, PolarizingBS>) {
                    out << "pbs " << e.path_v.name << " " << e.path_w.name;
                } else if constexpr (std::is_same_v<T, ModeShifter>) {
                    out << "modeshift " << e.path.name;
                    for (const auto& [from, to] : e.label_map)
                        out << " " << from.str() << "=" << to.str();
                } else if constexpr (std::is_same_v<T, SPPReflection>) {
                    out << "spp " << e.path.name;
                } else if constexpr (std::is_same_v<T, OAMSorter>) {
                    out << "sorter " << e.path_v.name << " " << e.path_w.name;
                } else {
                    out << "project " << e.path.name;
                    for (const auto& l : e.accepted) out << " " << l.str();
                }
            },
            op);
        out << "\n";
    }
    switch (spec.detect_kind) {
        case DetectKind::Counts: {
            out << "detect";
            for (const auto& [p, n] : spec.pattern.counts) out << " " << p.name << " " << n;
            out << "\n";
            break;
        }
        case DetectKind::Subsets:
            out << "detect subsets " << spec.detect_k << "\n";
            break;
        case DetectKind::Total:
            out << "detect total " << spec.detect_k << "\n";
            break;
    }
    if (spec.expansion_order > 0) out << "order " << spec.expansion_order << "\n";
    for (const auto& [p, eta] : spec.loss) out << "loss " << p.name << " " << fmt(eta) << "\n";
    if (!spec.outputs.empty()) {
        out << "output";
        for (const auto& o : spec.outputs) out << " " << o;
        out << "\n";
    }
    return out.str();
}

namespace {

std::vector<Step> steps_with_options(const ExperimentSpec& spec, const RunOptions& opts) {
    std::vector<Step> steps = spec.steps;
    if (opts.phase) {
        for (auto& step : steps) {
            if (auto* op = std::get_if<ElementOp>(&step)) {
                if (auto* ps = std::get_if<PhaseShifter>(op)) {
                    ps->phi = *opts.phase;
                    break;
                }
            }
        }
    }
    return steps;
}

}  // namespace

ExperimentGraph build_graph(const ExperimentSpec& spec, const RunOptions& opts) {
    ExperimentGraph g;
    for (const auto& p : spec.paths) g = add_path(g, p);
    int crystal_no = 0;
    for (const auto& step : steps_with_options(spec, opts)) {
        if (const auto* c = std::get_if<CrystalLine>(&step)) {
            ++crystal_no;
            g = add_crystal(g, c->path1, c->label1, c->path2, c->label2, c->amp,
                            "crystal" + std::to_string(crystal_no));
        } else {
            g = apply_element(g, std::get<ElementOp>(step));
        }
    }
    return g;
}

std::vector<CrystalSpec> effective_crystals(const ExperimentSpec& spec, const RunOptions& opts) {
    const auto steps = steps_with_options(spec, opts);
    std::vector<CrystalSpec> crystals;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (const auto* c = std::get_if<CrystalLine>(&steps[i])) {
            CrystalSpec cs;
            cs.path1 = c->path1;
            cs.label1 = c->label1;
            cs.path2 = c->path2;
            cs.label2 = c->label2;
            cs.g = std::abs(c->amp);
            cs.phase = std::arg(c->amp);
            crystals.push_back(cs);
            positions.push_back(i);
        } else if (!std::holds_alternative<PhaseShifter>(std::get<ElementOp>(steps[i]))) {
            throw std::runtime_error("Fock expansion supports phase shifters only");
        }
    }
    // A shifter multiplies the edges existing at its position, so it adds its
    // phase to every crystal emitted earlier on that path.
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto* op = std::get_if<ElementOp>(&steps[i]);
        if (!op) continue;
        const auto& ps = std::get<PhaseShifter>(*op);
        for (std::size_t k = 0; k < crystals.size(); ++k) {
            if (positions[k] > i) continue;
            if (crystals[k].path1 == ps.path) crystals[k].phase += ps.phi;
            if (crystals[k].path2 == ps.path) crystals[k].phase += ps.phi;
        }
    }
    return crystals;
}

namespace {

// Registry of bundled setups. Amplitudes marked `flag` are taken verbatim
// from the reference adjacency matrix because their shifter composition is
// ambiguous; the others compose g and summed shifter phases.
const std::vector<std::pair<std::string, std::string>>& registry() {
    static const std::vector<std::pair<std::string, std::string>> reg = {
        {"ghz4_path_identity", R"(name ghz4_path_identity
path a b c d
crystal a H b H 0.1 0
crystal c H d H 0.1 0
crystal a V c V 0.1 0
crystal b V d V 0.1 0
detect a 1 b 1 c 1 d 1
order 2
output state matchings
)"},
        {"frustrated_network", R"(name frustrated_network
path a b c d
crystal a H b H 0.1 0
element phase a 1.5707963267948966
crystal a H c H 0.1 0
crystal c H d H 0.1 0
crystal b H d H 0.1 0
detect a 1 b 1 c 1 d 1
order 2
output state matchings norm
)"},
        {"permanent_network", R"(name permanent_network
path a c e b d f
crystal a H b H 0.033 -1.2723
crystal a H d H amp 0.0277 -0.0055 flag
crystal a H f H amp 0.0114 0.0218 flag
crystal c H d H amp -0.0367 -0.0074 flag
crystal c H f H amp 0.0066 0.0125 flag
crystal c H b H amp -0.1110 0.0133 flag
crystal e H f H amp 0.0019 -0.0328 flag
crystal e H b H amp -0.0024 -0.0382 flag
crystal e H d H 0.102 1.91825
detect subsets 4
order 2
output histogram matchings
)"},
        {"hafnian_network", R"(name hafnian_network
path a c e b d f
crystal a H b H 0.033 -1.2723
crystal a H c H amp 0.0277 -0.0055 flag
crystal a H e H amp 0.0114 0.0218 flag
crystal a H f H amp -0.1110 0.0133 flag
crystal c H d H amp -0.0367 -0.0074 flag
crystal c H f H amp -0.0024 -0.0382 flag
crystal e H b H amp -0.0347 0.0959 flag
crystal e H d H amp 0.0019 -0.0328 flag
crystal d H f H amp 0.0066 0.0125 flag
detect subsets 4
order 2
output histogram matchings
)"},
        {"hom", R"(name hom
path a b
crystal a H b H 0.1 0
element bs a b
detect total 2
output state matchings
)"},
        {"pbs_demo", R"(name pbs_demo
path a b
crystal a H b V 0.1 0
element pbs a b
detect total 2
output state matchings
)"},
        {"multiport_ghz3", R"(name multiport_ghz3
path a b c d
crystal a 0 b 0 0.1 0
crystal a -1 b 1 0.1 0
crystal a 1 b -1 0.1 0
crystal c 0 d 0 0.1 0
crystal c -1 d 1 0.1 0
crystal c 1 d -1 0.1 0
element spp a
element sorter b c
element bs a b flip
element project a 0 -1
detect a 1 b 1 c 1 d 1
output state matchings
)"},
        {"multiport_ghz4_maverick", R"(name multiport_ghz4_maverick
path a b c d e f
crystal a 0 b 0 0.1 0
crystal a -1 b 1 0.1 0
crystal a 1 b -1 0.1 0
crystal c 0 d 0 0.1 0
crystal c -1 d 1 0.1 0
crystal c 1 d -1 0.1 0
crystal e 0 f 0 0.1 0
crystal e -1 f 1 0.1 0
crystal e 1 f -1 0.1 0
element spp a
element spp f
element sorter b c
element sorter d e
element bs a b flip
element bs e f flip
element project a 0 -1
element project f 0 -1
detect a 1 b 1 c 1 d 1 e 1 f 1
output state matchings
)"},
        {"entanglement_swapping", R"(name entanglement_swapping
path a b c d
crystal a H b V 0.1 0
crystal a V b H 0.1 3.141592653589793
crystal c H d V 0.1 0
crystal c V d H 0.1 3.141592653589793
element bs b c
detect a 1 b 1 c 1 d 1
output state matchings
)"},
    };
    return reg;
}

std::vector<DetectionPattern> detection_patterns(const ExperimentSpec& spec) {
    std::vector<DetectionPattern> patterns;
    switch (spec.detect_kind) {
        case DetectKind::Counts:
            patterns.push_back(spec.pattern);
            break;
        case DetectKind::Subsets: {
            const int m = int(spec.paths.size());
            const int k = spec.detect_k;
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                std::vector<PathId> subset;
                for (int i : idx) subset.push_back(spec.paths[i]);
                patterns.push_back(DetectionPattern::one_per(subset));
                int i = k - 1;
                while (i >= 0 && idx[i] == m - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
            break;
        }
        case DetectKind::Total: {
            // All compositions of detect_k photons over the declared paths.
            std::vector<int> counts(spec.paths.size(), 0);
            std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
                if (i + 1 == counts.size()) {
                    counts[i] = left;
                    DetectionPattern p;
                    for (std::size_t j = 0; j < counts.size(); ++j)
                        if (counts[j] > 0) p.counts[spec.paths[j]] = counts[j];
                    patterns.push_back(p);
                    return;
                }
                for (int c = 0; c <= left; ++c) {
                    counts[i] = c;
                    rec(i + 1, left - c);
                }
            };
            if (!spec.paths.empty()) rec(0, spec.detect_k);
            break;
        }
    }
    return patterns;
}

std::string subset_name(const DetectionPattern& p) {
    bool single = std::all_of(p.counts.begin(), p.counts.end(),
                              [](const auto& kv) { return kv.first.name.size() == 1; });
    std::string s;
    for (const auto& [path, n] : p.counts) {
        for (int i = 0; i < n; ++i) {
            if (!s.empty() && !single) s += "+";
            s += path.name;
        }
    }
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : registry()) names.push_back(name);
    return names;
}

ExperimentSpec scenario_spec(const std::string& name) {
    for (const auto& [n, text] : registry())
        if (n == name) return parse_spec(text);
    throw std::runtime_error("unknown scenario '" + name + "'");
}

RunReport run_spec(const ExperimentSpec& spec, const RunOptions& opts) {
    RunReport report;
    report.scenario = spec.name;

    std::map<PathId, double> loss = spec.loss;
    if (opts.loss)
        for (const auto& p : spec.paths) loss[p] = *opts.loss;
    const int order = opts.order ? *opts.order : spec.expansion_order;

    report.metadata = {
        {"bs_convention", "transmission 1/sqrt(2), reflection i/sqrt(2)"},
        {"projection_amplitude", "dropped (global factor)"},
        {"prune_threshold", fmt(kPruneThreshold)},
        {"cancel_threshold", fmt(1e-12)},
        {"seed", std::to_string(opts.seed)},
    };
    if (order > 0) report.metadata.emplace_back("expansion_order", std::to_string(order));

    const ExperimentGraph g = build_graph(spec, opts);
    const auto patterns = detection_patterns(spec);

    for (const auto& pattern : patterns) {
        const auto terms = enumerate_matchings(g, pattern);
        report.matchings_total += int(terms.size());

        std::map<Assignment, std::pair<Complex, int>> groups;
        for (const auto& t : terms) {
            auto& slot = groups[t.assignment];
            slot.first += t.weight;
            slot.second += 1;
        }
        for (const auto& [assignment, slot] : groups) {
            if (std::abs(slot.first) < 1e-12)
                report.matchings_cancelled += slot.second;
            else
                report.state.terms.emplace_back(assignment, slot.first);
        }
    }
    std::sort(report.state.terms.begin(), report.state.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    if (spec.detect_kind == DetectKind::Subsets || spec.outputs.count("histogram")) {
        double total = 0.0;
        std::vector<std::pair<std::string, double>> rows;
        for (const auto& pattern : patterns) {
            const double p = std::norm(matching_sum(g, pattern));
            rows.emplace_back(subset_name(pattern), p);
            total += p;
        }
        if (total > 0)
            for (auto& [name, p] : rows) p /= total;
        report.histogram = std::move(rows);
    }

    if (order > 0) {
        try {
            const auto crystals = effective_crystals(spec, opts);
            const FockLedger ledger = expand_network(crystals, order);
            report.ledger_norm = ledger.norm_squared();
            if (spec.detect_kind == DetectKind::Counts)
                report.fock_probability = pattern_probability(ledger, spec.pattern, loss);
        } catch (const std::runtime_error&) {
            // Graph has non-phase elements; the Fock view does not apply.
        }
    }
    return report;
}

RunReport run_scenario(const std::string& name, const RunOptions& opts) {
    return run_spec(scenario_spec(name), opts);
}

std::string emit(const RunReport& report, OutputFormat format) {
    std::ostringstream out;
    out << std::setprecision(12);
    switch (format) {
        case OutputFormat::Table: {
            out << "scenario: " << report.scenario << "\n";
            for (const auto& [k, v] : report.metadata) out << "  " << k << ": " << v << "\n";
            out << "matchings: " << report.matchings_total << " (" << report.matchings_cancelled
                << " cancelled)\n";
            if (!report.state.terms.empty()) {
                out << "state:\n";
                for (const auto& [assignment, amp] : report.state.terms)
                    out << "  " << assignment_str(assignment) << "  " << fmt(amp) << "\n";
            }
            if (!report.histogram.empty()) {
                out << "histogram:\n";
                for (const auto& [pattern, p] : report.histogram)
                    out << "  " << pattern << "  " << fmt(p) << "\n";
            }
            if (report.fock_probability)
                out << "fock_probability: " << fmt(*report.fock_probability) << "\n";
            if (report.ledger_norm) out << "ledger_norm: " << fmt(*report.ledger_norm) << "\n";
            break;
        }
        case OutputFormat::JsonLines: {
            nlohmann::json meta;
            meta["type"] = "meta";
            meta["scenario"] = report.scenario;
            for (const auto& [k, v] : report.metadata) meta[k] = v;
            meta["matchings"] = report.matchings_total;
            meta["cancelled"] = report.matchings_cancelled;
            if (report.fock_probability) meta["fock_probability"] = *report.fock_probability;
            if (report.ledger_norm) meta["ledger_norm"] = *report.ledger_norm;
            out << meta.dump() << "\n";
            for (const auto& [assignment, amp] : report.state.terms) {
                nlohmann::json row;
                row["type"] = "state";
                row["assignment"] = assignment_str(assignment);
                row["re"] = amp.real();
                row["im"] = amp.imag();
                out << row.dump() << "\n";
            }
            for (const auto& [pattern, p] : report.histogram) {
                nlohmann::json row;
                row["type"] = "histogram";
                row["pattern"] = pattern;
                row["probability"] = p;
                out << row.dump() << "\n";
            }
            break;
        }
        case OutputFormat::Csv: {
            if (!report.histogram.empty()) {
                out << "pattern,probability\n";
                for (const auto& [pattern, p] : report.histogram)
                    out << pattern << "," << fmt(p) << "\n";
            } else {
                out << "assignment,re,im\n";
                for (const auto& [assignment, amp] : report.state.terms)
                    out << assignment_str(assignment) << "," << fmt(amp.real()) << ","
                        << fmt(amp.imag()) << "\n";
            }
            break;
        }
    }
    return out.str();
}

}  // namespace qgraph
