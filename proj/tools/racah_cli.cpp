#include <CLI11.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "racah/discrete.hpp"
#include "racah/errors.hpp"
#include "racah/json.hpp"
#include "racah/racah_core.hpp"
#include "racah/racah_poly.hpp"
#include "racah/su11.hpp"

namespace {

using namespace racah;

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_rational(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

// Chains come in as comma-separated generator tokens, e.g. "12,123" or
// "C_12,C_123"; each digit is one site (the command line covers n <= 9).
Chain parse_chain(int n, const std::string& text) {
    std::vector<std::vector<int>> sets;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.rfind("C_", 0) == 0) token = token.substr(2);
        if (token.empty()) throw BadInput("empty generator token in chain '" + text + "'");
        std::vector<int> set;
        for (char ch : token) {
            if (ch < '1' || ch > '9') {
                throw BadInput("chain tokens are digit strings like 12 or C_123");
            }
            set.push_back(ch - '0');
        }
        sets.push_back(std::move(set));
    }
    return chain_from_sets(n, std::move(sets));
}

Chain initial_chain(int n) {
    std::vector<std::vector<int>> sets;
    for (int level = 1; level <= n - 2; ++level) {
        std::vector<int> set;
        for (int i = 1; i <= level + 1; ++i) set.push_back(i);
        sets.push_back(std::move(set));
    }
    return Chain{std::move(sets)};
}

Chain final_chain(int n) {
    std::vector<std::vector<int>> sets;
    for (int level = 1; level <= n - 2; ++level) {
        std::vector<int> set;
        for (int i = 2; i <= level + 2; ++i) set.push_back(i);
        sets.push_back(std::move(set));
    }
    return Chain{std::move(sets)};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw BadInput("cannot open output file " + out_path);
        f << text << "\n";
    }
}

struct Options {
    std::string realization = "bg";
    int n = 3;
    long k = -1;
    long level = -1;
    std::string nu, b, mu, beta;
    std::string from, to, compare;
    std::string format = "json";
    std::string out, config;
    std::string set;
    std::string x, alpha, beta_p, gamma, delta, kv, sv;
    long degree = 0;
};

// Config files are flat JSON objects keyed by flag name; explicit flags win.
void merge_config(CLI::App* cmd, Options& o) {
    if (o.config.empty()) return;
    std::ifstream f(o.config);
    if (!f) throw BadInput("cannot open config file " + o.config);
    Json j = Json::parse(f, nullptr, true);
    auto want = [&](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option_no_throw("--" + flag);
        return j.contains(flag) && (opt == nullptr || opt->count() == 0);
    };
    auto str = [&](const std::string& flag) { return j[flag].get<std::string>(); };
    if (want("realization")) o.realization = str("realization");
    if (want("n")) o.n = j["n"].get<int>();
    if (want("k")) o.k = j["k"].get<long>();
    if (want("N")) o.level = j["N"].get<long>();
    if (want("nu")) o.nu = str("nu");
    if (want("b")) o.b = str("b");
    if (want("mu")) o.mu = str("mu");
    if (want("beta")) o.beta = str("beta");
    if (want("from")) o.from = str("from");
    if (want("to")) o.to = str("to");
    if (want("compare")) o.compare = str("compare");
    if (want("format")) o.format = str("format");
    if (want("out")) o.out = str("out");
}

std::vector<Rational> site_params(const Options& o, Realization kind) {
    std::string list;
    switch (kind) {
        case Realization::Sphere: list = o.b; break;
        case Realization::Dunkl: list = o.mu; break;
        case Realization::BarutGirardello: list = o.nu; break;
    }
    if (list.empty()) return RepSpec::generic_params(o.n);
    return parse_rational_list(list);
}

BetaLadder ladder_from_options(const Options& o, long level) {
    if (!o.beta.empty()) return BetaLadder(parse_rational_list(o.beta), level);
    std::vector<Rational> nu =
        o.nu.empty() ? RepSpec::generic_params(o.n) : parse_rational_list(o.nu);
    return BetaLadder::from_nu(nu, level);
}

int run_verify(CLI::App* cmd, Options& o) {
    merge_config(cmd, o);
    if (o.n < 3) throw BadInput("n must be >= 3");
    std::vector<RelationReport> reports;
    Json header;
    header["realization"] = o.realization;
    header["n"] = o.n;
    if (o.realization == "discrete") {
        const long level = o.level < 0 ? 4 : o.level;
        BetaLadder ladder = ladder_from_options(o, level);
        header["level"] = level;
        header["ladder"] = ladder.to_json();
        CasimirFamily<Matrix> fam = discrete_matrix_family(ladder);
        reports = full_relation_suite(fam);
        DiscreteModel model(ladder);
        for (RelationReport& r : model.verify_eigenfunctions()) reports.push_back(std::move(r));
    } else if (o.realization == "sphere") {
        RepSpec rep(Realization::Sphere, o.n, site_params(o, Realization::Sphere));
        CasimirFamily<OperatorExpr> fam = symbolic_family(rep);
        reports = full_relation_suite(fam);
    } else if (o.realization == "dunkl") {
        RepSpec rep(Realization::Dunkl, o.n, site_params(o, Realization::Dunkl));
        const long degree = o.k < 0 ? 3 : o.k;
        header["degree"] = degree;
        CasimirFamily<Matrix> fam = dunkl_matrix_family(rep, degree);
        reports = full_relation_suite(fam);
    } else if (o.realization == "bg") {
        RepSpec rep(Realization::BarutGirardello, o.n, site_params(o, Realization::BarutGirardello));
        const long k = o.k < 0 ? 3 : o.k;
        header["k"] = k;
        CasimirFamily<Matrix> fam = bg_gauge_matrix_family(rep, k);
        reports = full_relation_suite(fam);
    } else {
        throw UnsupportedRealization("unknown realization " + o.realization);
    }
    header["reports"] = reports_to_json(reports);
    header["pass"] = all_pass(reports);
    emit(header.dump(2), o.out);
    return all_pass(reports) ? 0 : 1;
}

std::vector<Chain> graph_path(int n, const Chain& from, const Chain& to) {
    if (from == to) return {from};
    ChainGraph g = connection_graph(n);
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::size_t start = g.vertices.size(), goal = g.vertices.size();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (g.vertices[i] == from) start = i;
        if (g.vertices[i] == to) goal = i;
    }
    if (start == g.vertices.size() || goal == g.vertices.size()) {
        throw NoPath("chain is not a vertex of the connection graph");
    }
    std::vector<long> parent(g.vertices.size(), -1);
    std::deque<std::size_t> queue{start};
    std::vector<bool> seen(g.vertices.size(), false);
    seen[start] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        if (v == goal) break;
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = static_cast<long>(v);
                queue.push_back(w);
            }
        }
    }
    if (!seen[goal]) throw NoPath("no path between the chains");
    std::vector<Chain> path;
    for (long v = static_cast<long>(goal); v >= 0; v = parent[static_cast<std::size_t>(v)]) {
        path.push_back(g.vertices[static_cast<std::size_t>(v)]);
        if (static_cast<std::size_t>(v) == start) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

int run_connect(CLI::App* cmd, Options& o) {
    merge_config(cmd, o);
    if (o.n < 3) throw BadInput("n must be >= 3");
    const long level = o.level >= 0 ? o.level : (o.k >= 0 ? o.k : 3);
    BetaLadder ladder = ladder_from_options(o, level);

    std::optional<CasimirFamily<Matrix>> fam;
    if (o.realization == "discrete") {
        fam.emplace(discrete_matrix_family(ladder));
    } else if (o.realization == "bg") {
        std::vector<Rational> nu;
        for (int i = 1; i <= o.n; ++i) nu.push_back(ladder.nu(i));
        RepSpec rep(Realization::BarutGirardello, o.n, nu);
        fam.emplace(bg_gauge_matrix_family(rep, level));
    } else {
        throw UnsupportedRealization("connect supports the bg and discrete realizations");
    }

    const Chain from = o.from.empty() ? initial_chain(o.n) : parse_chain(o.n, o.from);
    const Chain to = o.to.empty() ? final_chain(o.n) : parse_chain(o.n, o.to);
    std::vector<Chain> path = graph_path(o.n, from, to);

    OverlapMatrix overlap = connection_matrix(*fam, from, to, ladder);
    if (path.size() > 1) {
        OverlapMatrix composed = compose_path(*fam, path, ladder);
        if (!(composed.r == overlap.r)) {
            throw RelationFailure("path composition disagrees with the direct overlap");
        }
    }

    Json report;
    report["realization"] = o.realization;
    report["n"] = o.n;
    report["level"] = level;
    report["ladder"] = ladder.to_json();
    Json path_names = Json::array();
    for (const Chain& c : path) path_names.push_back(chain_name(c));
    report["path"] = path_names;
    report["overlap"] = overlap.to_json();

    bool compare_ok = true;
    if (!o.compare.empty()) {
        std::vector<std::pair<std::string, Matrix>> candidates;
        if (o.compare == "racah") {
            Matrix lemma = lemma_overlap_matrix(ladder);
            candidates = {{"rows-as-degree", lemma}, {"columns-as-degree", lemma.transpose()}};
        } else if (o.compare == "tratnik") {
            candidates = {
                {"rows-as-degree", tratnik_matrix(ladder, overlap.row_labels, overlap.col_labels, false)},
                {"columns-as-degree", tratnik_matrix(ladder, overlap.row_labels, overlap.col_labels, true)}};
        } else if (o.compare == "bivariate") {
            candidates = {{"rows-as-degree",
                           bivariate_triple_sum_matrix(ladder, overlap.row_labels, overlap.col_labels, false)},
                          {"columns-as-degree",
                           bivariate_triple_sum_matrix(ladder, overlap.row_labels, overlap.col_labels, true)}};
        } else {
            throw BadInput("--compare expects racah, tratnik or bivariate");
        }
        GaugeComparison comparison = compare_up_to_gauge(overlap, candidates);
        report["comparison"] = comparison.to_json();
        compare_ok = comparison.pass;
    }
    emit(report.dump(2), o.out);
    return compare_ok ? 0 : 1;
}

int run_graph(CLI::App* cmd, Options& o) {
    merge_config(cmd, o);
    if (o.n < 3) throw BadInput("n must be >= 3");
    ChainGraph g = connection_graph(o.n);
    if (o.format == "dot") {
        emit(graph_dot(g), o.out);
        return 0;
    }
    Json report;
    report["n"] = o.n;
    Json vertices = Json::array();
    for (const Chain& c : g.vertices) vertices.push_back(chain_name(c));
    report["vertices"] = vertices;
    Json edges = Json::array();
    for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
    report["edges"] = edges;
    report["vertex_count"] = g.vertices.size();
    report["edge_count"] = g.edges.size();
    report["degrees"] = graph_degrees(g);
    report["connected"] = graph_connected(g);
    emit(report.dump(2), o.out);
    return 0;
}

int run_poly(CLI::App* kappa_cmd, CLI::App* racah_cmd, CLI::App* tratnik_cmd, Options& o) {
    if (kappa_cmd->parsed()) {
        emit(to_string(kappa(parse_rational(o.x), parse_rational(o.beta_p))), o.out);
        return 0;
    }
    if (racah_cmd->parsed()) {
        RacahParams p{parse_rational(o.alpha), parse_rational(o.beta_p), parse_rational(o.gamma),
                      parse_rational(o.delta)};
        emit(to_string(racah_univariate(o.degree, p, parse_rational(o.x))), o.out);
        return 0;
    }
    if (tratnik_cmd->parsed()) {
        const long level = o.level < 0 ? 3 : o.level;
        BetaLadder ladder = ladder_from_options(o, level);
        emit(to_string(tratnik_multivariate(parse_int_list(o.kv), parse_int_list(o.sv), ladder)),
             o.out);
        return 0;
    }
    throw BadInput("poly expects a kappa, racah or tratnik subcommand");
}

int run_matrix(CLI::App* cmd, Options& o) {
    merge_config(cmd, o);
    if (o.n < 3) throw BadInput("n must be >= 3");
    if (o.set.empty()) throw BadInput("--set is required (e.g. --set 1,2)");
    const std::vector<int> subset = validate_subset(o.n, parse_int_list(o.set));
    Json report;
    report["realization"] = o.realization;
    report["set"] = subset;
    Matrix m;
    if (o.realization == "discrete") {
        const long level = o.level < 0 ? 4 : o.level;
        BetaLadder ladder = ladder_from_options(o, level);
        DiscreteModel model(ladder);
        report["grid"] = model.grid().to_json();
        m = model.casimir(subset);
    } else if (o.realization == "bg") {
        RepSpec rep(Realization::BarutGirardello, o.n, site_params(o, Realization::BarutGirardello));
        const long k = o.k < 0 ? 3 : o.k;
        report["k"] = k;
        BgKernelSpace space(o.n, k);
        m = space.matrix_of(casimir_subset(rep, subset));
    } else if (o.realization == "dunkl") {
        RepSpec rep(Realization::Dunkl, o.n, site_params(o, Realization::Dunkl));
        const long degree = o.k < 0 ? 3 : o.k;
        report["degree"] = degree;
        m = matrix_on_basis(casimir_subset(rep, subset), BasisSpec::degree_at_most(o.n, degree));
    } else {
        throw UnsupportedRealization("matrix supports bg, dunkl and discrete realizations");
    }
    if (o.format == "csv") {
        std::ostringstream csv;
        for (long r = 0; r < m.rows(); ++r) {
            for (long c = 0; c < m.cols(); ++c) {
                if (c) csv << ",";
                csv << to_string(m.at(r, c));
            }
            if (r + 1 < m.rows()) csv << "\n";
        }
        emit(csv.str(), o.out);
        return 0;
    }
    report["matrix"] = m.to_json();
    emit(report.dump(2), o.out);
    return 0;
}

int run_discrete(CLI::App* cmd, Options& o) {
    merge_config(cmd, o);
    if (o.n < 3) throw BadInput("n must be >= 3");
    const long level = o.level < 0 ? 4 : o.level;
    BetaLadder ladder = ladder_from_options(o, level);
    DiscreteModel model(ladder);
    CasimirFamily<Matrix> fam = discrete_matrix_family(ladder);
    std::vector<RelationReport> relations = full_relation_suite(fam);
    std::vector<RelationReport> eigen = model.verify_eigenfunctions();
    Json report;
    report["n"] = o.n;
    report["level"] = level;
    report["ladder"] = ladder.to_json();
    report["grid"] = model.grid().to_json();
    report["relations"] = reports_to_json(relations);
    report["eigenfunctions"] = reports_to_json(eigen);
    const bool ok = all_pass(relations) && all_pass(eigen);
    report["pass"] = ok;
    emit(report.dump(2), o.out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intermediate-casimir algebra toolkit"};
    app.require_subcommand(1);
    Options o;

    CLI::App* verify = app.add_subcommand("verify", "run the full relation suite");
    verify->add_option("--realization", o.realization, "sphere | dunkl | bg | discrete");
    verify->add_option("--n", o.n, "number of sites");
    verify->add_option("--k", o.k, "bg gauge degree / dunkl basis degree");
    verify->add_option("--N", o.level, "discrete level");
    verify->add_option("--nu", o.nu, "bg weights, comma separated rationals");
    verify->add_option("--b", o.b, "sphere parameters");
    verify->add_option("--mu", o.mu, "dunkl parameters");
    verify->add_option("--beta", o.beta, "discrete beta ladder");
    verify->add_option("--format", o.format, "json");
    verify->add_option("--out", o.out, "output path (default stdout)");
    verify->add_option("--config", o.config, "JSON config file; flags win");

    CLI::App* connect = app.add_subcommand("connect", "overlap between labeling eigenbases");
    connect->add_option("--realization", o.realization, "bg | discrete");
    connect->add_option("--n", o.n, "number of sites");
    connect->add_option("--k", o.k, "bg gauge degree (doubles as the level)");
    connect->add_option("--N", o.level, "representation level");
    connect->add_option("--nu", o.nu, "site weights");
    connect->add_option("--beta", o.beta, "beta ladder");
    connect->add_option("--from", o.from, "source chain, e.g. 12,123");
    connect->add_option("--to", o.to, "target chain, e.g. 23,234");
    connect->add_option("--compare", o.compare, "racah | tratnik | bivariate");
    connect->add_option("--format", o.format, "json");
    connect->add_option("--out", o.out, "output path");
    connect->add_option("--config", o.config, "JSON config file; flags win");

    CLI::App* graph = app.add_subcommand("graph", "connection graph of labeling chains");
    graph->add_option("--n", o.n, "number of sites");
    graph->add_option("--format", o.format, "json | dot");
    graph->add_option("--out", o.out, "output path");
    graph->add_option("--config", o.config, "JSON config file; flags win");

    CLI::App* poly = app.add_subcommand("poly", "evaluate polynomial building blocks");
    poly->require_subcommand(1);
    CLI::App* poly_kappa = poly->add_subcommand("kappa", "kappa(x, beta)");
    poly_kappa->add_option("--x", o.x, "argument")->required();
    poly_kappa->add_option("--beta", o.beta_p, "beta")->required();
    poly_kappa->add_option("--out", o.out, "output path");
    CLI::App* poly_racah = poly->add_subcommand("racah", "univariate value");
    poly_racah->add_option("--n", o.degree, "degree")->required();
    poly_racah->add_option("--alpha", o.alpha, "alpha")->required();
    poly_racah->add_option("--beta", o.beta_p, "beta")->required();
    poly_racah->add_option("--gamma", o.gamma, "gamma")->required();
    poly_racah->add_option("--delta", o.delta, "delta")->required();
    poly_racah->add_option("--x", o.x, "argument")->required();
    poly_racah->add_option("--out", o.out, "output path");
    CLI::App* poly_tratnik = poly->add_subcommand("tratnik", "multivariate value");
    poly_tratnik->add_option("--n", o.n, "number of sites");
    poly_tratnik->add_option("--N", o.level, "level");
    poly_tratnik->add_option("--nu", o.nu, "site weights");
    poly_tratnik->add_option("--beta", o.beta, "beta ladder");
    poly_tratnik->add_option("--kv", o.kv, "degree multi-index, comma separated");
    poly_tratnik->add_option("--sv", o.sv, "argument multi-index, comma separated");
    poly_tratnik->add_option("--out", o.out, "output path");

    CLI::App* matrix = app.add_subcommand("matrix", "one generator as an exact matrix");
    matrix->add_option("--realization", o.realization, "bg | dunkl | discrete");
    matrix->add_option("--n", o.n, "number of sites");
    matrix->add_option("--k", o.k, "bg gauge degree / dunkl basis degree");
    matrix->add_option("--N", o.level, "discrete level");
    matrix->add_option("--nu", o.nu, "bg weights");
    matrix->add_option("--mu", o.mu, "dunkl parameters");
    matrix->add_option("--beta", o.beta, "discrete beta ladder");
    matrix->add_option("--set", o.set, "subset, e.g. 1,2");
    matrix->add_option("--format", o.format, "json | csv");
    matrix->add_option("--out", o.out, "output path");
    matrix->add_option("--config", o.config, "JSON config file; flags win");

    CLI::App* discrete = app.add_subcommand("discrete", "grid model relations and eigenfunctions");
    discrete->add_option("--n", o.n, "number of sites");
    discrete->add_option("--N", o.level, "level");
    discrete->add_option("--nu", o.nu, "site weights");
    discrete->add_option("--beta", o.beta, "beta ladder");
    discrete->add_option("--out", o.out, "output path");
    discrete->add_option("--config", o.config, "JSON config file; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(verify, o);
        if (connect->parsed()) return run_connect(connect, o);
        if (graph->parsed()) return run_graph(graph, o);
        if (poly->parsed()) return run_poly(poly_kappa, poly_racah, poly_tratnik, o);
        if (matrix->parsed()) return run_matrix(matrix, o);
        if (discrete->parsed()) return run_discrete(discrete, o);
    } catch (const RelationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
