#include "racah/racah_core.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "racah/errors.hpp"

namespace racah {

Json reports_to_json(const std::vector<RelationReport>& reports) {
    Json arr = Json::array();
    for (const RelationReport& r : reports) {
        Json j;
        j["id"] = r.id;
        j["args"] = r.args;
        j["pass"] = r.pass;
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(std::move(j));
    }
    return arr;
}

bool all_pass(const std::vector<RelationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const RelationReport& r) { return r.pass; });
}

std::string residual_note(const Matrix& m) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) ++nonzero;
    return "residual matrix has " + std::to_string(nonzero) + " nonzero entries";
}

std::string residual_note(const OperatorExpr& e) {
    return "residual operator has " + std::to_string(e.terms().size()) + " terms";
}

std::vector<std::vector<int>> subsets_of(int n, int min_size, int max_size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto descend = [&](auto&& self, int next) -> void {
        int size = static_cast<int>(cur.size());
        if (size >= min_size && size <= max_size) out.push_back(cur);
        if (size == max_size) return;
        for (int v = next; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    descend(descend, 1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<RelationReport> check_centralizer(const RepSpec& rep) {
    std::vector<RelationReport> out;
    std::vector<int> full(rep.n);
    for (int i = 0; i < rep.n; ++i) full[i] = i + 1;
    Su11Triple total = sum_triple(rep, full);
    const std::pair<const OperatorExpr*, int> gens[] = {
        {&total.jp, -1}, {&total.jm, -2}, {&total.j0, -3}};
    for (const auto& a : subsets_of(rep.n, 1, rep.n)) {
        OperatorExpr c = casimir_subset(rep, a);
        for (const auto& [gen, tag] : gens) {
            std::vector<int> args = a;
            args.push_back(0);
            args.push_back(tag);
            out.push_back(make_report("centralizer", args, commutator(c, *gen)));
        }
    }
    return out;
}

RelationReport check_pair_independence(CasimirFamily<Matrix>& fam) {
    int n = fam.n();
    std::vector<const Matrix*> mats;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) mats.push_back(&fam.casimir({i, j}));
    std::size_t dim = mats.front()->rows();
    Matrix eye = Matrix::identity(dim);
    mats.push_back(&eye);

    Matrix stacked(mats.size(), dim * dim);
    for (std::size_t r = 0; r < mats.size(); ++r)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                stacked.at(r, i * dim + j) = mats[r]->at(i, j);

    std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2 + 1;
    RelationReport r;
    r.id = "pair-independence";
    r.args = {n};
    std::size_t got = rank(stacked);
    r.pass = got == expected;
    if (!r.pass)
        r.note = "rank " + std::to_string(got) + ", expected " + std::to_string(expected);
    return r;
}

std::vector<std::vector<Rational>> rational_sphere_points(int n, int count) {
    if (n < 2) throw BadInput("need at least two coordinates");
    // Stereographic images of nonzero integer vectors u:
    //   y_i = 2 u_i / (1 + |u|^2),  y_n = (|u|^2 - 1) / (1 + |u|^2),
    // which lie on the unit sphere, are rational, and avoid all coordinate
    // hyperplanes as long as every u_i != 0 and |u|^2 >= 2.
    std::vector<std::vector<Rational>> out;
    std::vector<long> u(n - 1, 0);
    const long range = 4;
    auto emit = [&] {
        long norm = 0;
        for (long ui : u) {
            if (ui == 0) return;
            norm += ui * ui;
        }
        if (norm < 2) return;
        Rational denom(1 + norm);
        std::vector<Rational> y;
        for (long ui : u) y.push_back(Rational(2 * ui) / denom);
        y.push_back(Rational(norm - 1) / denom);
        out.push_back(std::move(y));
    };
    auto descend = [&](auto&& self, int i) -> void {
        if (static_cast<int>(out.size()) >= count) return;
        if (i == n - 1) {
            emit();
            return;
        }
        for (long v = 1; v <= range && static_cast<int>(out.size()) < count; ++v) {
            u[i] = v;
            self(self, i + 1);
            u[i] = -v;
            self(self, i + 1);
        }
    };
    descend(descend, 0);
    if (static_cast<int>(out.size()) < count) throw BadInput("not enough sphere points");
    return out;
}

std::vector<Laurent> seeded_polynomials(int n, long deg, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::vector<long>> monomials = BasisSpec::degree_at_most(n, deg).elements();
    std::vector<Laurent> out;
    for (int p = 0; p < count; ++p) {
        Laurent f(n);
        // Roughly half of all monomials, coefficients in [-9, 9] \ {0}.
        for (const auto& exps : monomials) {
            if (rng() % 2 != 0) continue;
            long c = static_cast<long>(rng() % 19) - 9;
            if (c == 0) c = static_cast<long>(rng() % 9) + 1;
            f.add_term(exps, Rational(c));
        }
        if (f.is_zero()) f = Laurent::constant(n, 1);
        out.push_back(std::move(f));
    }
    return out;
}

SphereHamiltonianReport verify_sphere_hamiltonian(const RepSpec& rep, int min_points,
                                                  int poly_count, long poly_degree) {
    if (rep.kind != Realization::Sphere) throw UnsupportedRealization("expected sphere");
    int n = rep.n;
    SphereHamiltonianReport report;

    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    OperatorExpr cn = casimir_subset(rep, full);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            OperatorExpr cij = casimir_subset(rep, {i, j});
            report.symmetry.push_back(make_report("hamiltonian-symmetry", {i, j},
                                                  commutator(cij, cn)));
        }

    // The full casimir equals -H/4 + (n^2 - 4n)/16 on the sphere, where
    //   H = sum_{i<j} (y_i d_j - y_j d_i)^2 + sum_i b_i / y_i^2.
    // Off the sphere the difference is the multiplication operator
    // -(1/4) sum_i b_i (|y|^2 - 1) / y_i^2, so applying it to any
    // polynomial and evaluating at a point of the sphere must give zero.
    OperatorExpr ham = OperatorExpr::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            OperatorExpr rot = OperatorExpr::variable(n, i) * OperatorExpr::derivative(n, j) -
                               OperatorExpr::variable(n, j) * OperatorExpr::derivative(n, i);
            ham += rot * rot;
        }
    for (int i = 0; i < n; ++i) {
        OpTerm inv = OpTerm::unit(n);
        inv.x[i] = -2;
        ham += OperatorExpr::term(n, inv, rep.params[i]);
    }
    Rational shift = Rational(static_cast<long>(n) * n - 4 * n, 16);
    OperatorExpr residual = cn - (ham * Rational(-1, 4) + OperatorExpr::scalar(n, shift));

    std::vector<std::vector<Rational>> points = rational_sphere_points(n, min_points);
    std::vector<Laurent> polys = seeded_polynomials(n, poly_degree, poly_count, 918273u);
    report.points = static_cast<int>(points.size());
    report.polynomials = static_cast<int>(polys.size());
    report.annihilated = true;
    for (const Laurent& f : polys) {
        Laurent g = residual.apply(f);
        for (const auto& p : points)
            if (g.eval(p) != 0) report.annihilated = false;
    }
    return report;
}

std::string subset_name(const std::vector<int>& a) {
    std::ostringstream os;
    os << "C_{";
    for (int i : a) os << i;
    os << "}";
    return os.str();
}

std::string chain_name(const Chain& c) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
        if (i > 0) os << ",";
        os << subset_name(c.sets[i]);
    }
    os << ")";
    return os.str();
}

Chain chain_from_sets(int n, std::vector<std::vector<int>> sets) {
    if (n < 3) throw InsufficientSites("chains need at least three sites");
    if (static_cast<int>(sets.size()) != n - 2) throw NotAChain("wrong chain length");
    for (std::size_t i = 0; i < sets.size(); ++i) {
        sets[i] = validate_subset(n, sets[i]);
        if (sets[i].size() != i + 2) throw NotAChain("wrong subset size in chain");
        if (i > 0 && !std::includes(sets[i].begin(), sets[i].end(), sets[i - 1].begin(),
                                    sets[i - 1].end()))
            throw NotAChain("chain subsets are not nested");
    }
    return Chain{std::move(sets)};
}

std::vector<Chain> labeling_chains(int n) {
    if (n < 3) throw InsufficientSites("chains need at least three sites");
    std::vector<Chain> out;
    Chain cur;
    auto descend = [&](auto&& self) -> void {
        if (cur.sets.size() == static_cast<std::size_t>(n - 2)) {
            out.push_back(cur);
            return;
        }
        if (cur.sets.empty()) {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    cur.sets.push_back({i, j});
                    self(self);
                    cur.sets.pop_back();
                }
            return;
        }
        const std::vector<int>& prev = cur.sets.back();
        for (int v = 1; v <= n; ++v) {
            if (std::binary_search(prev.begin(), prev.end(), v)) continue;
            std::vector<int> next = prev;
            next.insert(std::lower_bound(next.begin(), next.end(), v), v);
            cur.sets.push_back(std::move(next));
            self(self);
            cur.sets.pop_back();
        }
    };
    descend(descend);
    std::sort(out.begin(), out.end());
    return out;
}

bool chains_adjacent(const Chain& a, const Chain& b) {
    if (a.sets.size() != b.sets.size()) return false;
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.sets.size(); ++i)
        if (a.sets[i] != b.sets[i]) ++differ;
    return differ == 1;
}

ChainGraph connection_graph(int n) {
    ChainGraph g;
    g.n = n;
    g.vertices = labeling_chains(n);
    std::map<Chain, std::size_t> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) index.emplace(g.vertices[i], i);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Chain& c = g.vertices[i];
        for (std::size_t level = 0; level < c.sets.size(); ++level) {
            // Candidates for slot `level`: subsets of the set above that
            // contain the set below, with the right cardinality.
            const std::vector<int>* below = level > 0 ? &c.sets[level - 1] : nullptr;
            std::vector<int> above;
            if (level + 1 < c.sets.size()) {
                above = c.sets[level + 1];
            } else {
                above.resize(n);
                for (int v = 0; v < n; ++v) above[v] = v + 1;
            }
            std::vector<int> pool;
            for (int v : above)
                if (!below || !std::binary_search(below->begin(), below->end(), v))
                    pool.push_back(v);
            auto try_swap = [&](std::vector<int> replacement) {
                std::sort(replacement.begin(), replacement.end());
                if (replacement == c.sets[level]) return;
                Chain other = c;
                other.sets[level] = std::move(replacement);
                auto it = index.find(other);
                if (it != index.end() && it->second > i) g.edges.emplace_back(i, it->second);
            };
            if (below) {
                for (int v : pool) {
                    std::vector<int> repl = *below;
                    repl.push_back(v);
                    try_swap(std::move(repl));
                }
            } else {
                for (std::size_t p = 0; p < pool.size(); ++p)
                    for (std::size_t q = p + 1; q < pool.size(); ++q)
                        try_swap({pool[p], pool[q]});
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

bool graph_connected(const ChainGraph& g) {
    if (g.vertices.empty()) return true;
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(g.vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
    }
    return visited == g.vertices.size();
}

std::vector<std::size_t> graph_degrees(const ChainGraph& g) {
    std::vector<std::size_t> deg(g.vertices.size(), 0);
    for (const auto& [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::string graph_dot(const ChainGraph& g) {
    std::ostringstream os;
    os << "graph chains {\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        os << "  v" << i << " [label=\"" << chain_name(g.vertices[i]) << "\"];\n";
    for (const auto& [a, b] : g.edges) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace racah
