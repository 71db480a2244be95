#include "racah/racah_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "racah/errors.hpp"
#include "racah/linalg.hpp"

namespace racah {

Rational kappa(const Rational& x, const Rational& beta) {
    return (x + (beta + 1) / 2) * (x + (beta - 1) / 2);
}

Rational pochhammer(const Rational& a, long j) {
    Rational out = 1;
    for (long t = 0; t < j; ++t) out *= a + t;
    return out;
}

Rational racah_univariate(long n, const RacahParams& p, const Rational& x) {
    if (n < 0) throw BadInput("negative degree in racah_univariate");
    const Rational prefactor = pochhammer(p.alpha + 1, n) * pochhammer(p.beta + p.delta + 1, n) *
                               pochhammer(p.gamma + 1, n);
    Rational sum = 0;
    Rational num = 1, den = 1;  // running products over the series terms
    for (long j = 0; j <= n; ++j) {
        if (j > 0) {
            num *= (Rational(-n) + (j - 1)) * (Rational(n) + p.alpha + p.beta + j) *
                   (-x + (j - 1)) * (x + p.gamma + p.delta + j);
            den *= (p.alpha + j) * (p.beta + p.delta + j) * (p.gamma + j) * j;
        }
        if (den == 0) {
            if (num == 0) continue;
            std::ostringstream msg;
            msg << "lower Pochhammer vanishes at term " << j << " with nonzero numerator";
            throw DivisionByZero(msg.str());
        }
        sum += num / den;
    }
    return prefactor * sum;
}

BetaLadder::BetaLadder(std::vector<Rational> betas, long level)
    : betas_(std::move(betas)), level_(level) {
    if (betas_.size() < 2) throw BadInput("a beta ladder needs at least two sites");
    if (level_ < 0) throw BadInput("negative level in beta ladder");
}

BetaLadder BetaLadder::from_nu(const std::vector<Rational>& nu, long level) {
    // kappa(0, b) = nu(nu-1) has the two roots b = 2nu-1 and b = 1-2nu; the
    // partial-sum ladder is the increasing resolution of that ambiguity.
    if (nu.size() < 2) throw BadInput("a beta ladder needs at least two sites");
    std::vector<Rational> betas;
    Rational acc = 0;
    for (const Rational& w : nu) {
        acc += w;
        betas.push_back(2 * acc - 1);
    }
    return BetaLadder(std::move(betas), level);
}

const Rational& BetaLadder::beta(int j) const {
    if (j < 0 || j >= sites()) throw BadInput("beta index out of range");
    return betas_[static_cast<std::size_t>(j)];
}

Rational BetaLadder::nu(int site) const {
    if (site < 1 || site > sites()) throw BadInput("site index out of range");
    if (site == 1) return (betas_[0] + 1) / 2;
    return (betas_[static_cast<std::size_t>(site - 1)] - betas_[static_cast<std::size_t>(site - 2)]) / 2;
}

Rational BetaLadder::subset_beta(const std::vector<int>& a) const {
    std::vector<int> key = validate_subset(sites(), a);
    Rational acc = 0;
    for (int site : key) acc += nu(site);
    return 2 * acc - 1;
}

Rational BetaLadder::site_casimir(int site) const {
    const Rational w = nu(site);
    return w * (w - 1);
}

std::vector<Rational> BetaLadder::chain_spectrum(const std::vector<int>& a) const {
    const Rational b = subset_beta(a);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(level_) + 1);
    for (long j = 0; j <= level_; ++j) out.push_back(kappa(Rational(j), b));
    return out;
}

void BetaLadder::check_labels(const Chain& chain) const {
    for (const auto& a : chain.sets) {
        const Rational b = subset_beta(a);
        // kappa(j,b) = kappa(j',b) for j < j' iff j + j' + b = 0.
        if (!is_integer(-b)) continue;
        const long m = to_long(-b);
        if (m >= 1 && m <= 2 * level_ - 1) {
            throw LabelCollision("kappa labels collide on " + subset_name(a) +
                                 ": -beta is an integer in [1, 2N-1]");
        }
    }
}

Json BetaLadder::to_json() const {
    Json betas = Json::array();
    for (const Rational& b : betas_) betas.push_back(to_string(b));
    return Json{{"betas", betas}, {"level", level_}};
}

namespace {

std::vector<int> block_label_to_int(const std::vector<long>& label) {
    std::vector<int> out;
    out.reserve(label.size());
    for (long v : label) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

LabeledBasis eigenbasis_for_chain(CasimirFamily<Matrix>& family, const Chain& chain,
                                  const BetaLadder& ladder) {
    if (chain.sets.empty()) throw NotAChain("empty chain");
    ladder.check_labels(chain);
    std::vector<Matrix> ops;
    std::vector<std::vector<Rational>> expected;
    ops.reserve(chain.sets.size());
    expected.reserve(chain.sets.size());
    for (const auto& a : chain.sets) {
        ops.push_back(family.casimir(a));
        expected.push_back(ladder.chain_spectrum(a));
    }
    EigenDecomposition dec = simultaneous_eigenbasis(ops, expected);

    std::map<std::vector<int>, std::vector<Rational>> by_label;
    for (const EigenBlock& block : dec.blocks) {
        if (block.basis.size() != 1) {
            throw IncompleteSpectrum("joint eigenspace of " + chain_name(chain) +
                                     " is not one-dimensional");
        }
        std::vector<int> label = block_label_to_int(block.label);
        for (std::size_t i = 0; i + 1 < label.size(); ++i) {
            if (label[i] > label[i + 1]) {
                throw IncompleteSpectrum("labels of " + chain_name(chain) +
                                         " leave the interlacing simplex");
            }
        }
        by_label.emplace(std::move(label), block.basis.front());
    }
    if (static_cast<long>(by_label.size()) != dec.dim) {
        throw IncompleteSpectrum("label count does not exhaust the space for " +
                                 chain_name(chain));
    }

    LabeledBasis out;
    out.chain = chain;
    std::vector<std::vector<Rational>> cols;
    for (auto& [label, vec] : by_label) {
        out.labels.push_back(label);
        cols.push_back(vec);
    }
    out.vectors = columns_to_matrix(dec.dim, cols);
    return out;
}

Json OverlapMatrix::to_json() const {
    Json rows = Json::array(), cols = Json::array();
    for (const auto& l : row_labels) rows.push_back(l);
    for (const auto& l : col_labels) cols.push_back(l);
    return Json{{"from", chain_name(from)}, {"to", chain_name(to)},
                {"row_labels", rows},       {"col_labels", cols},
                {"matrix", r.to_json()}};
}

OverlapMatrix connection_matrix(CasimirFamily<Matrix>& family, const Chain& from,
                                const Chain& to, const BetaLadder& ladder) {
    LabeledBasis psi = eigenbasis_for_chain(family, from, ladder);
    LabeledBasis phi = eigenbasis_for_chain(family, to, ladder);
    // psi.vectors * X = phi.vectors, so column s of X holds the coordinates of
    // phi_s in the psi basis; the overlap wants them as row s.
    Matrix x = EchelonSolver(psi.vectors).solve(phi.vectors);
    OverlapMatrix out;
    out.from = from;
    out.to = to;
    out.row_labels = phi.labels;
    out.col_labels = psi.labels;
    out.r = x.transpose();
    return out;
}

OverlapMatrix compose_path(CasimirFamily<Matrix>& family, const std::vector<Chain>& path,
                           const BetaLadder& ladder) {
    if (path.size() < 2) throw NoPath("a path needs at least two chains");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!chains_adjacent(path[i], path[i + 1])) {
            throw NotAdjacent(chain_name(path[i]) + " and " + chain_name(path[i + 1]) +
                              " differ in more than one subset");
        }
    }
    OverlapMatrix total = connection_matrix(family, path[0], path[1], ladder);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        OverlapMatrix step = connection_matrix(family, path[i], path[i + 1], ladder);
        if (step.col_labels != total.row_labels) {
            throw IncompleteSpectrum("label mismatch when composing through " +
                                     chain_name(path[i]));
        }
        total.r = step.r * total.r;
        total.row_labels = step.row_labels;
        total.to = step.to;
    }
    return total;
}

GaugeResult gauge_equal(const Matrix& m1, const Matrix& m2) {
    GaugeResult out;
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
        out.note = "shape mismatch";
        return out;
    }
    for (long s = 0; s < m1.rows(); ++s) {
        long pivot = -1;
        for (long k = 0; k < m2.cols(); ++k) {
            if (m2.at(s, k) != 0) {
                pivot = k;
                break;
            }
        }
        if (pivot < 0) {
            for (long k = 0; k < m1.cols(); ++k) {
                if (m1.at(s, k) != 0) {
                    out.note = "row " + std::to_string(s) + " is zero on one side only";
                    return out;
                }
            }
            out.witnesses.push_back(1);
            continue;
        }
        const Rational d = m1.at(s, pivot) / m2.at(s, pivot);
        if (d == 0) {
            out.note = "row " + std::to_string(s) + " is zero on one side only";
            return out;
        }
        for (long k = 0; k < m1.cols(); ++k) {
            if (m1.at(s, k) != d * m2.at(s, k)) {
                out.note = "row " + std::to_string(s) + " is not a scalar multiple";
                return out;
            }
        }
        out.witnesses.push_back(d);
    }
    out.ok = true;
    return out;
}

Matrix ground_normalized(const OverlapMatrix& m) {
    long ground = -1;
    for (std::size_t s = 0; s < m.row_labels.size(); ++s) {
        if (std::all_of(m.row_labels[s].begin(), m.row_labels[s].end(),
                        [](int v) { return v == 0; })) {
            ground = static_cast<long>(s);
            break;
        }
    }
    if (ground < 0) throw BadInput("no ground label among the overlap rows");
    Matrix out = m.r;
    for (long k = 0; k < out.cols(); ++k) {
        const Rational pivot = out.at(ground, k);
        if (pivot == 0) throw BadInput("ground row has a zero entry; ground gauge undefined");
        for (long s = 0; s < out.rows(); ++s) out.at(s, k) /= pivot;
    }
    return out;
}

Json GaugeComparison::to_json() const {
    Json w = Json::array();
    for (const Rational& d : witnesses) w.push_back(to_string(d));
    return Json{{"pass", pass}, {"orientation", orientation}, {"witnesses", w}, {"note", note}};
}

GaugeComparison compare_up_to_gauge(const OverlapMatrix& m,
                                    const std::vector<std::pair<std::string, Matrix>>& candidates) {
    GaugeComparison out;
    Matrix g;
    try {
        g = ground_normalized(m);
    } catch (const BadInput& e) {
        out.note = e.what();
        return out;
    }
    for (const auto& [name, candidate] : candidates) {
        GaugeResult r = gauge_equal(g, candidate);
        if (r.ok) {
            out.pass = true;
            out.orientation = name;
            out.witnesses = std::move(r.witnesses);
            return out;
        }
        if (!out.note.empty()) out.note += "; ";
        out.note += name + ": " + r.note;
    }
    return out;
}

RacahParams lemma_params(const BetaLadder& ladder) {
    if (ladder.sites() != 3) throw BadInput("the overlap lemma needs exactly three sites");
    const long n = ladder.level();
    return RacahParams{ladder.beta(1) - ladder.beta(0) - 1, ladder.beta(2) - ladder.beta(1) - 1,
                       Rational(-n - 1), ladder.beta(1) + n};
}

Matrix lemma_overlap_matrix(const BetaLadder& ladder) {
    const RacahParams p = lemma_params(ladder);
    const long n = ladder.level();
    Matrix out(n + 1, n + 1);
    for (long s = 0; s <= n; ++s)
        for (long k = 0; k <= n; ++k) out.at(s, k) = racah_univariate(s, p, Rational(k));
    return out;
}

RacahParams embedded_step_params(const Rational& mu1, const Rational& mu2,
                                 const Rational& mu3, long level) {
    const Rational b0 = 2 * mu1 - 1;
    const Rational b1 = 2 * (mu1 + mu2) - 1;
    const Rational b2 = 2 * (mu1 + mu2 + mu3) - 1;
    return RacahParams{b1 - b0 - 1, b2 - b1 - 1, Rational(-level - 1), b1 + level};
}

Rational tratnik_multivariate(const std::vector<int>& kv, const std::vector<int>& sv,
                              const BetaLadder& ladder) {
    const int n = ladder.sites();
    const std::size_t len = static_cast<std::size_t>(n - 2);
    if (kv.size() != len || sv.size() != len) {
        throw BadInput("index vectors must have one entry per intermediate level");
    }
    Rational product = 1;
    long ksum = 0;  // |k|_{j-1}
    for (int j = 1; j <= n - 2; ++j) {
        const long kj = kv[static_cast<std::size_t>(j - 1)];
        const long sj = sv[static_cast<std::size_t>(j - 1)];
        if (kj < 0 || sj < 0) throw BadInput("negative index in tratnik_multivariate");
        const long snext = (j == n - 2) ? ladder.level() : sv[static_cast<std::size_t>(j)];
        const RacahParams p{2 * ksum + ladder.beta(j) - ladder.beta(0) - 1,
                            ladder.beta(j + 1) - ladder.beta(j) - 1, Rational(ksum - snext - 1),
                            Rational(ksum) + ladder.beta(j) + snext};
        product *= racah_univariate(kj, p, Rational(sj - ksum));
        ksum += kj;
    }
    return product;
}

namespace {

std::vector<int> label_differences(const std::vector<int>& label) {
    std::vector<int> out(label.size());
    int previous = 0;
    for (std::size_t i = 0; i < label.size(); ++i) {
        out[i] = label[i] - previous;
        previous = label[i];
    }
    return out;
}

}  // namespace

Matrix tratnik_matrix(const BetaLadder& ladder, const std::vector<std::vector<int>>& row_labels,
                      const std::vector<std::vector<int>>& col_labels, bool swap_roles) {
    Matrix out(static_cast<long>(row_labels.size()), static_cast<long>(col_labels.size()));
    for (std::size_t s = 0; s < row_labels.size(); ++s) {
        for (std::size_t k = 0; k < col_labels.size(); ++k) {
            const std::vector<int>& degree = swap_roles ? col_labels[k] : row_labels[s];
            const std::vector<int>& argument = swap_roles ? row_labels[s] : col_labels[k];
            out.at(static_cast<long>(s), static_cast<long>(k)) =
                tratnik_multivariate(label_differences(degree), argument, ladder);
        }
    }
    return out;
}

namespace {

Rational triple_sum_entry(const BetaLadder& ladder, const std::vector<int>& t,
                          const std::vector<int>& j) {
    const long level = ladder.level();
    const Rational nu1 = ladder.nu(1), nu2 = ladder.nu(2), nu3 = ladder.nu(3), nu4 = ladder.nu(4);
    const long t1 = t[0], t2 = t[1], j1 = j[0], j2 = j[1];
    const RacahParams outer = embedded_step_params(nu2, nu3, nu4, t2);
    const RacahParams first = embedded_step_params(nu1, nu2, nu3, j2);
    Rational sum = 0;
    for (long l = 0; l <= std::min(j2, t2); ++l) {
        const RacahParams middle = embedded_step_params(nu1, nu2 + nu3 + l, nu4, level - l);
        sum += racah_univariate(t1, outer, Rational(l)) *
               racah_univariate(t2 - l, middle, Rational(j2 - l)) *
               racah_univariate(l, first, Rational(j1));
    }
    return sum;
}

}  // namespace

Matrix bivariate_triple_sum_matrix(const BetaLadder& ladder,
                                   const std::vector<std::vector<int>>& row_labels,
                                   const std::vector<std::vector<int>>& col_labels,
                                   bool swap_roles) {
    if (ladder.sites() != 4) throw BadInput("the triple-sum overlap needs exactly four sites");
    Matrix out(static_cast<long>(row_labels.size()), static_cast<long>(col_labels.size()));
    for (std::size_t s = 0; s < row_labels.size(); ++s) {
        for (std::size_t k = 0; k < col_labels.size(); ++k) {
            if (row_labels[s].size() != 2 || col_labels[k].size() != 2) {
                throw BadInput("triple-sum labels must have two entries");
            }
            const std::vector<int>& t = swap_roles ? col_labels[k] : row_labels[s];
            const std::vector<int>& j = swap_roles ? row_labels[s] : col_labels[k];
            out.at(static_cast<long>(s), static_cast<long>(k)) = triple_sum_entry(ladder, t, j);
        }
    }
    return out;
}

}  // namespace racah
