#include "bbgky/cluster.hpp"

#include <algorithm>
#include <utility>

#include "bbgky/canonical.hpp"
#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

std::vector<Index> checked_sorted(std::vector<Index> indices) {
    if (indices.empty()) {
        throw DomainError("cluster expansion needs at least one index");
    }
    for (const auto& ix : indices) {
        if (ix.is_family()) {
            throw DomainError("cluster expansion of family index '" + ix.label() +
                              "'; trace the family down to members first");
        }
    }
    std::sort(indices.begin(), indices.end(),
              [](const Index& a, const Index& b) { return compare(a, b) < 0; });
    for (size_t i = 1; i < indices.size(); ++i) {
        if (compare(indices[i - 1], indices[i]) == 0) {
            throw DomainError("duplicate index '" + indices[i].label() + "' in cluster expansion");
        }
    }
    return indices;
}

Term singles_product(const std::vector<Index>& indices) {
    std::vector<MatrixFactor> fs;
    fs.reserve(indices.size());
    for (const auto& ix : indices) {
        fs.push_back(MatrixFactor::density({ix}));
    }
    return Term::product(std::move(fs));
}

//one term per subset of 2..n-1 indices: that correlation times the
//complementary one-index densities
void append_single_cluster_terms(const std::vector<Index>& indices, std::vector<Term>& out) {
    const size_t n = indices.size();
    for (size_t k = 2; k + 1 <= n; ++k) {
        std::vector<char> sel(n, 0);
        std::fill(sel.begin(), sel.begin() + static_cast<long>(k), 1);
        do {
            std::vector<Index> in_cluster;
            std::vector<MatrixFactor> fs;
            in_cluster.reserve(k);
            for (size_t i = 0; i < n; ++i) {
                if (sel[i]) {
                    in_cluster.push_back(indices[i]);
                } else {
                    fs.push_back(MatrixFactor::density({indices[i]}));
                }
            }
            fs.push_back(MatrixFactor::correlation(std::move(in_cluster)));
            out.push_back(Term::product(std::move(fs)));
        } while (std::prev_permutation(sel.begin(), sel.end()));
    }
}

//all set partitions, as restricted growth strings: element j joins an
//existing block or opens a new one
void grow_partition(size_t j, size_t n, std::vector<size_t>& rgs, size_t used,
                    std::vector<std::vector<size_t>>& out) {
    if (j == n) {
        out.push_back(rgs);
        return;
    }
    for (size_t b = 0; b <= used; ++b) {
        rgs[j] = b;
        grow_partition(j + 1, n, rgs, std::max(used, b + 1), out);
    }
}

void partitions_of(size_t n, std::vector<std::vector<size_t>>& out) {
    std::vector<size_t> rgs(n, 0);
    grow_partition(1, n, rgs, 1, out);
}

}  // namespace

std::vector<Term> cluster_expand(const std::vector<Index>& indices_in, ExpansionMode mode) {
    std::vector<Index> indices = checked_sorted(indices_in);
    const size_t n = indices.size();

    std::vector<Term> out;
    if (n == 1) {
        out.push_back(Term::factor(MatrixFactor::density({indices[0]})));
        return out;
    }

    if (mode == ExpansionMode::paper) {
        out.push_back(singles_product(indices));
        append_single_cluster_terms(indices, out);
        out.push_back(Term::factor(MatrixFactor::correlation(indices)));
        return out;
    }

    std::vector<std::vector<size_t>> parts;
    partitions_of(n, parts);
    std::vector<std::pair<size_t, Term>> ranked;
    ranked.reserve(parts.size());
    for (const auto& rgs : parts) {
        size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<Index>> block(blocks);
        for (size_t j = 0; j < n; ++j) block[rgs[j]].push_back(indices[j]);
        std::vector<MatrixFactor> fs;
        fs.reserve(blocks);
        for (auto& b : block) {
            if (b.size() == 1) {
                fs.push_back(MatrixFactor::density(std::move(b)));
            } else {
                fs.push_back(MatrixFactor::correlation(std::move(b)));
            }
        }
        ranked.emplace_back(blocks, Term::product(std::move(fs)));
    }
    //most blocks first, so the single-block full correlation lands last
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return compare(a.second, b.second) < 0;
    });
    out.reserve(ranked.size());
    for (auto& [blocks, t] : ranked) {
        (void)blocks;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<SignedTerm> expand_commutator(const SignedTerm& st, ExpansionMode mode) {
    const Term& t = st.term;
    if (t.kind() != Term::Kind::comm && t.kind() != Term::Kind::trcomm) {
        throw DomainError("expand_commutator expects a commutator term");
    }
    const Term& arg = t.arg();
    if (arg.kind() != Term::Kind::product || arg.factors().size() != 1) {
        throw DomainError("commutator argument must be a single matrix to expand");
    }
    const MatrixFactor& f = arg.factors()[0];
    if (f.kind() != MatrixFactor::Kind::density || f.deriv()) {
        throw DomainError("commutator argument must be an underived density to expand");
    }

    std::vector<Term> pieces = cluster_expand(f.indices(), mode);
    std::vector<SignedTerm> out;
    out.reserve(pieces.size());
    for (auto& piece : pieces) {
        Term rebuilt = t.kind() == Term::Kind::comm
                           ? Term::comm(t.op(), std::move(piece))
                           : Term::trcomm(t.op(), t.traced_side(), std::move(piece));
        Term canon = canonicalize(rebuilt);
        if (canon.kind() == Term::Kind::zero) continue;
        out.push_back({st.sign, std::move(canon)});
    }
    return out;
}

size_t cluster_term_count(size_t n, ExpansionMode mode) {
    if (n == 0) throw DomainError("cluster expansion needs at least one index");
    if (n == 1) return 1;
    if (mode == ExpansionMode::paper) {
        //product term, one term per subset of 2..n-1, full correlation
        size_t total = 2;
        for (size_t k = 2; k <= n - 1; ++k) {
            size_t c = 1;
            for (size_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
            total += c;
        }
        return total;
    }
    //Bell number, by the Bell triangle
    std::vector<size_t> row{1};
    for (size_t i = 1; i < n; ++i) {
        std::vector<size_t> next;
        next.reserve(i + 1);
        next.push_back(row.back());
        for (size_t j = 0; j < row.size(); ++j) next.push_back(next.back() + row[j]);
        row = std::move(next);
    }
    return row.back();
}

}  // namespace bbgky
