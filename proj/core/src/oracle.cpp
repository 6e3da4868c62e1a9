#include "bbgky/oracle.hpp"

#include <algorithm>
#include <complex>
#include <random>

#include "bbgky/canonical.hpp"
#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

using C = std::complex<double>;

Mat scalar_mat(double v) {
    Mat m(1, 1);
    m(0, 0) = C(v, 0.0);
    return m;
}

long dim_product(const std::vector<int>& dims, const std::vector<int>& sites) {
    long d = 1;
    for (int s : sites) d *= dims[s];
    return d;
}

//row-major digit decomposition of every basis index of the listed sites
std::vector<std::vector<int>> digit_table(const std::vector<int>& dims,
                                          const std::vector<int>& sites) {
    long total = dim_product(dims, sites);
    std::vector<std::vector<int>> table(total, std::vector<int>(sites.size()));
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (size_t k = sites.size(); k-- > 0;) {
            table[idx][k] = static_cast<int>(rest % dims[sites[k]]);
            rest /= dims[sites[k]];
        }
    }
    return table;
}

size_t find_interaction(const SystemSpec& spec, const InteractionOp& op) {
    auto slot_matches = [](const Index& declared, const Index& instance) {
        if (declared.is_family()) return instance.letter() == declared.letter();
        return instance.is_single() && instance.label() == declared.label();
    };
    for (size_t i = 0; i < spec.interactions.size(); ++i) {
        const auto& d = spec.interactions[i];
        if (slot_matches(d.first, op.pair.first) && slot_matches(d.second, op.pair.second)) {
            return i;
        }
    }
    throw StructuralError("operator does not instantiate any declared interaction");
}

void partitions_into(size_t j, size_t n, std::vector<size_t>& rgs, size_t used,
                     std::vector<std::vector<size_t>>& out) {
    if (j == n) {
        out.push_back(rgs);
        return;
    }
    for (size_t b = 0; b <= used; ++b) {
        rgs[j] = b;
        partitions_into(j + 1, n, rgs, std::max(used, b + 1), out);
    }
}

}  // namespace

ConcreteSystem::ConcreteSystem(SystemSpec spec, OracleConfig cfg)
    : spec_(std::move(spec)), cfg_(std::move(cfg)) {
    validate_system(spec_);
    if (cfg_.dim < 2) throw DomainError("subsystem dimension must be at least 2");
    for (const auto& [letter, d] : cfg_.dims) {
        if (d < 2) throw DomainError(std::string("dimension for '") + letter + "' must be at least 2");
    }
    if (cfg_.members < 1) throw DomainError("family instantiation needs at least one member");
    if (cfg_.state_rank < 1) throw DomainError("state rank must be positive");

    struct Entry {
        char letter;
        int ordinal;
        std::string label;
    };
    std::vector<Entry> entries;
    for (const auto& s : spec_.singles) {
        entries.push_back({s.letter(), s.ordinal(), s.label()});
    }
    for (char f : spec_.families) {
        auto mit = cfg_.members_by.find(f);
        int count = mit == cfg_.members_by.end() ? cfg_.members : mit->second;
        if (count < 1) throw DomainError(std::string("family '") + f + "' needs at least one member");
        for (int m = 1; m <= count; ++m) {
            entries.push_back({f, m, std::string(1, f) + std::to_string(m)});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.letter != b.letter) return a.letter < b.letter;
        return a.ordinal < b.ordinal;
    });
    for (const auto& e : entries) {
        auto it = cfg_.dims.find(e.letter);
        int d = it == cfg_.dims.end() ? cfg_.dim : it->second;
        site_by_label_[e.label] = static_cast<int>(labels_.size());
        labels_.push_back(e.label);
        site_dims_.push_back(d);
        dimension_ *= d;
        if (dimension_ > (1L << 14)) {
            throw DomainError("concrete Hilbert space too large; lower dimensions or members");
        }
    }

    std::mt19937_64 rng(cfg_.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto random_matrix = [&](long rows, long cols) {
        Mat g(rows, cols);
        for (long r = 0; r < rows; ++r) {
            for (long c = 0; c < cols; ++c) g(r, c) = C(nd(rng), nd(rng));
        }
        return g;
    };

    long rank = std::min<long>(cfg_.state_rank, dimension_);
    Mat g = random_matrix(dimension_, rank);
    state_ = g * g.adjoint();
    state_ /= state_.trace();

    std::vector<int> all(labels_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

    total_v_ = Mat::Zero(dimension_, dimension_);
    for (size_t i = 0; i < spec_.interactions.size(); ++i) {
        const auto& pi = spec_.interactions[i];
        for (int a : sites_of(pi.first)) {
            for (int b : sites_of(pi.second)) {
                std::vector<int> sup{std::min(a, b), std::max(a, b)};
                long d = dim_product(site_dims_, sup);
                Mat raw = random_matrix(d, d);
                Mat v = (raw + raw.adjoint()) / 2.0;
                total_v_ += promote_to(*this, v, sup, all);
                pair_v_.emplace(std::make_tuple(i, a, b), std::move(v));
            }
        }
    }

    state_deriv_ = C(0.0, -1.0) * (total_v_ * state_ - state_ * total_v_);
}

int ConcreteSystem::members_of(char letter) const {
    int n = 0;
    for (const auto& l : labels_) {
        if (l[0] == letter) ++n;
    }
    return n;
}

int ConcreteSystem::site_of(const Index& single) const {
    if (!single.is_single() || single.is_bound()) {
        throw StructuralError("evaluating unbound index '" + single.label() + "'");
    }
    auto it = site_by_label_.find(single.label());
    if (it == site_by_label_.end()) {
        throw DomainError("no concrete subsystem '" + single.label() + "' in this instantiation");
    }
    return it->second;
}

std::vector<int> ConcreteSystem::sites_of(const Index& ix) const {
    if (ix.is_single()) return {site_of(ix)};
    std::vector<int> out;
    for (size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i][0] == ix.letter() && !ix.excludes(labels_[i])) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

const Mat& ConcreteSystem::pair_interaction(size_t interaction, int site_a, int site_b) const {
    auto it = pair_v_.find(std::make_tuple(interaction, site_a, site_b));
    if (it == pair_v_.end()) {
        throw StructuralError("no interaction instance for the requested site pair");
    }
    return it->second;
}

uint64_t ConcreteSystem::mask_of(const std::vector<int>& sites) const {
    uint64_t mask = 0;
    for (int s : sites) {
        if (s < 0 || s >= site_count()) throw StructuralError("site out of range");
        uint64_t bit = uint64_t{1} << s;
        if (mask & bit) throw StructuralError("duplicate site in support");
        mask |= bit;
    }
    return mask;
}

const ConcreteSystem::Block& ConcreteSystem::reduced(const std::vector<int>& sites) const {
    uint64_t mask = mask_of(sites);
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = reduced_cache_.find(mask);
        if (it != reduced_cache_.end()) return it->second;
    }
    std::vector<int> all(labels_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> complement;
    for (int s : all) {
        if (!std::binary_search(sorted.begin(), sorted.end(), s)) complement.push_back(s);
    }
    Block b;
    b.support = sorted;
    b.value = partial_trace(*this, state_, all, complement);
    b.deriv = partial_trace(*this, state_deriv_, all, complement);
    std::lock_guard<std::mutex> lock(cache_mu_);
    return reduced_cache_.emplace(mask, std::move(b)).first->second;
}

namespace {

ConcreteSystem::Block mul_blocks(const ConcreteSystem& sys, const ConcreteSystem::Block& a,
                                 const ConcreteSystem::Block& b) {
    ConcreteSystem::Block out;
    out.support = support_union(a.support, b.support);
    Mat av = promote_to(sys, a.value, a.support, out.support);
    Mat bv = promote_to(sys, b.value, b.support, out.support);
    Mat ad = promote_to(sys, a.deriv, a.support, out.support);
    Mat bd = promote_to(sys, b.deriv, b.support, out.support);
    out.value = av * bv;
    out.deriv = ad * bv + av * bd;
    return out;
}

}  // namespace

ConcreteSystem::Block ConcreteSystem::build_correlation(uint64_t mask,
                                                        ExpansionMode inversion) const {
    std::vector<int> sites;
    for (int s = 0; s < site_count(); ++s) {
        if (mask & (uint64_t{1} << s)) sites.push_back(s);
    }
    const size_t n = sites.size();
    if (n < 2) throw DomainError("correlation matrix needs at least two subsystems");

    const Block& f = reduced(sites);
    Block out;
    out.support = sites;
    out.value = f.value;
    out.deriv = f.deriv;

    auto block_for = [&](const std::vector<int>& part) -> Block {
        if (part.size() == 1) return reduced(part);
        return correlation(part, inversion);
    };

    if (inversion == ExpansionMode::ursell) {
        std::vector<std::vector<size_t>> parts;
        std::vector<size_t> rgs(n, 0);
        partitions_into(1, n, rgs, 1, parts);
        for (const auto& p : parts) {
            size_t blocks = *std::max_element(p.begin(), p.end()) + 1;
            if (blocks < 2) continue;
            std::vector<std::vector<int>> groups(blocks);
            for (size_t j = 0; j < n; ++j) groups[p[j]].push_back(sites[j]);
            Block prod = block_for(groups[0]);
            for (size_t gi = 1; gi < blocks; ++gi) prod = mul_blocks(*this, prod, block_for(groups[gi]));
            out.value -= prod.value;
            out.deriv -= prod.deriv;
        }
        return out;
    }

    //paper inversion: remainder after the product of singles and every
    //single-correlation term
    Block prod = reduced({sites[0]});
    for (size_t i = 1; i < n; ++i) prod = mul_blocks(*this, prod, reduced({sites[i]}));
    out.value -= prod.value;
    out.deriv -= prod.deriv;

    for (uint64_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        int bits = __builtin_popcountll(sub);
        if (bits < 2 || bits >= static_cast<int>(n)) continue;
        std::vector<int> in_cluster, rest;
        for (int s : sites) {
            if (sub & (uint64_t{1} << s)) {
                in_cluster.push_back(s);
            } else {
                rest.push_back(s);
            }
        }
        Block term = correlation(in_cluster, inversion);
        for (int s : rest) term = mul_blocks(*this, term, reduced({s}));
        out.value -= term.value;
        out.deriv -= term.deriv;
    }
    return out;
}

const ConcreteSystem::Block& ConcreteSystem::correlation(const std::vector<int>& sites,
                                                         ExpansionMode inversion) const {
    uint64_t mask = mask_of(sites);
    auto& cache = corr_cache_[inversion == ExpansionMode::paper ? 0 : 1];
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
    }
    Block b = build_correlation(mask, inversion);
    std::lock_guard<std::mutex> lock(cache_mu_);
    return cache.emplace(mask, std::move(b)).first->second;
}

std::vector<int> support_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Mat promote_to(const ConcreteSystem& sys, const Mat& m, const std::vector<int>& from,
               const std::vector<int>& to) {
    if (from == to) return m;
    std::vector<int> dims(sys.site_count());
    for (int s = 0; s < sys.site_count(); ++s) dims[s] = sys.dim_of(s);

    std::vector<int> pos_in_to(from.size());
    std::vector<char> is_from(to.size(), 0);
    for (size_t i = 0; i < from.size(); ++i) {
        auto it = std::lower_bound(to.begin(), to.end(), from[i]);
        if (it == to.end() || *it != from[i]) {
            throw StructuralError("promotion target does not cover the source support");
        }
        pos_in_to[i] = static_cast<int>(it - to.begin());
        is_from[pos_in_to[i]] = 1;
    }

    long df = dim_product(dims, from);
    long dt = dim_product(dims, to);
    if (m.rows() != df || m.cols() != df) throw StructuralError("matrix does not fit its support");

    auto digits = digit_table(dims, to);
    std::vector<long> from_strides(from.size());
    long stride = 1;
    for (size_t k = from.size(); k-- > 0;) {
        from_strides[k] = stride;
        stride *= dims[from[k]];
    }

    Mat out = Mat::Zero(dt, dt);
    for (long r = 0; r < dt; ++r) {
        for (long c = 0; c < dt; ++c) {
            bool diag = true;
            for (size_t k = 0; k < to.size(); ++k) {
                if (!is_from[k] && digits[r][k] != digits[c][k]) {
                    diag = false;
                    break;
                }
            }
            if (!diag) continue;
            long fr = 0, fc = 0;
            for (size_t i = 0; i < from.size(); ++i) {
                fr += from_strides[i] * digits[r][pos_in_to[i]];
                fc += from_strides[i] * digits[c][pos_in_to[i]];
            }
            out(r, c) = m(fr, fc);
        }
    }
    return out;
}

Mat partial_trace(const ConcreteSystem& sys, const Mat& m, const std::vector<int>& from,
                  const std::vector<int>& traced) {
    std::vector<int> dims(sys.site_count());
    for (int s = 0; s < sys.site_count(); ++s) dims[s] = sys.dim_of(s);

    std::vector<int> kept;
    for (int s : from) {
        if (!std::binary_search(traced.begin(), traced.end(), s)) kept.push_back(s);
    }
    for (int s : traced) {
        if (!std::binary_search(from.begin(), from.end(), s)) {
            throw StructuralError("tracing a site outside the support");
        }
    }

    long df = dim_product(dims, from);
    if (m.rows() != df || m.cols() != df) throw StructuralError("matrix does not fit its support");
    long dk = dim_product(dims, kept);

    std::vector<int> kept_pos, traced_pos;
    for (size_t k = 0; k < from.size(); ++k) {
        if (std::binary_search(traced.begin(), traced.end(), from[k])) {
            traced_pos.push_back(static_cast<int>(k));
        } else {
            kept_pos.push_back(static_cast<int>(k));
        }
    }
    std::vector<long> kept_strides(kept.size());
    long stride = 1;
    for (size_t k = kept.size(); k-- > 0;) {
        kept_strides[k] = stride;
        stride *= dims[kept[k]];
    }

    auto digits = digit_table(dims, from);
    Mat out = Mat::Zero(dk, dk);
    for (long r = 0; r < df; ++r) {
        for (long c = 0; c < df; ++c) {
            bool diag = true;
            for (int tp : traced_pos) {
                if (digits[r][tp] != digits[c][tp]) {
                    diag = false;
                    break;
                }
            }
            if (!diag) continue;
            long kr = 0, kc = 0;
            for (size_t i = 0; i < kept_pos.size(); ++i) {
                kr += kept_strides[i] * digits[r][kept_pos[i]];
                kc += kept_strides[i] * digits[c][kept_pos[i]];
            }
            out(kr, kc) += m(r, c);
        }
    }
    return out;
}

Evaluated evaluate_factor(const ConcreteSystem& sys, const MatrixFactor& f,
                          ExpansionMode inversion) {
    std::vector<int> sites;
    for (const auto& ix : f.indices()) {
        for (int s : sys.sites_of(ix)) sites.push_back(s);
    }
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
        throw StructuralError("factor indices collide on one concrete subsystem");
    }
    const ConcreteSystem::Block& b = f.kind() == MatrixFactor::Kind::density
                                         ? sys.reduced(sites)
                                         : sys.correlation(sites, inversion);
    //a derivative-marked factor stands for i*hbar d/dt of the matrix, hbar = 1
    if (f.deriv()) return {C(0.0, 1.0) * b.deriv, b.support};
    return {b.value, b.support};
}

namespace {

Evaluated mul_eval(const ConcreteSystem& sys, const Evaluated& a, const Evaluated& b) {
    Evaluated out;
    out.support = support_union(a.support, b.support);
    out.value = promote_to(sys, a.value, a.support, out.support) *
                promote_to(sys, b.value, b.support, out.support);
    return out;
}

Evaluated add_eval(const ConcreteSystem& sys, const Evaluated& a, const Evaluated& b) {
    Evaluated out;
    out.support = support_union(a.support, b.support);
    out.value = promote_to(sys, a.value, a.support, out.support) +
                promote_to(sys, b.value, b.support, out.support);
    return out;
}

Evaluated evaluate_product(const ConcreteSystem& sys, const std::vector<MatrixFactor>& fs,
                           ExpansionMode inversion) {
    Evaluated acc{scalar_mat(1.0), {}};
    for (const auto& f : fs) acc = mul_eval(sys, acc, evaluate_factor(sys, f, inversion));
    return acc;
}

const Index* first_family_op(const Term& t) {
    const auto& pair = t.op().pair;
    if (pair.first.is_family()) return &pair.first;
    if (pair.second.is_family()) return &pair.second;
    return nullptr;
}

}  // namespace

Evaluated evaluate_term(const ConcreteSystem& sys, const Term& t, ExpansionMode inversion) {
    switch (t.kind()) {
        case Term::Kind::zero:
            return {scalar_mat(0.0), {}};
        case Term::Kind::one:
            return {scalar_mat(1.0), {}};
        case Term::Kind::product:
            return evaluate_product(sys, t.factors(), inversion);
        case Term::Kind::comm:
        case Term::Kind::trcomm: {
            if (const Index* fam = first_family_op(t)) {
                Evaluated acc{scalar_mat(0.0), {}};
                for (int s : sys.sites_of(*fam)) {
                    Index member = Index::single(sys.site_labels()[s]);
                    Term inst = substitute_bound(t, fam->letter(), member);
                    acc = add_eval(sys, acc, evaluate_term(sys, inst, inversion));
                }
                return acc;
            }
            const auto& pair = t.op().pair;
            size_t which = find_interaction(sys.spec(), t.op());
            int a = sys.site_of(pair.first);
            int b = sys.site_of(pair.second);
            std::vector<int> vsup{std::min(a, b), std::max(a, b)};
            const Mat& v = sys.pair_interaction(which, a, b);
            Evaluated x = evaluate_term(sys, t.arg(), inversion);
            std::vector<int> sup = support_union(vsup, x.support);
            Mat vp = promote_to(sys, v, vsup, sup);
            Mat xp = promote_to(sys, x.value, x.support, sup);
            Mat comm = vp * xp - xp * vp;
            if (t.kind() == Term::Kind::comm) return {std::move(comm), std::move(sup)};
            const Index& traced = t.traced_side() == Side::first ? pair.first : pair.second;
            int ts = sys.site_of(traced);
            Mat reduced = partial_trace(sys, comm, sup, {ts});
            std::vector<int> kept;
            for (int s : sup) {
                if (s != ts) kept.push_back(s);
            }
            return {std::move(reduced), std::move(kept)};
        }
        case Term::Kind::mixed: {
            Evaluated fs = evaluate_product(sys, t.factors(), inversion);
            return mul_eval(sys, fs, evaluate_term(sys, t.tail(), inversion));
        }
    }
    throw StructuralError("unevaluable term");
}

double EquationCheck::drop_residual(size_t k) const {
    Mat adjusted = total - double(signs.at(k)) * terms.at(k);
    return (lhs - adjusted).norm() / std::max(lhs_norm, eps);
}

double EquationCheck::flip_residual(size_t k) const {
    Mat adjusted = total - 2.0 * double(signs.at(k)) * terms.at(k);
    return (lhs - adjusted).norm() / std::max(lhs_norm, eps);
}

EquationCheck check_equation(const ConcreteSystem& sys, const Equation& eq,
                             ExpansionMode inversion, double eps) {
    EquationCheck out;
    out.eps = eps;
    Evaluated lhs = evaluate_factor(sys, eq.lhs, inversion);
    out.support = lhs.support;
    out.lhs = std::move(lhs.value);
    out.lhs_norm = out.lhs.norm();
    out.total = Mat::Zero(out.lhs.rows(), out.lhs.cols());
    for (const auto& st : eq.rhs) {
        Evaluated e = evaluate_term(sys, st.term, inversion);
        Mat m = promote_to(sys, e.value, e.support, out.support);
        out.term_norms.push_back(m.norm());
        out.total += double(st.sign) * m;
        out.terms.push_back(std::move(m));
        out.signs.push_back(st.sign);
    }
    out.residual = (out.lhs - out.total).norm() / std::max(out.lhs_norm, eps);
    return out;
}

namespace {

std::map<char, int> letter_needs(const SystemSpec& spec,
                                 const std::vector<std::vector<Index>>& targets) {
    std::map<char, int> need;
    for (char f : spec.families) need[f] = 1;
    for (const auto& target : targets) {
        std::map<char, int> count;
        for (const auto& ix : target) {
            if (!need.count(ix.letter())) continue;
            count[ix.letter()] += 1;
            need[ix.letter()] = std::max(need[ix.letter()], ix.ordinal());
        }
        for (const auto& [letter, c] : count) {
            need[letter] = std::max(need[letter], c + 1);
        }
    }
    return need;
}

}  // namespace

int recommended_members(const SystemSpec& spec, const std::vector<std::vector<Index>>& targets,
                        int floor) {
    int out = floor;
    for (const auto& [letter, n] : letter_needs(spec, targets)) {
        (void)letter;
        out = std::max(out, n);
    }
    return out;
}

OracleConfig tuned_config(OracleConfig base, const SystemSpec& spec,
                          const std::vector<std::vector<Index>>& targets) {
    for (const auto& [letter, n] : letter_needs(spec, targets)) {
        auto it = base.members_by.find(letter);
        int current = it == base.members_by.end() ? base.members : it->second;
        base.members_by[letter] = std::max(current, n);
    }
    return base;
}

}  // namespace bbgky
