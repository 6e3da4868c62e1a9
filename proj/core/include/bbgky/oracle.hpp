#ifndef BBGKY_ORACLE_HPP
#define BBGKY_ORACLE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "bbgky/cluster.hpp"
#include "bbgky/system.hpp"

namespace bbgky {

using Mat = Eigen::MatrixXcd;

struct OracleConfig {
    unsigned seed = 1;
    int dim = 2;                     //Hilbert-space dimension per subsystem
    std::map<char, int> dims;        //per-letter overrides
    int members = 3;                 //finite stand-in size for each family
    std::map<char, int> members_by;  //per-letter overrides
    int state_rank = 2;              //rank of the random full state; low rank
                                     //keeps high-order correlations well away
                                     //from zero
};

//A dense-matrix instantiation of a declared system: every family becomes
//`members` concrete subsystems, the full state is a seeded random density
//matrix, and every interaction pair instance gets an independent seeded
//random Hermitian coupling.  All derived objects (reduced matrices,
//correlation matrices, their time derivatives) are computed from the full
//state exactly, with no integration.
class ConcreteSystem {
public:
    ConcreteSystem(SystemSpec spec, OracleConfig cfg);

    const SystemSpec& spec() const { return spec_; }
    const OracleConfig& config() const { return cfg_; }

    int site_count() const { return static_cast<int>(labels_.size()); }
    long dimension() const { return dimension_; }
    const std::vector<std::string>& site_labels() const { return labels_; }
    int dim_of(int site) const { return site_dims_[site]; }
    int members_of(char letter) const;

    int site_of(const Index& single) const;
    //concrete sites an index stands for: one for a single, all non-excluded
    //members for a family
    std::vector<int> sites_of(const Index& ix) const;

    const Mat& state() const { return state_; }
    //d/dt of the full state from the equation of motion, hbar = 1
    const Mat& state_deriv() const { return state_deriv_; }
    const Mat& total_interaction() const { return total_v_; }
    const Mat& pair_interaction(size_t interaction, int site_a, int site_b) const;

    //a matrix with its time derivative on an explicit support
    struct Block {
        Mat value;
        Mat deriv;
        std::vector<int> support;
    };

    //reduced density matrix over the given sites (ascending)
    const Block& reduced(const std::vector<int>& sites) const;
    //correlation matrix: with ursell inversion the full set-partition
    //cumulant; with paper inversion the remainder of the single-correlation
    //expansion (the two agree below four sites)
    const Block& correlation(const std::vector<int>& sites, ExpansionMode inversion) const;

private:
    uint64_t mask_of(const std::vector<int>& sites) const;
    const Block& correlation_locked(uint64_t mask, ExpansionMode inversion) const;
    Block build_correlation(uint64_t mask, ExpansionMode inversion) const;
    const Block& reduced_locked(uint64_t mask) const;

    SystemSpec spec_;
    OracleConfig cfg_;
    std::vector<std::string> labels_;
    std::vector<int> site_dims_;
    std::map<std::string, int> site_by_label_;
    long dimension_ = 1;
    Mat state_, state_deriv_, total_v_;
    std::map<std::tuple<size_t, int, int>, Mat> pair_v_;
    mutable std::mutex cache_mu_;
    mutable std::map<uint64_t, Block> reduced_cache_;
    mutable std::map<uint64_t, Block> corr_cache_[2];
};

//site-list helpers; lists are ascending site positions without duplicates
std::vector<int> support_union(const std::vector<int>& a, const std::vector<int>& b);
//tensor m (living on sites `from`) with identities so it lives on `to`
Mat promote_to(const ConcreteSystem& sys, const Mat& m, const std::vector<int>& from,
               const std::vector<int>& to);
//contract the `traced` sites out of m
Mat partial_trace(const ConcreteSystem& sys, const Mat& m, const std::vector<int>& from,
                  const std::vector<int>& traced);

struct Evaluated {
    Mat value;
    std::vector<int> support;
};

//numeric value of a term: family sums run over the concrete members,
//deriv-flagged factors contribute their time derivative
Evaluated evaluate_term(const ConcreteSystem& sys, const Term& t, ExpansionMode inversion);
Evaluated evaluate_factor(const ConcreteSystem& sys, const MatrixFactor& f,
                          ExpansionMode inversion);

//residual of one equation plus enough per-term detail to run mutation
//probes (dropping or sign-flipping single terms) without re-evaluating
struct EquationCheck {
    double residual = 0;
    double lhs_norm = 0;
    std::vector<double> term_norms;
    double eps = 1e-12;

    double drop_residual(size_t k) const;
    double flip_residual(size_t k) const;

    Mat lhs;
    Mat total;
    std::vector<Mat> terms;
    std::vector<int> signs;
    std::vector<int> support;
};

EquationCheck check_equation(const ConcreteSystem& sys, const Equation& eq,
                             ExpansionMode inversion, double eps = 1e-12);

//family size needed so every refined sum keeps at least one member
int recommended_members(const SystemSpec& spec, const std::vector<std::vector<Index>>& targets,
                        int floor = 3);

//per-letter family sizes for the given targets: each family letter gets at
//least one member more than the target uses, without inflating the other
//letters and the total Hilbert-space dimension
OracleConfig tuned_config(OracleConfig base, const SystemSpec& spec,
                          const std::vector<std::vector<Index>>& targets);

}  // namespace bbgky

#endif
