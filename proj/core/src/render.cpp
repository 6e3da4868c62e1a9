#include "bbgky/render.hpp"

#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

std::string exclusion_tail(const Index& ix) {
    std::string out;
    if (!ix.excluded().empty()) {
        out += '/';
        for (const auto& e : ix.excluded()) out += e;
    }
    return out;
}

//index as it appears in a matrix subscript
std::string subscript(const Index& ix, bool latex) {
    if (ix.is_single()) return ix.label();
    std::string out;
    if (latex) {
        out = "\\{";
        out += ix.letter();
        out += exclusion_tail(ix);
        out += "\\}";
    } else {
        out = "{";
        out += ix.letter();
        out += "}";
        out += exclusion_tail(ix);
    }
    return out;
}

//family summation binder
std::string binder(const Index& ix, bool latex) {
    std::string out = latex ? "\\sum_{" : "sum_{";
    out += ix.letter();
    if (latex) {
        std::string tail = exclusion_tail(ix);
        out += tail;
        out += "}";
    } else {
        out += "}";
        out += exclusion_tail(ix);
    }
    return out;
}

//operator subscript: family indices appear as the bare bound letter
std::string op_subscript(const PairedIndex& pair) {
    std::string out;
    for (const Index* ix : {&pair.first, &pair.second}) {
        if (ix->is_family()) {
            out += ix->letter();
        } else {
            out += ix->label();
        }
    }
    return out;
}

std::string matrix_string(const MatrixFactor& f, bool latex) {
    std::string out;
    if (f.deriv()) {
        if (latex) {
            out += f.kind() == MatrixFactor::Kind::density ? "i\\hbar\\frac{\\partial}{\\partial t} "
                                                           : "i\\hbar\\frac{d}{dt} ";
        } else {
            out += "i hbar d/dt ";
        }
    }
    out += f.kind() == MatrixFactor::Kind::density ? (latex ? "\\rho" : "rho") : "g";
    out += latex ? "_{" : "_";
    for (const auto& ix : f.indices()) out += subscript(ix, latex);
    if (latex) out += "}";
    return out;
}

std::string term_string(const Term& t, bool latex);

std::string product_string(const std::vector<MatrixFactor>& fs, bool latex) {
    std::string out;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (i && !latex) out += " * ";
        out += matrix_string(fs[i], latex);
    }
    return out;
}

std::string op_string(const InteractionOp& op, bool latex) {
    std::string out;
    for (const Index* ix : {&op.pair.first, &op.pair.second}) {
        if (ix->is_family()) {
            out += binder(*ix, latex);
            out += ' ';
        }
    }
    out += latex ? "V_{" : "V_";
    out += op_subscript(op.pair);
    if (latex) out += "}";
    return out;
}

std::string comm_string(const Term& t, bool latex) {
    std::string out = latex ? "\\left[ " : "[ ";
    out += op_string(t.op(), latex);
    out += latex ? " , " : ", ";
    out += term_string(t.arg(), latex);
    out += latex ? " \\right]" : " ]";
    return out;
}

std::string trcomm_string(const Term& t, bool latex) {
    const PairedIndex& pair = t.op().pair;
    const Index& traced = t.traced_side() == Side::first ? pair.first : pair.second;
    std::string out;
    for (const Index* ix : {&pair.first, &pair.second}) {
        if (ix->is_family()) {
            out += binder(*ix, latex);
            out += ' ';
        }
    }
    out += latex ? "Tr_{" : "Tr_";
    if (traced.is_family()) {
        out += traced.letter();
    } else {
        out += traced.label();
    }
    if (latex) out += "}";
    out += latex ? " [ " : " [";
    out += latex ? "V_{" : "V_";
    out += op_subscript(pair);
    if (latex) out += "}";
    out += latex ? " , " : ", ";
    out += term_string(t.arg(), latex);
    out += latex ? " ]" : "]";
    return out;
}

std::string term_string(const Term& t, bool latex) {
    switch (t.kind()) {
        case Term::Kind::zero:
            return "0";
        case Term::Kind::one:
            return "1";
        case Term::Kind::product:
            return product_string(t.factors(), latex);
        case Term::Kind::comm:
            return comm_string(t, latex);
        case Term::Kind::trcomm:
            return trcomm_string(t, latex);
        case Term::Kind::mixed: {
            std::string out = product_string(t.factors(), latex);
            out += latex ? "" : " * ";
            out += term_string(t.tail(), latex);
            return out;
        }
    }
    throw StructuralError("unrenderable term");
}

std::string equation_string(const Equation& eq, bool latex) {
    std::string out = matrix_string(eq.lhs, latex);
    out += " = ";
    if (eq.rhs.empty()) {
        out += "0";
        return out;
    }
    for (size_t i = 0; i < eq.rhs.size(); ++i) {
        const auto& st = eq.rhs[i];
        if (i == 0) {
            if (st.sign < 0) out += "-";
        } else {
            out += st.sign < 0 ? " - " : " + ";
        }
        out += term_string(st.term, latex);
    }
    return out;
}

}  // namespace

std::string display(const Index& ix) {
    if (ix.is_family()) return binder(ix, false);
    return ix.label();
}

std::string display(const PairedIndex& pair) {
    std::string out = "{";
    out += display(pair.first);
    out += ", ";
    out += display(pair.second);
    out += "}";
    return out;
}

std::string display(const InteractionOp& op) { return op_string(op, false); }

std::string display(const MatrixFactor& f) { return matrix_string(f, false); }

std::string display(const Term& t) { return term_string(t, false); }

std::string display(const SignedTerm& st) {
    return st.sign < 0 ? "-" + term_string(st.term, false) : term_string(st.term, false);
}

std::string display(const Equation& eq) { return equation_string(eq, false); }

std::string to_latex(const Index& ix) {
    if (ix.is_family()) return binder(ix, true);
    return ix.label();
}

std::string to_latex(const MatrixFactor& f) { return matrix_string(f, true); }

std::string to_latex(const Term& t) { return term_string(t, true); }

std::string to_latex(const Equation& eq) { return equation_string(eq, true); }

}  // namespace bbgky
