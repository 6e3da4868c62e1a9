#include "bbgky/json_io.hpp"

#include <json.hpp>

#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

using nlohmann::json;

json index_to(const Index& ix) {
    if (ix.is_single()) {
        return json{{"kind", "single"}, {"label", ix.label()}};
    }
    return json{{"kind", "family"},
                {"letter", std::string(1, ix.letter())},
                {"excluded", ix.excluded()}};
}

Index index_from(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "single") {
        return Index::single(j.at("label").get<std::string>());
    }
    if (kind == "family") {
        const std::string letter = j.at("letter").get<std::string>();
        if (letter.size() != 1) throw Error("json: family letter must be one character");
        std::vector<std::string> excluded;
        if (j.contains("excluded")) excluded = j.at("excluded").get<std::vector<std::string>>();
        return Index::family(letter[0], std::move(excluded));
    }
    throw Error("json: unknown index kind '" + kind + "'");
}

json factor_to(const MatrixFactor& f) {
    json indices = json::array();
    for (const auto& ix : f.indices()) indices.push_back(index_to(ix));
    return json{{"kind", f.kind() == MatrixFactor::Kind::density ? "density" : "correlation"},
                {"deriv", f.deriv()},
                {"indices", std::move(indices)}};
}

MatrixFactor factor_from(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<Index> indices;
    for (const auto& e : j.at("indices")) indices.push_back(index_from(e));
    MatrixFactor f = kind == "density"       ? MatrixFactor::density(std::move(indices))
                     : kind == "correlation" ? MatrixFactor::correlation(std::move(indices))
                                             : throw Error("json: unknown matrix kind '" + kind + "'");
    if (j.value("deriv", false)) f = f.with_deriv(true);
    return f;
}

json op_to(const InteractionOp& op) {
    return json{{"first", index_to(op.pair.first)}, {"second", index_to(op.pair.second)}};
}

InteractionOp op_from(const json& j) {
    return InteractionOp{PairedIndex(index_from(j.at("first")), index_from(j.at("second")))};
}

json term_to(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::zero:
            return json{{"kind", "zero"}};
        case Term::Kind::one:
            return json{{"kind", "one"}};
        case Term::Kind::product: {
            json fs = json::array();
            for (const auto& f : t.factors()) fs.push_back(factor_to(f));
            return json{{"kind", "product"}, {"factors", std::move(fs)}};
        }
        case Term::Kind::comm:
            return json{{"kind", "comm"}, {"op", op_to(t.op())}, {"arg", term_to(t.arg())}};
        case Term::Kind::trcomm:
            return json{{"kind", "trcomm"},
                        {"op", op_to(t.op())},
                        {"traced", t.traced_side() == Side::first ? "first" : "second"},
                        {"arg", term_to(t.arg())}};
        case Term::Kind::mixed: {
            json fs = json::array();
            for (const auto& f : t.factors()) fs.push_back(factor_to(f));
            return json{{"kind", "mixed"}, {"factors", std::move(fs)}, {"tail", term_to(t.tail())}};
        }
    }
    throw StructuralError("unserializable term");
}

Term term_from(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return Term::zero();
    if (kind == "one") return Term::one();
    if (kind == "product") {
        std::vector<MatrixFactor> fs;
        for (const auto& e : j.at("factors")) fs.push_back(factor_from(e));
        return Term::product(std::move(fs));
    }
    if (kind == "comm") {
        return Term::comm(op_from(j.at("op")), term_from(j.at("arg")));
    }
    if (kind == "trcomm") {
        const std::string side = j.at("traced").get<std::string>();
        if (side != "first" && side != "second") {
            throw Error("json: traced side must be 'first' or 'second'");
        }
        return Term::trcomm(op_from(j.at("op")), side == "first" ? Side::first : Side::second,
                            term_from(j.at("arg")));
    }
    if (kind == "mixed") {
        std::vector<MatrixFactor> fs;
        for (const auto& e : j.at("factors")) fs.push_back(factor_from(e));
        return Term::mixed(std::move(fs), term_from(j.at("tail")));
    }
    throw Error("json: unknown term kind '" + kind + "'");
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("json: ") + e.what());
    }
}

std::string dump(const json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

}  // namespace

std::string term_to_json(const Term& t, int indent) { return dump(term_to(t), indent); }

std::string equation_to_json(const Equation& eq, int indent) {
    json rhs = json::array();
    for (const auto& st : eq.rhs) {
        rhs.push_back(json{{"sign", st.sign}, {"term", term_to(st.term)}});
    }
    return dump(json{{"lhs", factor_to(eq.lhs)}, {"rhs", std::move(rhs)}}, indent);
}

Term term_from_json(std::string_view text) {
    try {
        return term_from(parse_text(text));
    } catch (const json::exception& e) {
        throw Error(std::string("json: ") + e.what());
    }
}

Equation equation_from_json(std::string_view text) {
    try {
        const json j = parse_text(text);
        Equation eq{factor_from(j.at("lhs")), {}};
        for (const auto& e : j.at("rhs")) {
            int sign = e.at("sign").get<int>();
            eq.rhs.push_back({sign, term_from(e.at("term"))});
        }
        return eq;
    } catch (const json::exception& e) {
        throw Error(std::string("json: ") + e.what());
    }
}

}  // namespace bbgky
