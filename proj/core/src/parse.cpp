#include "bbgky/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

struct Token {
    std::string text;
    size_t col;  //1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#') {
            ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& filename) : file_(filename) {}

    void feed_line(std::string_view line) {
        ++lineno_;
        auto toks = tokenize(line);
        if (toks.empty()) return;
        const Token& head = toks[0];
        if (head.text == "family") {
            parse_family(toks);
        } else if (head.text == "single") {
            parse_single(toks);
        } else if (head.text == "interact") {
            parse_interact(toks);
        } else if (head.text == "derive") {
            parse_derive(toks);
        } else {
            fail(head, "unknown directive '" + head.text + "'");
        }
    }

    ParsedSpec finish() && { return std::move(result_); }

private:
    [[noreturn]] void fail(const Token& at, const std::string& what) const {
        throw ParseError(file_, lineno_, at.col, what);
    }

    void want_args(const std::vector<Token>& toks, size_t n) const {
        if (toks.size() != n + 1) {
            fail(toks[0], "'" + toks[0].text + "' takes " + std::to_string(n) +
                              (n == 1 ? " argument" : " arguments"));
        }
    }

    std::pair<char, int> label_of(const Token& tok) const {
        try {
            return split_label(tok.text);
        } catch (const Error& e) {
            fail(tok, e.what());
        }
    }

    void parse_family(const std::vector<Token>& toks) {
        want_args(toks, 1);
        const Token& tok = toks[1];
        auto [letter, ordinal] = label_of(tok);
        if (ordinal != 0) fail(tok, "family name must be a bare letter");
        if (families_.count(letter)) fail(tok, std::string("family '") + letter + "' already declared");
        if (single_letters_.count(letter)) {
            fail(tok, std::string("letter '") + letter + "' already names single subsystems");
        }
        families_.insert(letter);
        result_.system.families.push_back(letter);
    }

    void parse_single(const std::vector<Token>& toks) {
        want_args(toks, 1);
        const Token& tok = toks[1];
        auto [letter, ordinal] = label_of(tok);
        if (ordinal == 0) fail(tok, "subsystem name needs an ordinal, like 'A1'");
        if (families_.count(letter)) {
            fail(tok, std::string("letter '") + letter + "' already names a family");
        }
        if (!singles_.insert(tok.text).second) {
            fail(tok, "subsystem '" + tok.text + "' already declared");
        }
        single_letters_.insert(letter);
        result_.system.singles.push_back(Index::single(tok.text));
    }

    Index interaction_index(const Token& tok) const {
        auto [letter, ordinal] = label_of(tok);
        if (ordinal == 0) {
            if (!families_.count(letter)) {
                fail(tok, std::string("undeclared family '") + letter + "'");
            }
            return Index::family(letter);
        }
        if (!singles_.count(tok.text)) {
            fail(tok, "undeclared subsystem '" + tok.text + "'");
        }
        return Index::single(tok.text);
    }

    void parse_interact(const std::vector<Token>& toks) {
        want_args(toks, 2);
        Index a = interaction_index(toks[1]);
        Index b = interaction_index(toks[2]);
        if (a.letter() == b.letter()) {
            fail(toks[2], "interaction must couple two different letters");
        }
        std::pair<std::string, std::string> key{a.label(), b.label()};
        if (key.second < key.first) std::swap(key.first, key.second);
        if (!interactions_.insert(key).second) {
            fail(toks[1], "interaction '" + a.label() + " " + b.label() + "' already declared");
        }
        result_.system.interactions.emplace_back(std::move(a), std::move(b));
    }

    void parse_derive(const std::vector<Token>& toks) {
        if (toks.size() < 2) fail(toks[0], "'derive' needs at least one index");
        std::vector<Index> target;
        std::set<std::string> seen;
        for (size_t i = 1; i < toks.size(); ++i) {
            const Token& tok = toks[i];
            auto [letter, ordinal] = label_of(tok);
            if (ordinal == 0) fail(tok, "target index needs an ordinal, like 'F1'");
            if (!seen.insert(tok.text).second) fail(tok, "target repeats '" + tok.text + "'");
            if (families_.count(letter)) {
                target.push_back(Index::single(tok.text));
            } else if (singles_.count(tok.text)) {
                target.push_back(Index::single(tok.text));
            } else {
                fail(tok, "undeclared subsystem '" + tok.text + "'");
            }
        }
        result_.targets.push_back(std::move(target));
    }

    std::string file_;
    size_t lineno_ = 0;
    ParsedSpec result_;
    std::set<char> families_;
    std::set<std::string> singles_;
    std::set<char> single_letters_;
    std::set<std::pair<std::string, std::string>> interactions_;
};

}  // namespace

ParsedSpec parse_spec(std::string_view text, const std::string& filename) {
    Parser p(filename);
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            p.feed_line(text.substr(pos));
            break;
        }
        p.feed_line(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    ParsedSpec parsed = std::move(p).finish();
    validate_system(parsed.system);
    for (const auto& t : parsed.targets) validate_target(parsed.system, t);
    return parsed;
}

ParsedSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

std::string render_spec(const ParsedSpec& parsed) {
    std::string out;
    for (char c : parsed.system.families) {
        out += "family ";
        out += c;
        out += '\n';
    }
    for (const auto& s : parsed.system.singles) {
        out += "single " + s.label() + "\n";
    }
    for (const auto& pi : parsed.system.interactions) {
        out += "interact " + pi.first.label() + " " + pi.second.label() + "\n";
    }
    for (const auto& t : parsed.targets) {
        out += "derive";
        for (const auto& ix : t) out += " " + ix.label();
        out += '\n';
    }
    return out;
}

}  // namespace bbgky
