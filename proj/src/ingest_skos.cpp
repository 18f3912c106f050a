// Restricted Turtle reader: @prefix directives and plain triples with ';' and
// ',' continuations over the skos label/hierarchy/association predicates.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "kosq/ingest.hpp"
#include "text.hpp"

namespace kosq {

namespace {

constexpr std::string_view kSkosNs = "http://www.w3.org/2004/02/skos/core#";
constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class Tok { Iri, PName, String, Dot, Semicolon, Comma, Prefix, A, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // IRI body, prefixed name, or unescaped literal
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        switch (c) {
            case '.': advance(); t.kind = Tok::Dot; return t;
            case ';': advance(); t.kind = Tok::Semicolon; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case '<': t.kind = Tok::Iri; t.text = read_iri(); return t;
            case '"': t.kind = Tok::String; t.text = read_string(); return t;
            case '@': {
                auto word = read_word(1);
                if (word == "@prefix") {
                    t.kind = Tok::Prefix;
                    return t;
                }
                fail(t, "unsupported directive '" + word + "'");
            }
            case '[': case ']': fail(t, "blank-node property lists are outside the supported subset");
            case '(': case ')': fail(t, "collections are outside the supported subset");
            case '{': case '}': fail(t, "named graphs are outside the supported subset");
            case '\'': fail(t, "single-quoted literals are outside the supported subset");
            default: break;
        }
        if ((c >= '0' && c <= '9') || c == '+' || c == '-')
            fail(t, "numeric literals are outside the supported subset");
        if (c == '_' && pos_ + 1 < src_.size() && src_[pos_ + 1] == ':')
            fail(t, "blank nodes are outside the supported subset");
        auto word = read_word(0);
        if (word.empty()) fail(t, std::string("unexpected character '") + c + "'");
        if (word == "a") {
            t.kind = Tok::A;
            return t;
        }
        if (word.find(':') == std::string::npos) {
            if (word == "true" || word == "false")
                fail(t, "boolean literals are outside the supported subset");
            fail(t, "unsupported keyword '" + word + "'");
        }
        t.kind = Tok::PName;
        t.text = std::move(word);
        return t;
    }

    // Language tag or datatype directly after a string literal.
    void skip_literal_suffix(const Token& lit) {
        if (pos_ < src_.size() && src_[pos_] == '@') {
            advance();
            std::size_t n = 0;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '-')) {
                advance();
                ++n;
            }
            if (n == 0) fail(lit, "empty language tag");
        } else if (src_.substr(pos_, 2) == "^^") {
            fail(lit, "typed literals are outside the supported subset");
        }
    }

    [[noreturn]] void fail(const Token& at, std::string message) const {
        const auto lines = text::split_lines(src_);
        std::string snip = at.line - 1 < lines.size() ? text::snippet(lines[at.line - 1]) : "";
        throw ParseError(at.line, at.column, std::move(message), std::move(snip));
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token here() const {
        Token t;
        t.line = line_;
        t.column = col_;
        return t;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (text::is_space(c)) {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string read_word(std::size_t already) {
        std::string out;
        for (std::size_t i = 0; i < already; ++i) {
            out.push_back(src_[pos_]);
            advance();
        }
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (text::is_space(c) || c == ';' || c == ',' || c == '<' || c == '"' || c == '#' ||
                c == '[' || c == ']' || c == '(' || c == ')' || c == '{' || c == '}')
                break;
            // A '.' ends the name unless more name characters follow.
            if (c == '.' && (pos_ + 1 >= src_.size() || text::is_space(src_[pos_ + 1]) ||
                             src_[pos_ + 1] == '#'))
                break;
            out.push_back(c);
            advance();
        }
        return out;
    }

    std::string read_iri() {
        const Token start = here();
        advance();
        std::string out;
        while (true) {
            if (pos_ >= src_.size()) fail(start, "unterminated IRI");
            const char c = src_[pos_];
            if (c == '>') {
                advance();
                return out;
            }
            if (text::is_space(c) || c == '<' || c == '"') fail(start, "malformed IRI");
            out.push_back(c);
            advance();
        }
    }

    std::string read_string() {
        const Token start = here();
        if (src_.substr(pos_, 3) == "\"\"\"")
            fail(start, "long literals are outside the supported subset");
        advance();
        std::string out;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail(start, "unterminated string");
            const char c = src_[pos_];
            if (c == '"') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size()) fail(start, "unterminated string");
                const char e = src_[pos_];
                switch (e) {
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    case '\'': out.push_back('\''); break;
                    case 'n': case 'r': case 't': out.push_back(' '); break;
                    default: fail(here(), std::string("unsupported escape '\\") + e + "'");
                }
                advance();
                continue;
            }
            out.push_back(c);
            advance();
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Node {
    ConceptId id;
    std::optional<std::string> pref;
    std::vector<std::string> alts;
};

class SkosParser {
public:
    SkosParser(std::string_view src, std::string name) : lex_(src), name_(std::move(name)) {}

    Kos run() {
        advance();
        while (tok_.kind != Tok::End) {
            if (tok_.kind == Tok::Prefix) {
                prefix_directive();
            } else {
                triples();
            }
        }
        return build();
    }

private:
    void advance() { tok_ = lex_.next(); }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) lex_.fail(tok_, std::string("expected ") + what);
        advance();
    }

    void prefix_directive() {
        advance();
        if (tok_.kind != Tok::PName || tok_.text.back() != ':')
            lex_.fail(tok_, "expected prefix name ending in ':'");
        auto prefix = tok_.text.substr(0, tok_.text.size() - 1);
        advance();
        if (tok_.kind != Tok::Iri) lex_.fail(tok_, "expected IRI after prefix name");
        prefixes_[prefix] = tok_.text;
        advance();
        expect(Tok::Dot, "'.' after @prefix");
    }

    std::string expand(const Token& t) {
        if (t.kind == Tok::Iri) return t.text;
        if (t.kind != Tok::PName) lex_.fail(t, "expected IRI or prefixed name");
        const auto colon = t.text.find(':');
        auto it = prefixes_.find(t.text.substr(0, colon));
        if (it == prefixes_.end())
            lex_.fail(t, "undeclared prefix '" + t.text.substr(0, colon) + "'");
        return it->second + t.text.substr(colon + 1);
    }

    std::size_t node_for(const Token& t) {
        const auto iri = expand(t);
        if (auto it = by_iri_.find(iri); it != by_iri_.end()) return it->second;
        const auto cut = iri.find_last_of("#/");
        std::string local = cut == std::string::npos ? iri : iri.substr(cut + 1);
        if (!is_valid_id(local)) lex_.fail(t, "IRI '" + iri + "' has no usable local name");
        if (auto [it, fresh] = local_owner_.emplace(local, iri); !fresh)
            lex_.fail(t, "local name '" + local + "' used by two IRIs (" + it->second + ", " +
                             iri + ")");
        by_iri_.emplace(iri, nodes_.size());
        nodes_.push_back(Node{local, std::nullopt, {}});
        return nodes_.size() - 1;
    }

    void triples() {
        const Token subject_tok = tok_;
        const auto subject = node_for(subject_tok);
        advance();
        while (true) {
            predicate_objects(subject);
            if (tok_.kind == Tok::Semicolon) {
                while (tok_.kind == Tok::Semicolon) advance();
                if (tok_.kind == Tok::Dot) break;
                continue;
            }
            break;
        }
        expect(Tok::Dot, "'.' or ';' after object list");
    }

    void predicate_objects(std::size_t subject) {
        const Token pred_tok = tok_;
        std::string pred;
        if (tok_.kind == Tok::A) {
            pred = std::string(kRdfType);
        } else {
            pred = expand(tok_);
        }
        advance();
        std::string_view local;
        if (pred == kRdfType) {
            local = "type";
        } else if (pred.compare(0, kSkosNs.size(), kSkosNs) == 0) {
            local = std::string_view(pred).substr(kSkosNs.size());
        }
        if (local != "type" && local != "prefLabel" && local != "altLabel" && local != "broader" &&
            local != "narrower" && local != "related")
            lex_.fail(pred_tok, "predicate <" + pred + "> is outside the supported subset");

        while (true) {
            object(subject, local);
            if (tok_.kind != Tok::Comma) break;
            advance();
        }
    }

    void object(std::size_t subject, std::string_view pred) {
        const Token obj = tok_;
        if (pred == "prefLabel" || pred == "altLabel") {
            if (obj.kind != Tok::String) lex_.fail(obj, "label value must be a string literal");
            lex_.skip_literal_suffix(obj);
            advance();
            std::string label(text::trim(obj.text));
            if (label.empty()) lex_.fail(obj, "empty label");
            Node& n = nodes_[subject];
            if (pred == "prefLabel" && !n.pref) {
                n.pref = std::move(label);
            } else {
                n.alts.push_back(std::move(label));
            }
            return;
        }
        if (obj.kind != Tok::Iri && obj.kind != Tok::PName)
            lex_.fail(obj, "object of " + std::string(pred) + " must be an IRI");
        if (pred == "type") {
            if (expand(obj) != std::string(kSkosNs) + "Concept")
                lex_.fail(obj, "only 'a skos:Concept' type statements are supported");
            advance();
            return;
        }
        const auto other = node_for(obj);
        advance();
        const auto& s = nodes_[subject].id;
        const auto& o = nodes_[other].id;
        if (pred == "broader") {
            forward_.push_back({s, o, kHyponymy});
        } else if (pred == "narrower") {
            backward_.push_back({o, s, kHyponymy});
        } else {
            forward_.push_back({s, o, kAssociation});
        }
    }

    Kos build() {
        std::vector<Concept> concepts;
        concepts.reserve(nodes_.size());
        for (auto& n : nodes_) {
            Concept c;
            c.id = n.id;
            c.preferred_label = n.pref.value_or(n.id);
            const auto pref = normalize_label(c.preferred_label);
            std::set<std::string> seen{pref};
            for (auto& alt : n.alts)
                if (seen.insert(normalize_label(alt)).second) c.alt_labels.push_back(alt);
            concepts.push_back(std::move(c));
        }
        std::set<RelationEdge> stated(forward_.begin(), forward_.end());
        std::vector<RelationEdge> edges = forward_;
        for (auto& e : backward_)
            if (!stated.count(e)) edges.push_back(e);
        try {
            return Kos(name_, KosKind::Thesaurus, std::move(concepts), std::move(edges));
        } catch (const KosError& e) {
            throw ParseError(1, 1, e.what(), "");
        }
    }

    Lexer lex_;
    std::string name_;
    Token tok_;
    std::map<std::string, std::string> prefixes_;
    std::unordered_map<std::string, std::size_t> by_iri_;
    std::unordered_map<std::string, std::string> local_owner_;
    std::vector<Node> nodes_;
    std::vector<RelationEdge> forward_;
    std::vector<RelationEdge> backward_;
};

}  // namespace

Kos parse_skos_subset(std::string_view source, std::string name) {
    return SkosParser(source, std::move(name)).run();
}

}  // namespace kosq
