#include "synchro/io.hpp"

#include <algorithm>
#include <cctype>

namespace synchro {

std::string to_string(ParseErrorCode code)
{
    switch (code) {
    case ParseErrorCode::syntax: return "syntax";
    case ParseErrorCode::unresolved_reference: return "unresolved-reference";
    case ParseErrorCode::duplicate_name: return "duplicate-name";
    case ParseErrorCode::invalid: return "invalid";
    case ParseErrorCode::unsupported_version: return "unsupported-version";
    case ParseErrorCode::missing_system: return "missing-system";
    }
    return "unknown";
}

std::string to_string(const ParseError& e)
{
    return std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + to_string(e.code) + ": " + e.message;
}

namespace {

// ---------------------------------------------------------------- lexing

enum class Tok {
    word,
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rbracket,
    semicolon,
    colon,
    equals,
    star,
    amp,
    pipe,
    bang,
    dot,
    dash,
    arrow,
    end,
};

struct Pos {
    int line = 1;
    int column = 1;
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Pos pos;
};

struct Failure {
    ParseError error;
};

[[noreturn]] void fail(ParseErrorCode code, Pos pos, std::string message)
{
    throw Failure{{code, pos.line, pos.column, std::move(message)}};
}

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    Pos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    auto word_char = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.pos = pos;
        if (word_char(c)) {
            std::size_t j = i;
            while (j < text.size() && word_char(text[j])) ++j;
            t.kind = Tok::word;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Tok::arrow;
            t.text = "->";
            advance(2);
            out.push_back(std::move(t));
            continue;
        }
        switch (c) {
        case '{': t.kind = Tok::lbrace; break;
        case '}': t.kind = Tok::rbrace; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case '[': t.kind = Tok::lbracket; break;
        case ']': t.kind = Tok::rbracket; break;
        case ';': t.kind = Tok::semicolon; break;
        case ':': t.kind = Tok::colon; break;
        case '=': t.kind = Tok::equals; break;
        case '*': t.kind = Tok::star; break;
        case '&': t.kind = Tok::amp; break;
        case '|': t.kind = Tok::pipe; break;
        case '!': t.kind = Tok::bang; break;
        case '.': t.kind = Tok::dot; break;
        case '-': t.kind = Tok::dash; break;
        default: {
            unsigned char u = static_cast<unsigned char>(c);
            std::string shown = std::isprint(u) ? std::string("'") + c + "'" : "byte " + std::to_string(u);
            fail(ParseErrorCode::syntax, pos, "unexpected character " + shown);
        }
        }
        t.text = std::string(1, c);
        advance(1);
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::end;
    end.pos = pos;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------- raw syntax

struct Name {
    std::string text;
    Pos pos;
};

struct RawEdge {
    Name source;
    Name label;
    Name target;
};

struct RawAnnotation {
    std::string kind; // letter, under, pair
    Name value;       // empty text for a bare `letter`
    Pos pos;
};

struct RawElement {
    Name name;
    std::vector<RawAnnotation> annotations;
};

struct RawSet {
    Name name;
    std::vector<RawElement> elements;
};

struct RawGraph {
    Name name;
    Name universe;
    std::vector<Name> labels;
    std::vector<RawEdge> edges;
};

struct RawState {
    Name name;
    bool initial = false;
};

struct RawAutomaton {
    Name name;
    std::vector<RawState> states;
    std::vector<RawEdge> edges;
};

enum class RefKind { label, element, graph };

struct GuardRef {
    RefKind kind;
    Name name;
};

struct RawCState {
    Name name;
    bool whole = false;
    Name set;
    std::vector<Name> elements;
};

struct RawCTrans {
    Name source;
    Guard guard;
    std::vector<GuardRef> refs;
    Name target;
};

struct RawCompact {
    Name name;
    Name universe;
    std::vector<RawCState> cstates;
    std::vector<Name> initials;
    bool has_init = false;
    std::vector<RawCTrans> transitions;
};

struct RawDocument {
    std::optional<Name> version;
    std::vector<std::pair<Pos, std::vector<Name>>> alphabets;
    std::vector<RawSet> sets;
    std::vector<RawGraph> graphs;
    std::vector<RawAutomaton> automata;
    std::vector<RawCompact> compacts;
    std::vector<std::pair<Pos, std::vector<Name>>> systems;
};

constexpr int kMaxGuardDepth = 200;

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    RawDocument parse()
    {
        RawDocument doc;
        if (peek_word("format")) {
            next();
            Token v = expect(Tok::word, "a format version");
            doc.version = Name{v.text, v.pos};
        }
        while (peek().kind != Tok::end) {
            Token head = expect(Tok::word, "a declaration keyword");
            if (head.text == "alphabet") {
                doc.alphabets.emplace_back(head.pos, name_list());
            } else if (head.text == "set") {
                doc.sets.push_back(set_decl());
            } else if (head.text == "graph") {
                doc.graphs.push_back(graph_decl());
            } else if (head.text == "automaton") {
                doc.automata.push_back(automaton_decl());
            } else if (head.text == "compact") {
                doc.compacts.push_back(compact_decl());
            } else if (head.text == "system") {
                doc.systems.emplace_back(head.pos, name_list());
            } else if (head.text == "format") {
                fail(ParseErrorCode::syntax, head.pos, "'format' must come first");
            } else {
                fail(ParseErrorCode::syntax, head.pos, "unknown declaration '" + head.text + "'");
            }
        }
        return doc;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t k = std::min(index_ + ahead, tokens_.size() - 1);
        return tokens_[k];
    }

    bool peek_word(const char* w) const { return peek().kind == Tok::word && peek().text == w; }

    Token next()
    {
        Token t = peek();
        if (index_ < tokens_.size() - 1) ++index_;
        return t;
    }

    static std::string describe(const Token& t)
    {
        return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    }

    Token expect(Tok kind, const char* what)
    {
        if (peek().kind != kind) fail(ParseErrorCode::syntax, peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
        return next();
    }

    void expect_word(const char* w)
    {
        if (!peek_word(w)) fail(ParseErrorCode::syntax, peek().pos, std::string("expected '") + w + "', found " + describe(peek()));
        next();
    }

    Name identifier(const char* what)
    {
        Token t = expect(Tok::word, what);
        if (!is_identifier(t.text)) fail(ParseErrorCode::syntax, t.pos, "'" + t.text + "' is not a valid name");
        return {t.text, t.pos};
    }

    void skip_semicolon()
    {
        if (peek().kind == Tok::semicolon) next();
    }

    std::vector<Name> name_list()
    {
        expect(Tok::lbrace, "'{'");
        std::vector<Name> out;
        while (peek().kind != Tok::rbrace) out.push_back(identifier("a name or '}'"));
        next();
        return out;
    }

    RawEdge edge()
    {
        RawEdge e;
        e.source = identifier("a state name");
        expect(Tok::dash, "'-'");
        e.label = identifier("a label");
        expect(Tok::arrow, "'->'");
        e.target = identifier("a state name");
        return e;
    }

    std::vector<RawEdge> edge_block()
    {
        expect(Tok::lbrace, "'{'");
        std::vector<RawEdge> out;
        while (peek().kind != Tok::rbrace) out.push_back(edge());
        next();
        return out;
    }

    RawSet set_decl()
    {
        RawSet s;
        s.name = identifier("a set name");
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) {
            RawElement e;
            e.name = identifier("an element name or '}'");
            while (peek().kind == Tok::colon) {
                next();
                Token kind = expect(Tok::word, "an annotation");
                RawAnnotation a;
                a.kind = kind.text;
                a.pos = kind.pos;
                if (kind.text == "letter") {
                    if (peek().kind == Tok::equals) {
                        next();
                        a.value = identifier("a letter");
                    }
                } else if (kind.text == "under" || kind.text == "pair") {
                    expect(Tok::equals, "'='");
                    a.value = identifier(kind.text == "under" ? "a letter" : "an element");
                } else {
                    fail(ParseErrorCode::syntax, kind.pos, "unknown annotation '" + kind.text + "'");
                }
                e.annotations.push_back(std::move(a));
            }
            s.elements.push_back(std::move(e));
        }
        next();
        return s;
    }

    RawGraph graph_decl()
    {
        RawGraph g;
        g.name = identifier("a graph name");
        expect_word("over");
        g.universe = identifier("a set name");
        expect_word("labels");
        g.labels = name_list();
        g.edges = edge_block();
        return g;
    }

    RawAutomaton automaton_decl()
    {
        RawAutomaton a;
        a.name = identifier("an automaton name");
        expect(Tok::lbrace, "'{'");
        expect_word("states");
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) {
            RawState s;
            s.name = identifier("a state name or '}'");
            if (peek().kind == Tok::star) {
                next();
                s.initial = true;
            }
            a.states.push_back(std::move(s));
        }
        next();
        if (peek_word("trans")) {
            next();
            a.edges = edge_block();
        }
        expect(Tok::rbrace, "'}'");
        return a;
    }

    RawCompact compact_decl()
    {
        RawCompact c;
        c.name = identifier("a compact automaton name");
        expect_word("over");
        c.universe = identifier("a set name");
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) {
            Token item = expect(Tok::word, "'cstate', 'init', 'ctrans' or '}'");
            if (item.text == "cstate") {
                RawCState s;
                s.name = identifier("a compact state name");
                expect(Tok::equals, "'='");
                if (peek().kind == Tok::lbrace) {
                    s.elements = name_list();
                } else {
                    s.whole = true;
                    s.set = identifier("a set name or '{'");
                }
                c.cstates.push_back(std::move(s));
            } else if (item.text == "init") {
                if (c.has_init) fail(ParseErrorCode::duplicate_name, item.pos, "second 'init' in compact " + c.name.text);
                c.has_init = true;
                c.initials = name_list();
            } else if (item.text == "ctrans") {
                RawCTrans t;
                t.source = identifier("a compact state name");
                expect(Tok::dash, "'-['");
                expect(Tok::lbracket, "'['");
                t.guard = guard(t.refs, 0);
                expect(Tok::rbracket, "']'");
                expect(Tok::arrow, "'->'");
                t.target = identifier("a compact state name");
                c.transitions.push_back(std::move(t));
            } else {
                fail(ParseErrorCode::syntax, item.pos, "unknown compact item '" + item.text + "'");
            }
            skip_semicolon();
        }
        next();
        return c;
    }

    Guard guard(std::vector<GuardRef>& refs, int depth)
    {
        if (depth > kMaxGuardDepth) fail(ParseErrorCode::syntax, peek().pos, "guard nested too deeply");
        Guard g = conjunction(refs, depth);
        while (peek().kind == Tok::pipe) {
            next();
            g = std::move(g) || conjunction(refs, depth);
        }
        return g;
    }

    Guard conjunction(std::vector<GuardRef>& refs, int depth)
    {
        Guard g = unary(refs, depth);
        while (peek().kind == Tok::amp) {
            next();
            g = std::move(g) && unary(refs, depth);
        }
        return g;
    }

    Guard unary(std::vector<GuardRef>& refs, int depth)
    {
        if (depth > kMaxGuardDepth) fail(ParseErrorCode::syntax, peek().pos, "guard nested too deeply");
        if (peek().kind == Tok::bang) {
            next();
            return !unary(refs, depth + 1);
        }
        if (peek().kind == Tok::lparen) {
            next();
            Guard g = guard(refs, depth + 1);
            expect(Tok::rparen, "')'");
            return g;
        }
        Token head = expect(Tok::word, "a guard atom");
        if (head.text == "true") return Guard::truth();
        if (head.text == "label") {
            if (peek_word("src") && peek(1).kind == Tok::dot) {
                next();
                next();
                Token which = expect(Tok::word, "'name' or 'under'");
                if (which.text == "name") return Guard::label_is_source_name();
                if (which.text == "under") return Guard::label_is_source_underlying();
                fail(ParseErrorCode::syntax, which.pos, "expected 'name' or 'under' after 'src.'");
            }
            Name l = identifier("a label");
            refs.push_back({RefKind::label, l});
            return Guard::label_is(l.text == "tau" ? Label::tau() : Label::letter(l.text));
        }
        if (head.text == "target") {
            if (peek_word("counterpart")) {
                next();
                return Guard::target_is_counterpart();
            }
            Name e = identifier("an element");
            refs.push_back({RefKind::element, e});
            return Guard::target_is(e.text);
        }
        if (head.text == "src") {
            Name e = identifier("an element");
            refs.push_back({RefKind::element, e});
            return Guard::source_is(e.text);
        }
        if (head.text == "edge") {
            Name g = identifier("a graph name");
            refs.push_back({RefKind::graph, g});
            return Guard::edge_in(g.text);
        }
        fail(ParseErrorCode::syntax, head.pos, "unknown guard atom '" + head.text + "'");
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

// ---------------------------------------------------------------- resolution

class Resolver {
public:
    ParseResult run(const RawDocument& raw)
    {
        if (raw.version) {
            if (raw.version->text != std::to_string(kFormatVersion)) {
                error(ParseErrorCode::unsupported_version, raw.version->pos,
                      "unsupported format version '" + raw.version->text + "'");
                return finish();
            }
        }
        alphabet(raw);
        for (const auto& s : raw.sets) set(s);
        for (const auto& g : raw.graphs) graph(g);
        for (const auto& a : raw.automata) automaton(a);
        for (const auto& c : raw.compacts) compact(c);
        system(raw);
        return finish();
    }

private:
    void error(ParseErrorCode code, Pos pos, std::string message)
    {
        errors_.push_back({code, pos.line, pos.column, std::move(message)});
    }

    ParseResult finish()
    {
        ParseResult r;
        std::stable_sort(errors_.begin(), errors_.end(), [](const ParseError& a, const ParseError& b) {
            return std::tie(a.line, a.column) < std::tie(b.line, b.column);
        });
        r.errors = std::move(errors_);
        if (r.errors.empty()) r.document = std::move(doc_);
        return r;
    }

    bool known_label(const Name& n)
    {
        if (n.text == "tau" || doc_.alphabet.contains_letter(n.text)) return true;
        error(ParseErrorCode::unresolved_reference, n.pos, "label '" + n.text + "' is not declared in the alphabet");
        return false;
    }

    Label label_of(const Name& n) { return n.text == "tau" ? Label::tau() : Label::letter(n.text); }

    void alphabet(const RawDocument& raw)
    {
        if (raw.alphabets.size() > 1) {
            error(ParseErrorCode::duplicate_name, raw.alphabets[1].first, "second alphabet declaration");
        }
        if (raw.alphabets.empty()) return;
        std::set<std::string> letters;
        for (const auto& n : raw.alphabets.front().second) {
            if (n.text == "tau") {
                error(ParseErrorCode::syntax, n.pos, "'tau' is implicit and may not be declared as a letter");
            } else if (!letters.insert(n.text).second) {
                error(ParseErrorCode::duplicate_name, n.pos, "letter '" + n.text + "' declared twice");
            }
        }
        doc_.alphabet = Alphabet(std::move(letters));
    }

    void set(const RawSet& raw)
    {
        if (doc_.sets.count(raw.name.text)) {
            error(ParseErrorCode::duplicate_name, raw.name.pos, "set '" + raw.name.text + "' declared twice");
            return;
        }
        ElementUniverse u;
        u.name = raw.name.text;
        for (const auto& e : raw.elements) {
            if (e.name.text == "counterpart") {
                error(ParseErrorCode::syntax, e.name.pos, "element name 'counterpart' is reserved");
            }
            if (!u.elements.insert(e.name.text).second) {
                error(ParseErrorCode::duplicate_name, e.name.pos, "element '" + e.name.text + "' declared twice");
            }
        }
        for (const auto& e : raw.elements) {
            for (const auto& a : e.annotations) {
                if (a.kind == "letter") {
                    const std::string& letter = a.value.text.empty() ? e.name.text : a.value.text;
                    if (!doc_.alphabet.contains_letter(letter)) {
                        error(ParseErrorCode::unresolved_reference, a.value.text.empty() ? e.name.pos : a.value.pos,
                              "element '" + e.name.text + "' links to undeclared letter '" + letter + "'");
                    }
                    u.linked_letter[e.name.text] = letter;
                } else if (a.kind == "under") {
                    if (!doc_.alphabet.contains_letter(a.value.text)) {
                        error(ParseErrorCode::unresolved_reference, a.value.pos,
                              "element '" + e.name.text + "' refers to undeclared letter '" + a.value.text + "'");
                    }
                    u.underlying_letter[e.name.text] = a.value.text;
                } else {
                    if (!u.elements.count(a.value.text)) {
                        error(ParseErrorCode::unresolved_reference, a.value.pos,
                              "element '" + e.name.text + "' is paired with undeclared element '" + a.value.text + "'");
                        continue;
                    }
                    if (a.value.text == e.name.text) {
                        error(ParseErrorCode::invalid, a.value.pos, "element '" + e.name.text + "' is paired with itself");
                        continue;
                    }
                    for (const auto& [x, y] : {std::pair{e.name.text, a.value.text}, std::pair{a.value.text, e.name.text}}) {
                        auto [it, inserted] = u.counterpart.emplace(x, y);
                        if (!inserted && it->second != y) {
                            error(ParseErrorCode::invalid, a.value.pos,
                                  "element '" + x + "' is paired with both '" + it->second + "' and '" + y + "'");
                        }
                    }
                }
            }
        }
        doc_.sets.emplace(u.name, std::move(u));
    }

    void graph(const RawGraph& raw)
    {
        if (doc_.graphs.count(raw.name.text)) {
            error(ParseErrorCode::duplicate_name, raw.name.pos, "graph '" + raw.name.text + "' declared twice");
            return;
        }
        LabeledGraph g;
        g.name = raw.name.text;
        g.universe = raw.universe.text;
        auto set_it = doc_.sets.find(raw.universe.text);
        if (set_it == doc_.sets.end()) {
            error(ParseErrorCode::unresolved_reference, raw.universe.pos, "graph '" + raw.name.text + "' is over undeclared set '" + raw.universe.text + "'");
        }
        for (const auto& l : raw.labels) {
            if (known_label(l)) g.labels.insert(label_of(l));
        }
        for (const auto& e : raw.edges) {
            bool ok = true;
            if (set_it != doc_.sets.end()) {
                for (const auto* end : {&e.source, &e.target}) {
                    if (!set_it->second.elements.count(end->text)) {
                        error(ParseErrorCode::unresolved_reference, end->pos,
                              "element '" + end->text + "' is not in set '" + raw.universe.text + "'");
                        ok = false;
                    }
                }
            }
            if (!known_label(e.label)) continue;
            Label l = label_of(e.label);
            if (!g.labels.count(l)) {
                error(ParseErrorCode::invalid, e.label.pos, "label '" + e.label.text + "' is not among the labels of graph '" + g.name + "'");
                ok = false;
            }
            if (ok) g.edges.insert({e.source.text, l, e.target.text});
        }
        doc_.graphs.emplace(g.name, std::move(g));
    }

    bool claim_automaton_name(const Name& n)
    {
        if (!automaton_names_.insert(n.text).second) {
            error(ParseErrorCode::duplicate_name, n.pos, "automaton '" + n.text + "' declared twice");
            return false;
        }
        return true;
    }

    void automaton(const RawAutomaton& raw)
    {
        if (!claim_automaton_name(raw.name)) return;
        FiniteAutomaton a;
        a.name = raw.name.text;
        a.alphabet = doc_.alphabet;
        for (const auto& s : raw.states) {
            if (!a.states.insert(s.name.text).second) {
                error(ParseErrorCode::duplicate_name, s.name.pos, "state '" + s.name.text + "' declared twice");
            }
            if (s.initial) a.initials.insert(s.name.text);
        }
        for (const auto& e : raw.edges) {
            bool ok = true;
            for (const auto* end : {&e.source, &e.target}) {
                if (!a.states.count(end->text)) {
                    error(ParseErrorCode::unresolved_reference, end->pos,
                          "state '" + end->text + "' is not declared in automaton '" + a.name + "'");
                    ok = false;
                }
            }
            if (known_label(e.label) && ok) a.add(e.source.text, label_of(e.label), e.target.text);
        }
        doc_.automata.emplace(a.name, std::move(a));
    }

    void compact(const RawCompact& raw)
    {
        if (!claim_automaton_name(raw.name)) return;
        CompactAutomaton c;
        c.name = raw.name.text;
        c.alphabet = doc_.alphabet;
        auto set_it = doc_.sets.find(raw.universe.text);
        if (set_it == doc_.sets.end()) {
            error(ParseErrorCode::unresolved_reference, raw.universe.pos,
                  "compact '" + c.name + "' is over undeclared set '" + raw.universe.text + "'");
            return;
        }
        c.universe = set_it->second;
        const auto& elements = c.universe.elements;
        auto element = [&](const Name& n) {
            if (elements.count(n.text)) return true;
            error(ParseErrorCode::unresolved_reference, n.pos, "element '" + n.text + "' is not in set '" + c.universe.name + "'");
            return false;
        };

        for (const auto& s : raw.cstates) {
            if (c.images.count(s.name.text)) {
                error(ParseErrorCode::duplicate_name, s.name.pos, "compact state '" + s.name.text + "' declared twice");
                continue;
            }
            std::set<std::string> image;
            if (s.whole) {
                if (s.set.text != c.universe.name) {
                    error(ParseErrorCode::unresolved_reference, s.set.pos,
                          "compact state '" + s.name.text + "' names set '" + s.set.text + "', expected '" + c.universe.name + "' or a list");
                }
                image = elements;
            } else {
                for (const auto& e : s.elements) {
                    if (element(e)) image.insert(e.text);
                }
            }
            c.images.emplace(s.name.text, std::move(image));
        }
        for (const auto& e : raw.initials) {
            if (element(e)) c.initials.insert(e.text);
        }
        for (const auto& t : raw.transitions) {
            bool ok = true;
            for (const auto* end : {&t.source, &t.target}) {
                if (!c.images.count(end->text)) {
                    error(ParseErrorCode::unresolved_reference, end->pos,
                          "compact state '" + end->text + "' is not declared in '" + c.name + "'");
                    ok = false;
                }
            }
            for (const auto& ref : t.refs) {
                switch (ref.kind) {
                case RefKind::label: ok = known_label(ref.name) && ok; break;
                case RefKind::element: ok = element(ref.name) && ok; break;
                case RefKind::graph: {
                    auto g = doc_.graphs.find(ref.name.text);
                    if (g == doc_.graphs.end()) {
                        error(ParseErrorCode::unresolved_reference, ref.name.pos, "guard refers to undeclared graph '" + ref.name.text + "'");
                        ok = false;
                    } else {
                        c.graphs.emplace(g->first, g->second);
                    }
                    break;
                }
                }
            }
            if (ok) c.transitions.insert({t.source.text, t.guard, t.target.text});
        }
        doc_.compacts.emplace(c.name, std::move(c));
    }

    void system(const RawDocument& raw)
    {
        if (raw.systems.empty()) {
            error(ParseErrorCode::missing_system, Pos{}, "missing system declaration");
            return;
        }
        if (raw.systems.size() > 1) error(ParseErrorCode::duplicate_name, raw.systems[1].first, "second system declaration");
        const auto& [pos, members] = raw.systems.front();
        if (members.empty()) error(ParseErrorCode::invalid, pos, "the system has no member");
        for (const auto& m : members) {
            if (!automaton_names_.count(m.text)) {
                error(ParseErrorCode::unresolved_reference, m.pos, "system member '" + m.text + "' is not declared");
            }
            doc_.system.push_back(m.text);
        }
    }

    ModelDocument doc_;
    std::set<std::string> automaton_names_;
    std::vector<ParseError> errors_;
};

// ---------------------------------------------------------------- printing

std::string braced(const std::vector<std::string>& items)
{
    std::string out = "{";
    for (const auto& i : items) out += " " + i;
    return out + " }";
}

template <typename Range>
std::vector<std::string> names(const Range& r)
{
    return std::vector<std::string>(r.begin(), r.end());
}

std::string edge_line(const Transition& t)
{
    return "    " + t.source + " -" + t.label.name() + "-> " + t.target + "\n";
}

std::vector<std::string> label_names(const std::set<Label>& labels)
{
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(l.name());
    return out;
}

} // namespace

ParseResult parse_document(std::string_view text)
{
    try {
        Parser parser(lex(text));
        RawDocument raw = parser.parse();
        return Resolver().run(raw);
    } catch (const Failure& f) {
        ParseResult r;
        r.errors.push_back(f.error);
        return r;
    } catch (const Error& e) {
        ParseResult r;
        r.errors.push_back({ParseErrorCode::syntax, 0, 0, e.what()});
        return r;
    }
}

std::string serialize_document(const ModelDocument& doc)
{
    std::string out = "format " + std::to_string(doc.format_version) + "\n\n";
    out += "alphabet " + braced(names(doc.alphabet.letters())) + "\n";

    for (const auto& [name, u] : doc.sets) {
        out += "\nset " + name + " {\n";
        for (const auto& e : u.elements) {
            out += "  " + e;
            if (auto it = u.linked_letter.find(e); it != u.linked_letter.end()) {
                out += it->second == e ? ":letter" : ":letter=" + it->second;
            }
            if (auto it = u.underlying_letter.find(e); it != u.underlying_letter.end()) out += ":under=" + it->second;
            if (auto it = u.counterpart.find(e); it != u.counterpart.end()) out += ":pair=" + it->second;
            out += "\n";
        }
        out += "}\n";
    }

    for (const auto& [name, g] : doc.graphs) {
        out += "\ngraph " + name + " over " + g.universe + " labels " + braced(label_names(g.labels)) + " {\n";
        for (const auto& e : g.edges) out += edge_line(e).substr(2);
        out += "}\n";
    }

    for (const auto& [name, a] : doc.automata) {
        std::vector<std::string> states;
        for (const auto& q : a.states) states.push_back(a.initials.count(q) ? q + "*" : q);
        out += "\nautomaton " + name + " {\n";
        out += "  states " + braced(states) + "\n";
        out += "  trans {\n";
        for (const auto& t : a.transitions) out += edge_line(t);
        out += "  }\n}\n";
    }

    for (const auto& [name, c] : doc.compacts) {
        out += "\ncompact " + name + " over " + c.universe.name + " {\n";
        for (const auto& [q, image] : c.images) {
            out += "  cstate " + q + " = " + (image == c.universe.elements ? c.universe.name : braced(names(image))) + ";\n";
        }
        out += "  init " + braced(names(c.initials)) + ";\n";
        for (const auto& t : c.transitions) {
            out += "  ctrans " + t.source + " -[" + to_string(t.guard) + "]-> " + t.target + ";\n";
        }
        out += "}\n";
    }

    out += "\nsystem " + braced(doc.system) + "\n";
    return out;
}

} // namespace synchro
