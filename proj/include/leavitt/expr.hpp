#pragma once

#include "algebra.hpp"

#include <string>
#include <string_view>

namespace leavitt {

struct parse_error : error {
    size_t pos;
    parse_error(const std::string &msg, size_t at)
        : error(msg + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

namespace detail {

/// Recursive-descent parser for element expressions:
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor ('*'? factor)*
///   factor  := atom | rational | 'i' | '(' scalar ')'
///   atom    := IDENT ['^*'] | '(' expr ')' ['^*']
/// Juxtaposition multiplies; idents resolve to vertices or edges; 'i' is the
/// imaginary unit unless the graph declares an id 'i'. A term must contain
/// at least one generator (the algebra has no unit), except the literal 0.
/// The result is a raw element; callers normalize.
class ExprParser {
  public:
    ExprParser(std::string_view s, const AlgebraContext &ctx)
        : s_(s), ctx_(ctx), shadow_i_(ctx.graph.has_id("i")) {}

    Element parse() {
        Element x = expr();
        ws();
        if (pos_ != s_.size())
            throw parse_error("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return x;
    }

  private:
    std::string_view s_;
    size_t pos_ = 0;
    const AlgebraContext &ctx_;
    bool shadow_i_;

    void ws() { skip_ws(s_, pos_); }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static bool ident_head(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_tail(char c) {
        return ident_head(c) || (c >= '0' && c <= '9') || c == '\'';
    }

    std::string lex_ident() {
        size_t start = pos_;
        ++pos_;
        while (!at_end() && ident_tail(s_[pos_]))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    bool eat_star_marker() { // '^*' after an atom
        ws();
        if (peek() == '^' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '*') {
            pos_ += 2;
            return true;
        }
        return false;
    }

    Element expr() {
        ws();
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        Element acc = term();
        if (negate)
            acc = neg(acc);
        while (true) {
            ws();
            if (eat('+'))
                acc = add(acc, term());
            else if (eat('-'))
                acc = add(acc, neg(term()));
            else
                break;
        }
        return acc;
    }

    Element term() {
        Scalar coeff(1);
        Element acc;
        bool have_atom = false;
        bool expect_factor = false;

        while (true) {
            ws();
            size_t at = pos_;
            if (peek() == '(') {
                size_t save = pos_;
                ++pos_;
                bool as_element = true;
                Element inner;
                try {
                    inner = expr();
                    ws();
                    if (!eat(')'))
                        throw parse_error("expected ')'", pos_);
                } catch (const parse_error &) {
                    pos_ = save;
                    as_element = false;
                }
                if (as_element) {
                    if (eat_star_marker())
                        inner = star_raw(inner, ctx_.field);
                    acc = have_atom ? mul_raw(acc, inner, ctx_.graph) : inner;
                    have_atom = true;
                } else {
                    // parenthesized scalar literal, e.g. (1/2 + 3*i)
                    ++pos_;
                    ws();
                    auto sc = parse_scalar_at(s_, pos_);
                    ws();
                    if (!sc || !eat(')'))
                        throw parse_error("expected expression or scalar after '('", save);
                    if (ctx_.field.restrict_to_rationals && !sc->is_rational())
                        throw parse_error("imaginary scalar with rational field", save);
                    coeff *= *sc;
                }
            } else if (ident_head(peek())) {
                std::string id = lex_ident();
                if (auto v = ctx_.graph.find_vertex(id)) {
                    eat_star_marker(); // v^* = v
                    Element m(vertex_mono(*v));
                    acc = have_atom ? mul_raw(acc, m, ctx_.graph) : m;
                    have_atom = true;
                } else if (auto e = ctx_.graph.find_edge(id)) {
                    Element m(eat_star_marker() ? ghost_mono(*e, ctx_.graph)
                                                : edge_mono(*e, ctx_.graph));
                    acc = have_atom ? mul_raw(acc, m, ctx_.graph) : m;
                    have_atom = true;
                } else if (id == "i" && !shadow_i_) {
                    if (ctx_.field.restrict_to_rationals)
                        throw parse_error("imaginary scalar with rational field", at);
                    coeff *= Scalar::i();
                } else {
                    throw parse_error("unknown generator '" + id + "'", at);
                }
            } else if (peek() >= '0' && peek() <= '9') {
                auto r = parse_rat_at(s_, pos_);
                if (!r)
                    throw parse_error("bad number", at);
                coeff *= Scalar(*r);
            } else {
                if (expect_factor)
                    throw parse_error("expected a factor after '*'", pos_);
                break;
            }
            ws();
            expect_factor = eat('*');
        }

        if (!have_atom) {
            if (coeff.is_zero())
                return Element{}; // the literal 0
            throw parse_error("term has no vertex or edge generator", pos_);
        }
        return scalar_mul(coeff, acc);
    }
};

} // namespace detail

/// Parses an element expression over the context's graph; the result is raw
/// (not normalized). Throws parse_error with a position on bad input.
inline Element parse_element(std::string_view text, const AlgebraContext &ctx) {
    return detail::ExprParser(text, ctx).parse();
}

// ---- printing ------------------------------------------------------------

inline std::string to_string(const Monomial &m, const Graph &g) {
    auto join = [&](const std::vector<int> &es) {
        std::string out;
        for (size_t i = 0; i < es.size(); ++i) {
            if (i)
                out += '*';
            out += g.edge(es[i]).id;
        }
        return out;
    };
    if (m.p.edges.empty() && m.q.edges.empty())
        return g.vertex_id(m.p.base);
    std::string p = join(m.p.edges);
    std::string q;
    if (m.q.edges.size() == 1)
        q = g.edge(m.q.edges[0]).id + "^*";
    else if (m.q.edges.size() > 1)
        q = "(" + join(m.q.edges) + ")^*";
    if (p.empty())
        return q;
    if (q.empty())
        return p;
    return p + "*" + q;
}

namespace detail {
// display order: total length, then edge-id sequences of p and q, then base
// vertices by insertion order
inline bool display_less(const Monomial &a, const Monomial &b, const Graph &g) {
    int la = a.p.length() + a.q.length(), lb = b.p.length() + b.q.length();
    if (la != lb)
        return la < lb;
    auto ids = [&](const std::vector<int> &es) {
        std::vector<std::string> out;
        out.reserve(es.size());
        for (int e : es)
            out.push_back(g.edge(e).id);
        return out;
    };
    auto pa = ids(a.p.edges), pb = ids(b.p.edges);
    if (pa != pb)
        return pa < pb;
    if (a.p.base != b.p.base)
        return a.p.base < b.p.base;
    auto qa = ids(a.q.edges), qb = ids(b.q.edges);
    if (qa != qb)
        return qa < qb;
    return a.q.base < b.q.base;
}
} // namespace detail

inline std::string to_string(const Element &x, const Graph &g) {
    if (x.is_zero())
        return "0";
    std::vector<std::pair<Monomial, Scalar>> terms(x.terms().begin(), x.terms().end());
    std::sort(terms.begin(), terms.end(), [&](const auto &a, const auto &b) {
        return detail::display_less(a.first, b.first, g);
    });
    std::string out;
    bool first = true;
    for (auto &[m, c] : terms) {
        Scalar mag = c;
        bool negative = false;
        bool simple = c.re().is_zero() || c.im().is_zero();
        if (simple && (c.re().sign() < 0 || c.im().sign() < 0)) {
            negative = true;
            mag = -c;
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string coeff;
        if (!simple)
            coeff = "(" + to_string(mag) + ")*";
        else if (!mag.is_one())
            coeff = to_string(mag) + "*";
        out += coeff + to_string(m, g);
    }
    return out;
}

} // namespace leavitt
