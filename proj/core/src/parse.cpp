#include "hhcalc/parse.hpp"

#include <fstream>
#include <sstream>

namespace hhcalc {

namespace {

struct Tok {
    std::string s;
    int col;
};

std::vector<Tok> tokenize(const std::string& line) {
    std::vector<Tok> toks;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

bool is_rational(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i]))) return false;
    bool slash = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (slash) return false;
            slash = true;
        } else if (!isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

struct LinTerm {
    Scalar coeff;
    std::string label;  // empty for a bare scalar
};

// lincomb := '0' | term (('+'|'-') term)*, term := [rational '*'] label | rational
std::vector<LinTerm> parse_lincomb(const std::vector<Tok>& toks, size_t start,
                                   uint32_t p, int line) {
    std::vector<LinTerm> out;
    if (start >= toks.size())
        throw ParseError("expected right-hand side", line, 1);
    if (toks.size() == start + 1 && toks[start].s == "0") return out;
    bool expect_term = true;
    Scalar sign = Scalar::one(p);
    for (size_t i = start; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (!expect_term) {
            if (t.s == "+")
                sign = Scalar::one(p);
            else if (t.s == "-")
                sign = Scalar(-1, p);
            else
                throw ParseError("expected '+' or '-', got '" + t.s + "'", line, t.col);
            expect_term = true;
            continue;
        }
        std::string term = t.s;
        Scalar c = sign;
        std::string label;
        auto star = term.find('*');
        if (star != std::string::npos && is_rational(term.substr(0, star))) {
            c = c * Scalar::from_string(term.substr(0, star), p);
            label = term.substr(star + 1);
        } else if (is_rational(term)) {
            c = c * Scalar::from_string(term, p);
        } else {
            label = term;
        }
        out.push_back({c, label});
        expect_term = false;
        sign = Scalar::one(p);
    }
    if (expect_term) throw ParseError("dangling sign", line, 1);
    return out;
}

}  // namespace

AlgebraInput parse_algebra_text(const std::string& text, const std::string& filename,
                                uint32_t field_override) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    const bool overridden = field_override != UINT32_MAX;
    uint32_t p = overridden ? field_override : 0;
    bool field_seen = false;
    int t = 1;
    bool idem_seen = false;

    struct RawBasisElt {
        std::string label;
        int li, ri;
        long deg;
        int line;
    };
    std::vector<RawBasisElt> basis;
    struct ProdLine {
        std::string x, y;
        std::vector<LinTerm> rhs;
        int line;
    };
    std::vector<ProdLine> prods;
    struct DiffLine {
        std::string x;
        std::vector<LinTerm> rhs;
        int line;
    };
    std::vector<DiffLine> diffs;
    std::vector<DiffLine> augs;
    std::vector<DiffLine> traces;
    long trace_degree = 0;
    bool trace_seen = false;

    bool quiver_mode = false;
    QuiverPresentation qp;
    struct QRel {
        std::vector<LinTerm> terms;
        int line;
    };
    std::vector<QRel> qrels;
    std::vector<std::pair<std::string, QRel>> qdiffs;

    std::string section;
    auto fail = [&](const std::string& msg, int col) -> void {
        throw ParseError(filename + ": " + msg, lineno, col);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].s[0] == '[') {
            section = toks[0].s;
            if (section == "[field]") {
                if (toks.size() < 2) fail("usage: [field] q | fp <p>", 1);
                if (toks[1].s == "q") {
                    if (!overridden) p = 0;
                } else if (toks[1].s == "fp") {
                    if (toks.size() < 3) fail("usage: [field] fp <p>", 1);
                    long pv = std::stol(toks[2].s);
                    if (pv < 5 || !is_prime(static_cast<uint32_t>(pv)))
                        fail("prime field requires a prime p >= 5", toks[2].col);
                    if (!overridden) p = static_cast<uint32_t>(pv);
                } else {
                    fail("unknown field '" + toks[1].s + "'", toks[1].col);
                }
                field_seen = true;
            } else if (section == "[idempotents]") {
                if (toks.size() < 2) fail("usage: [idempotents] <t>", 1);
                t = std::stoi(toks[1].s);
                if (t < 1) fail("t must be >= 1", toks[1].col);
                idem_seen = true;
            } else if (section == "[trace]") {
                trace_seen = true;
                if (toks.size() >= 3 && toks[1].s == "degree")
                    trace_degree = std::stol(toks[2].s);
            } else if (section == "[quiver]") {
                quiver_mode = true;
            } else if (section != "[basis]" && section != "[product]" &&
                       section != "[differential]" && section != "[augmentation]") {
                fail("unknown section " + section, 1);
            }
            continue;
        }

        if (section == "[basis]") {
            if (toks.size() != 4) fail("basis line: <label> <li> <ri> <deg>", 1);
            basis.push_back({toks[0].s, std::stoi(toks[1].s), std::stoi(toks[2].s),
                             std::stol(toks[3].s), lineno});
        } else if (section == "[product]") {
            if (toks.size() < 3 || toks[1].s != "=")
                fail("product line: <x>*<y> = <lincomb>", 1);
            auto star = toks[0].s.find('*');
            if (star == std::string::npos)
                fail("product left side must be <x>*<y>", toks[0].col);
            prods.push_back({toks[0].s.substr(0, star), toks[0].s.substr(star + 1),
                             parse_lincomb(toks, 2, p, lineno), lineno});
        } else if (section == "[differential]") {
            if (toks.size() < 3 || toks[1].s != "=")
                fail("differential line: <x> = <lincomb>", 1);
            diffs.push_back({toks[0].s, parse_lincomb(toks, 2, p, lineno), lineno});
        } else if (section == "[augmentation]") {
            if (toks.size() < 3 || toks[1].s != "=")
                fail("augmentation line: <x> = <lincomb over e1..et>", 1);
            augs.push_back({toks[0].s, parse_lincomb(toks, 2, p, lineno), lineno});
        } else if (section == "[trace]") {
            if (toks.size() < 3 || toks[1].s != "=")
                fail("trace line: <x> = <scalar>", 1);
            traces.push_back({toks[0].s, parse_lincomb(toks, 2, p, lineno), lineno});
        } else if (section == "[quiver]") {
            if (toks[0].s == "vertices") {
                if (toks.size() < 2) fail("usage: vertices <n>", 1);
                qp.vertices = std::stoi(toks[1].s);
            } else if (toks[0].s == "arrow") {
                if (toks.size() != 5) fail("usage: arrow <label> <src> <dst> <deg>", 1);
                qp.arrows.push_back({toks[1].s, std::stoi(toks[2].s),
                                     std::stoi(toks[3].s), std::stol(toks[4].s)});
            } else if (toks[0].s == "truncate") {
                if (toks.size() < 2) fail("usage: truncate <n>", 1);
                qp.truncate = std::stoi(toks[1].s);
                if (qp.truncate < 2) fail("truncate must be >= 2", toks[1].col);
            } else if (toks[0].s == "relation") {
                qrels.push_back({parse_lincomb(toks, 1, p, lineno), lineno});
            } else if (toks[0].s == "d") {
                if (toks.size() < 4 || toks[2].s != "=")
                    fail("usage: d <arrow> = <pathsum>", 1);
                qdiffs.push_back(
                    {toks[1].s, {parse_lincomb(toks, 3, p, lineno), lineno}});
            } else {
                fail("unknown quiver directive '" + toks[0].s + "'", toks[0].col);
            }
        } else {
            fail("content outside any section", 1);
        }
    }
    if (!field_seen && field_override == UINT32_MAX)
        throw ParseError(filename + ": missing [field] section", 1, 1);

    AlgebraInput out;

    if (quiver_mode) {
        if (idem_seen && t != qp.vertices)
            throw ParseError(filename + ": [idempotents] conflicts with vertices", 1, 1);
        qp.p = p;
        std::map<std::string, int> arrow_idx;
        for (int i = 0; i < static_cast<int>(qp.arrows.size()); ++i) {
            if (!arrow_idx.emplace(qp.arrows[i].label, i).second)
                throw ParseError(filename + ": duplicate arrow label", 1, 1);
        }
        auto to_path = [&](const std::string& s, int line) {
            // function-composition order "a.b" = b then a; traversal order
            // reverses the written order
            std::vector<int> arrows;
            size_t i = 0;
            while (i <= s.size()) {
                auto dot = s.find('.', i);
                std::string lab = s.substr(i, dot == std::string::npos ? dot : dot - i);
                auto it = arrow_idx.find(lab);
                if (it == arrow_idx.end())
                    throw ParseError(filename + ": unknown arrow '" + lab + "'", line, 1);
                arrows.push_back(it->second);
                if (dot == std::string::npos) break;
                i = dot + 1;
            }
            std::reverse(arrows.begin(), arrows.end());
            return arrows;
        };
        for (const auto& r : qrels) {
            PathSum ps;
            for (const auto& term : r.terms) {
                if (term.label.empty())
                    throw ParseError(filename + ": bare scalar in relation", r.line, 1);
                ps.push_back({term.coeff, to_path(term.label, r.line)});
            }
            qp.relations.push_back(std::move(ps));
        }
        for (const auto& [lab, r] : qdiffs) {
            auto it = arrow_idx.find(lab);
            if (it == arrow_idx.end())
                throw ParseError(filename + ": unknown arrow '" + lab + "'", r.line, 1);
            PathSum ps;
            for (const auto& term : r.terms)
                ps.push_back({term.coeff, to_path(term.label, r.line)});
            qp.darrow[it->second] = std::move(ps);
        }
        out.ring = quiver_compile(qp);
    } else {
        if (!idem_seen)
            throw ParseError(filename + ": missing [idempotents] section", 1, 1);
        // implicit unit elements e1..et, then user basis
        std::vector<BasisElt> belts;
        for (int l = 1; l <= t; ++l)
            belts.push_back({"e" + std::to_string(l), l - 1, l - 1, 0});
        for (const auto& b : basis) {
            if (b.li < 1 || b.li > t || b.ri < 1 || b.ri > t)
                throw ParseError(filename + ": idempotent out of range for '" + b.label +
                                     "'",
                                 b.line, 1);
            belts.push_back({b.label, b.li - 1, b.ri - 1, b.deg});
        }
        RawRingData raw;
        raw.t = t;
        raw.p = p;
        raw.space = make_space(t, p, belts);
        const GradedSpace& sp = *raw.space;

        auto idx = [&](const std::string& lab, int line) {
            int i = sp.index_of(lab);
            if (i < 0)
                throw ParseError(filename + ": unknown basis label '" + lab + "'", line,
                                 1);
            return i;
        };
        auto lin_to_vec = [&](const std::vector<LinTerm>& terms, int line) {
            SparseVec v;
            for (const auto& tm : terms) {
                if (tm.label.empty())
                    throw ParseError(filename + ": bare scalar needs a basis label",
                                     line, 1);
                vec_axpy(v, tm.coeff, SparseVec{{idx(tm.label, line), Scalar::one(p)}});
            }
            return v;
        };

        for (const auto& pr : prods) {
            int i = idx(pr.x, pr.line), j = idx(pr.y, pr.line);
            if (i < t || j < t)
                throw ParseError(filename + ": unit products are implied; do not list " +
                                     pr.x + "*" + pr.y,
                                 pr.line, 1);
            // function order: x*y means y then x, i.e. basis_i . basis_j with
            // composability ri(x) = li(y)
            raw.mu[{i, j}] = lin_to_vec(pr.rhs, pr.line);
        }
        // unit products implied by unitality
        for (int l = 0; l < t; ++l)
            for (int i = 0; i < sp.dim(); ++i) {
                if (sp.basis[i].li == l) raw.mu[{l, i}] = SparseVec{{i, Scalar::one(p)}};
                if (sp.basis[i].ri == l) raw.mu[{i, l}] = SparseVec{{i, Scalar::one(p)}};
            }
        for (auto it = raw.mu.begin(); it != raw.mu.end();)
            it = it->second.empty() ? raw.mu.erase(it) : std::next(it);

        raw.unit_comp.resize(t);
        for (int l = 0; l < t; ++l) raw.unit_comp[l] = SparseVec{{l, Scalar::one(p)}};

        raw.diff = BlockMap(raw.space, raw.space, -1);
        for (const auto& dl : diffs) {
            int i = idx(dl.x, dl.line);
            SparseVec img = lin_to_vec(dl.rhs, dl.line);
            try {
                raw.diff.add_col(i, img);
            } catch (const std::exception& e) {
                throw ParseError(filename + ": " + e.what(), dl.line, 1);
            }
        }

        raw.aug = BlockMap(raw.space, k_unit_space(t, p), 0);
        for (int l = 0; l < t; ++l) raw.aug.add(l, l, Scalar::one(p));
        for (const auto& al : augs) {
            int i = idx(al.x, al.line);
            if (i < t)
                throw ParseError(filename + ": eps on units is fixed by eps o eta = id",
                                 al.line, 1);
            for (const auto& tm : al.rhs) {
                int l = tm.label.empty() ? -1 : sp.index_of(tm.label);
                if (l < 0 || l >= t)
                    throw ParseError(filename +
                                         ": augmentation values live in the e-span",
                                     al.line, 1);
                try {
                    raw.aug.add(l, i, tm.coeff);
                } catch (const std::exception& e) {
                    throw ParseError(filename + ": " + e.what(), al.line, 1);
                }
            }
        }
        out.ring = std::move(raw);
    }

    if (trace_seen) {
        TraceInput ti;
        ti.degree = trace_degree;
        const GradedSpace& sp = *out.ring.space;
        for (const auto& tl : traces) {
            int i = sp.index_of(tl.x);
            if (i < 0)
                throw ParseError(filename + ": unknown label '" + tl.x + "' in [trace]",
                                 tl.line, 1);
            Scalar v = Scalar::zero(p);
            for (const auto& tm : tl.rhs) {
                if (!tm.label.empty())
                    throw ParseError(filename + ": trace values are scalars", tl.line, 1);
                v += tm.coeff;
            }
            if (!v.is_zero()) ti.values[i] = v;
        }
        out.trace = std::move(ti);
    }
    return out;
}

AlgebraInput parse_algebra_file(const std::string& path, uint32_t field_override) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_algebra_text(ss.str(), path, field_override);
}

}  // namespace hhcalc
