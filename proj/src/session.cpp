#include "charvar/session.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <climits>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace charvar {
namespace {

using json = nlohmann::ordered_json;

const std::set<std::string>& verb_table() {
    static const std::set<std::string> verbs = {
        "ring",    "module",   "gr",         "car",        "holonomic",
        "purity",  "ext",      "strict",     "resolve",    "conormal",
        "isotropy", "lagrangian", "containment", "relabel", "fixtures"};
    return verbs;
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

struct Tok {
    std::string text;
    int col = 1;
};

std::vector<Tok> tokenize(const std::string& s) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        out.push_back({s.substr(start, i - start), int(start) + 1});
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long parse_long(const std::string& v, int line, int col, const char* what) {
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
        }))
        throw ParseError(std::string("expected an integer for ") + what, line, col);
    try {
        return std::stol(v);
    } catch (const std::exception&) {
        throw ParseError(std::string("integer out of range for ") + what, line, col);
    }
}

std::vector<int> parse_index_list(const std::string& v, int line, int col) {
    std::vector<int> out;
    std::string cur;
    for (char c : v + ",") {
        if (c == ',') {
            if (cur.empty()) throw ParseError("malformed index list", line, col);
            out.push_back(int(parse_long(cur, line, col, "index list")));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

/* key=value arguments after the fixed head tokens */
void take_params(Command& cmd, const std::vector<Tok>& toks, size_t from, int line) {
    for (size_t i = from; i < toks.size(); ++i) {
        size_t eq = toks[i].text.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].text.size())
            throw ParseError("expected key=value argument", line, toks[i].col);
        cmd.params.emplace_back(toks[i].text.substr(0, eq), toks[i].text.substr(eq + 1));
    }
}

std::string param(const Command& cmd, const std::string& key) {
    for (const auto& [k, v] : cmd.params)
        if (k == key) return v;
    return "";
}

void require_params(const Command& cmd, const std::set<std::string>& allowed,
                    const std::set<std::string>& required) {
    std::set<std::string> seen;
    for (const auto& [k, v] : cmd.params) {
        if (!allowed.count(k))
            throw ParseError("unknown argument " + k + " for " + cmd.verb, cmd.line, 1);
        if (!seen.insert(k).second)
            throw ParseError("duplicate argument " + k, cmd.line, 1);
    }
    for (const auto& k : required)
        if (!seen.count(k))
            throw ParseError(cmd.verb + " requires " + k + "=...", cmd.line, 1);
}

} // namespace

std::vector<Command> parse_session(const std::string& text) {
    std::vector<Command> cmds;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool saw_ring = false, saw_module = false;
    while (std::getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string body = trim(raw);
        if (body.empty()) continue;

        Command cmd;
        cmd.line = line;

        /* split off one bracket group, if present */
        std::string head = body;
        size_t lb = body.find('[');
        if (lb != std::string::npos) {
            size_t rb = body.find(']', lb);
            if (rb == std::string::npos)
                throw ParseError("unterminated '['", line, int(lb) + 1);
            if (!trim(body.substr(rb + 1)).empty())
                throw ParseError("trailing text after ']'", line, int(rb) + 2);
            cmd.bracketed = true;
            std::string inner = body.substr(lb + 1, rb - lb - 1);
            std::string frag;
            for (char c : inner + ";") {
                if (c == ';') {
                    std::string op = trim(frag);
                    if (!op.empty()) cmd.ops.push_back(op);
                    frag.clear();
                } else {
                    frag += c;
                }
            }
            head = body.substr(0, lb);
        }

        auto toks = tokenize(head);
        if (toks.empty()) throw ParseError("expected a verb before '['", line, 1);
        cmd.verb = toks[0].text;
        if (!verb_table().count(cmd.verb))
            throw ParseError("unknown verb " + cmd.verb, line, toks[0].col);

        auto need_name = [&](size_t at) {
            if (toks.size() <= at)
                throw ParseError(cmd.verb + " requires a module name", line, 1);
            if (!is_ident(toks[at].text))
                throw ParseError("malformed name " + toks[at].text, line, toks[at].col);
            cmd.name = toks[at].text;
        };
        auto no_bracket = [&] {
            if (cmd.bracketed)
                throw ParseError(cmd.verb + " takes no bracket", line, 1);
        };
        auto need_bracket = [&] {
            if (!cmd.bracketed)
                throw ParseError(cmd.verb + " requires [ ... ]", line, 1);
        };
        auto exactly = [&](size_t n) {
            if (toks.size() != n)
                throw ParseError("wrong number of arguments for " + cmd.verb, line, 1);
        };

        if (cmd.verb == "ring") {
            if (saw_ring) throw ParseError("duplicate ring declaration", line, toks[0].col);
            if (saw_module)
                throw ParseError("ring declaration must precede module bindings", line,
                                 toks[0].col);
            saw_ring = true;
            no_bracket();
            take_params(cmd, toks, 1, line);
            require_params(cmd, {"p", "d", "log"}, {"p", "d"});
            long p = parse_long(param(cmd, "p"), line, 1, "p");
            if (p < 2 || !is_prime_u32(std::uint32_t(p)))
                throw ParseError("p must be prime", line, 1);
            long d = parse_long(param(cmd, "d"), line, 1, "d");
            if (d < 1) throw ParseError("d must be positive", line, 1);
            if (!param(cmd, "log").empty()) {
                auto idx = parse_index_list(param(cmd, "log"), line, 1);
                for (size_t i = 0; i < idx.size(); ++i)
                    if (idx[i] != int(i) + 1)
                        throw ParseError("log components must be the leading coordinates 1..r",
                                         line, 1);
                if (long(idx.size()) > d)
                    throw ParseError("more log components than coordinates", line, 1);
            }
        } else if (cmd.verb == "module") {
            saw_module = true;
            need_bracket();
            exactly(4);
            need_name(1);
            if (toks[2].text != "=" || toks[3].text != "cokernel")
                throw ParseError("expected: module <name> = cokernel [ ... ]", line,
                                 toks[2].col);
        } else if (cmd.verb == "gr" || cmd.verb == "car" || cmd.verb == "holonomic" ||
                   cmd.verb == "purity" || cmd.verb == "containment") {
            no_bracket();
            exactly(2);
            need_name(1);
        } else if (cmd.verb == "ext") {
            no_bracket();
            need_name(1);
            take_params(cmd, toks, 2, line);
            require_params(cmd, {"s"}, {"s"});
            if (parse_long(param(cmd, "s"), line, 1, "s") < 0)
                throw ParseError("s must be nonnegative", line, 1);
        } else if (cmd.verb == "strict") {
            need_bracket();
            exactly(2);
            need_name(1);
        } else if (cmd.verb == "resolve") {
            no_bracket();
            need_name(1);
            take_params(cmd, toks, 2, line);
            require_params(cmd, {"length"}, {"length"});
            if (parse_long(param(cmd, "length"), line, 1, "length") < 1)
                throw ParseError("length must be positive", line, 1);
        } else if (cmd.verb == "conormal") {
            no_bracket();
            if (toks.size() > 2)
                throw ParseError("wrong number of arguments for conormal", line, 1);
            if (toks.size() == 2) {
                parse_index_list(toks[1].text, line, toks[1].col);
                cmd.name = toks[1].text;
            }
        } else if (cmd.verb == "isotropy") {
            need_bracket();
            exactly(1);
        } else if (cmd.verb == "lagrangian") {
            if (cmd.bracketed) {
                exactly(1);
            } else {
                exactly(2);
                need_name(1);
            }
        } else if (cmd.verb == "relabel") {
            need_bracket();
            take_params(cmd, toks, 1, line);
            require_params(cmd, {"m"}, {"m"});
            if (parse_long(param(cmd, "m"), line, 1, "m") < 1)
                throw ParseError("m must be a positive level", line, 1);
        } else if (cmd.verb == "fixtures") {
            no_bracket();
            if (toks.size() != 2)
                throw ParseError("fixtures requires a directory path", line, 1);
            cmd.name = toks[1].text;
        }
        cmds.push_back(std::move(cmd));
    }
    return cmds;
}

std::string print_session(const std::vector<Command>& cmds) {
    std::ostringstream os;
    for (const auto& c : cmds) {
        os << c.verb;
        if (c.verb == "module") {
            os << " " << c.name << " = cokernel";
        } else if (!c.name.empty()) {
            os << " " << c.name;
        }
        for (const auto& [k, v] : c.params) os << " " << k << "=" << v;
        if (c.bracketed) {
            os << " [";
            for (size_t i = 0; i < c.ops.size(); ++i)
                os << (i ? "; " : " ") << c.ops[i];
            os << (c.ops.empty() ? "]" : " ]");
        }
        os << "\n";
    }
    return os.str();
}

namespace {

struct SessionState {
    SessionOptions opt;
    RingPtr weyl, cot, tagged;
    std::map<std::string, Presentation> modules;
    bool failed = false; /* fixture verb saw failures */
};

RingPtr with_order(const RingPtr& r, OrderKind kind) {
    if (r->default_order.kind == kind) return r;
    MonomialOrder mo{kind, kind == OrderKind::weighted ? r->weights : std::vector<int>{}};
    return std::make_shared<PolyRing>(r->field, r->kind, r->vars, r->weights, r->pairs_d,
                                      r->log_r, r->t_base, mo);
}

RingPtr tag_fibers(const RingPtr& c) {
    auto names = c->vars;
    for (int i = c->pairs_d; i < 2 * c->pairs_d; ++i) names[size_t(i)] += "_m";
    return std::make_shared<PolyRing>(c->field, c->kind, std::move(names), c->weights,
                                      c->pairs_d, c->log_r, c->t_base, c->default_order);
}

void establish_ring(SessionState& st, std::uint32_t p, int d, int r) {
    st.weyl = make_weyl_ring(p, d, r);
    st.cot = with_order(symbol_ring(st.weyl), st.opt.order);
    st.tagged = tag_fibers(st.cot);
}

void ensure_ring(SessionState& st, const Command& cmd) {
    if (st.weyl) return;
    if (st.opt.prime == 0 || st.opt.dim == 0)
        throw ParseError("no ring declared (and no --prime/--dim defaults)", cmd.line, 1);
    establish_ring(st, st.opt.prime, st.opt.dim, st.opt.log_r);
}

const Presentation& bound_module(SessionState& st, const Command& cmd) {
    auto it = st.modules.find(cmd.name);
    if (it == st.modules.end())
        throw ParseError("unbound module " + cmd.name, cmd.line, 1);
    return it->second;
}

json poly_strings(const std::vector<Poly>& v) {
    json a = json::array();
    for (const auto& f : v) a.push_back(poly_print(f));
    return a;
}

json component_names(const CharVariety& car) {
    json comps = json::array();
    for (const auto& c : car.components) {
        json one = json::array();
        for (int i : c) one.push_back(car.cotangent->var_name(i));
        comps.push_back(std::move(one));
    }
    return comps;
}

const char* verdict_name(PurityVerdict v) {
    switch (v) {
    case PurityVerdict::pure_certified: return "pure-certified";
    case PurityVerdict::pure_geometric_confirmed: return "pure-geometric-confirmed";
    case PurityVerdict::inconsistent: return "inconsistent";
    default: return "not-pure";
    }
}

const char* verdict_name(IsotropyVerdict v) {
    switch (v) {
    case IsotropyVerdict::isotropic: return "isotropic";
    case IsotropyVerdict::not_isotropic: return "not-isotropic";
    default: return "indeterminate";
    }
}

std::vector<Poly> parse_ops(const Command& cmd, const RingPtr& ring) {
    std::vector<Poly> out;
    for (const auto& op : cmd.ops) out.push_back(poly_parse(ring, op, cmd.line));
    return out;
}

json lagrangian_json(const CharVariety& car, const LagrangianReport& rep) {
    json j;
    j["variety"] = poly_strings(car.ideal);
    j["dim"] = car.dim;
    j["pure"] = rep.pure;
    j["isotropic"] = verdict_name(rep.isotropy.verdict);
    j["lagrangian"] = rep.lagrangian;
    return j;
}

std::optional<json> dispatch(SessionState& st, const Command& cmd) {
    Deadline dl(st.opt.timeout);

    if (cmd.verb == "ring") {
        if (st.weyl)
            throw ParseError("ring declared after the default ring was already used",
                             cmd.line, 1);
        auto idx = param(cmd, "log").empty()
                       ? std::vector<int>{}
                       : parse_index_list(param(cmd, "log"), cmd.line, 1);
        establish_ring(st, std::uint32_t(parse_long(param(cmd, "p"), cmd.line, 1, "p")),
                       int(parse_long(param(cmd, "d"), cmd.line, 1, "d")), int(idx.size()));
        return std::nullopt;
    }
    if (cmd.verb == "fixtures") {
        FixtureSummary sum = run_fixtures(cmd.name, st.opt);
        if (sum.exit_code != 0) st.failed = true;
        json failed = json::array();
        int passed = 0;
        for (const auto& o : sum.outcomes) {
            if (o.passed)
                ++passed;
            else
                failed.push_back(o.name);
        }
        json j;
        j["total"] = sum.outcomes.size();
        j["passed"] = passed;
        j["failed"] = std::move(failed);
        return j;
    }
    ensure_ring(st, cmd);

    if (cmd.verb == "module") {
        if (st.modules.count(cmd.name))
            throw ParseError("module " + cmd.name + " already bound", cmd.line, 1);
        st.modules.emplace(cmd.name,
                           make_cyclic_presentation(st.weyl, parse_ops(cmd, st.weyl)));
        return std::nullopt;
    }
    if (cmd.verb == "gr") {
        Presentation g = gr_module(bound_module(st, cmd), &dl);
        json j;
        j["rank"] = g.rank;
        j["shifts"] = g.shifts;
        json rels = json::array();
        for (const auto& r : g.relations) rels.push_back(poly_strings(r.c));
        j["relations"] = std::move(rels);
        return j;
    }
    if (cmd.verb == "car") {
        CharVariety car = char_variety(bound_module(st, cmd), &dl);
        json j;
        j["char_ideal"] = poly_strings(car.ideal);
        j["dim"] = car.dim;
        if (car.monomial) j["components"] = component_names(car);
        return j;
    }
    if (cmd.verb == "holonomic") {
        HolonomicityReport h =
            holonomicity_report(char_variety(bound_module(st, cmd), &dl));
        json j;
        j["dim"] = h.dim;
        j["d"] = h.d;
        j["holonomic"] = h.holonomic;
        return j;
    }
    if (cmd.verb == "purity") {
        const Presentation& m = bound_module(st, cmd);
        PurityReport rep = purity_report(m, &dl);
        json j;
        j["module"] = cmd.name;
        j["d"] = rep.d;
        j["char_ideal"] = poly_strings(rep.car.ideal);
        j["dim"] = rep.car.dim;
        if (rep.car.monomial) j["components"] = component_names(rep.car);
        json pat = json::array();
        for (bool b : rep.ext_nonzero) pat.push_back(b ? 1 : 0);
        j["ext_pattern"] = std::move(pat);
        j["verdict"] = verdict_name(rep.verdict);
        j["effective_bound"] = effective_bound(m, st.opt.slack);
        return j;
    }
    if (cmd.verb == "ext") {
        long s = parse_long(param(cmd, "s"), cmd.line, 1, "s");
        ExtResult e = weyl_ext(bound_module(st, cmd), int(s), &dl);
        int codim = -1; /* support codimension; -1 when the module vanishes */
        if (!e.zero) {
            Presentation left =
                e.pres.side == Side::right ? transpose_side(e.pres) : e.pres;
            codim = 2 * st.weyl->pairs_d - char_variety(left, &dl).dim;
        }
        json j;
        j["s"] = s;
        j["zero"] = e.zero;
        j["codim"] = codim;
        return j;
    }
    if (cmd.verb == "strict") {
        const Presentation& m = bound_module(st, cmd);
        if (int(cmd.ops.size()) != m.rank)
            throw ParseError("strict needs one operator per generator of " + cmd.name,
                             cmd.line, 1);
        ModVec v = mv_zero(st.weyl, m.rank);
        auto ops = parse_ops(cmd, st.weyl);
        for (size_t i = 0; i < ops.size(); ++i) v.c[i] = ops[i];
        int delta = mv_filt_deg(v, m.shifts);
        if (delta == INT_MIN) delta = 0;
        Presentation src = make_cyclic_presentation(st.weyl, {}, -delta);
        StrictReport rep = is_strict(make_morphism(src, m, {v}, &dl), &dl);
        json j;
        j["strict"] = rep.strict;
        j["mono"] = rep.mono;
        j["epi"] = rep.epi;
        j["gr_mono"] = rep.gr_mono;
        j["gr_epi"] = rep.gr_epi;
        if (rep.witness_degree == INT_MIN)
            j["witness_degree"] = nullptr;
        else
            j["witness_degree"] = rep.witness_degree;
        return j;
    }
    if (cmd.verb == "resolve") {
        int len = int(parse_long(param(cmd, "length"), cmd.line, 1, "length"));
        GoodResolutionReport rep = good_resolution(bound_module(st, cmd), len, &dl);
        json j;
        j["length"] = rep.res.length();
        json ranks = json::array();
        for (int i = 0; i <= rep.res.length(); ++i) ranks.push_back(rep.res.rank_at(i));
        j["ranks"] = std::move(ranks);
        j["strict_differentials"] = rep.strict_differentials;
        j["gr_composes_zero"] = rep.gr_composes_zero;
        j["gr_exact"] = rep.gr_exact;
        return j;
    }
    if (cmd.verb == "conormal") {
        std::vector<int> S;
        if (!cmd.name.empty())
            for (int i : parse_index_list(cmd.name, cmd.line, 1)) {
                if (i < 1 || i > st.cot->pairs_d)
                    throw ParseError("coordinate index out of range", cmd.line, 1);
                S.push_back(i - 1);
            }
        json j;
        j["variety"] = poly_strings(conormal_ideal(st.cot, S));
        j["dim"] = st.cot->pairs_d;
        return j;
    }
    if (cmd.verb == "isotropy") {
        auto gb = groebner(parse_ops(cmd, st.cot), st.cot, st.cot->default_order, &dl);
        IsotropyReport rep = isotropy_test(gb, st.cot, &dl);
        json j;
        j["variety"] = poly_strings(gb);
        j["isotropic"] = verdict_name(rep.verdict);
        return j;
    }
    if (cmd.verb == "lagrangian") {
        if (cmd.bracketed) {
            auto gb = groebner(parse_ops(cmd, st.cot), st.cot, st.cot->default_order, &dl);
            CharVariety c;
            c.cotangent = st.cot;
            c.d = st.cot->pairs_d;
            c.ideal = gb;
            c.zero = ideal_is_unit(gb);
            c.dim = ideal_dim(gb, st.cot, st.cot->default_order);
            c.monomial = std::all_of(gb.begin(), gb.end(), [](const Poly& f) {
                return poly_is_monomial(f);
            });
            if (c.monomial) c.components = monomial_components(gb, st.cot);
            return lagrangian_json(c, lagrangian_test(c, &dl));
        }
        CharVariety car = char_variety(bound_module(st, cmd), &dl);
        return lagrangian_json(car, lagrangian_test(car, &dl));
    }
    if (cmd.verb == "containment") {
        ContainmentReport rep = log_containment_check(bound_module(st, cmd), &dl);
        json j;
        j["variety"] = poly_strings(rep.union_ideal);
        j["containment"] = rep.contained;
        json w = json::array();
        for (const auto& [g, ok] : rep.witnesses)
            w.push_back(json::array({poly_print(g), ok}));
        j["witnesses"] = std::move(w);
        return j;
    }
    if (cmd.verb == "relabel") {
        json out = json::array();
        for (const auto& f : parse_ops(cmd, st.tagged))
            out.push_back(poly_print(level_relabel(f, st.cot)));
        json j;
        j["ideal"] = std::move(out);
        return j;
    }
    throw InternalError("verb accepted by the parser but not dispatched: " + cmd.verb);
}

std::string slurp(const std::filesystem::path& p, bool& ok) {
    std::ifstream in(p, std::ios::binary);
    ok = bool(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

SessionResult run_session(const std::string& text, const SessionOptions& opt) {
    SessionResult res;
    std::ostringstream out;
    try {
        auto cmds = parse_session(text);
        SessionState st;
        st.opt = opt;
        for (const auto& c : cmds)
            if (auto j = dispatch(st, c)) out << j->dump() << "\n";
        if (st.failed) {
            res.exit_code = 1;
            res.error = "fixture failures";
        }
    } catch (const ParseError& e) {
        res.exit_code = 2;
        res.error = "line " + std::to_string(e.line) + ", col " + std::to_string(e.col) +
                    ": " + e.what();
    } catch (const TimeoutError& e) {
        res.exit_code = 3;
        res.error = e.what();
    } catch (const PreconditionError& e) {
        res.exit_code = 1;
        res.error = e.what();
    } catch (const InternalError& e) {
        res.exit_code = 1;
        res.error = std::string("internal error: ") + e.what();
    }
    res.output = out.str();
    return res;
}

FixtureSummary run_fixtures(const std::string& dir, const SessionOptions& opt) {
    namespace fs = std::filesystem;
    FixtureSummary sum;
    if (!fs::is_directory(dir)) {
        sum.exit_code = 2;
        sum.warning = dir + " is not a directory";
        return sum;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".session") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        sum.warning = "no fixtures found in " + dir;
        return sum;
    }
    for (const auto& f : files) {
        FixtureOutcome o;
        o.name = f.stem().string();
        fs::path exp = f;
        exp.replace_extension(".expected");
        bool ok_s = false, ok_e = false;
        std::string text = slurp(f, ok_s);
        std::string want = fs::exists(exp) ? slurp(exp, ok_e) : std::string();
        if (!ok_s) {
            o.detail = "cannot read " + f.string();
        } else if (!fs::exists(exp) || !ok_e) {
            o.detail = "missing expectation file " + exp.string();
        } else {
            SessionResult r = run_session(text, opt);
            if (r.exit_code != 0)
                o.detail = "session error: " + r.error;
            else if (r.output != want)
                o.detail = "output mismatch";
            else
                o.passed = true;
        }
        if (!o.passed) sum.exit_code = 1;
        sum.outcomes.push_back(std::move(o));
    }
    return sum;
}

} // namespace charvar
