#pragma once

#include "charvar/sympgeom.hpp"

#include <chrono>

namespace charvar {

/* One session line. Polynomial fragments are kept verbatim (trimmed) so that
   parse -> print -> parse is the identity on canonically formatted files;
   they are parsed against the session rings at execution time. */
struct Command {
    std::string verb;
    std::string name;                                        /* module / path */
    std::vector<std::pair<std::string, std::string>> params; /* key=value */
    std::vector<std::string> ops; /* bracket fragments, ';'-separated */
    bool bracketed = false;
    int line = 0;
};

/* Line-oriented grammar, '#' comments. Verbs: ring, module, gr, car,
   holonomic, purity, ext, strict, resolve, conormal, isotropy, lagrangian,
   containment, relabel, fixtures. Throws ParseError (line, column) on unknown
   verbs, malformed arguments, non-prime p, a second ring line, or a module
   binding ahead of the ring line. */
std::vector<Command> parse_session(const std::string& text);

std::string print_session(const std::vector<Command>& cmds);

struct SessionOptions {
    std::uint32_t prime = 0; /* default ring when the session has no ring line */
    int dim = 0;
    int log_r = 0;
    int slack = 4; /* effective-bound slack for purity reports */
    OrderKind order = OrderKind::weighted; /* commutative parse-side order */
    std::chrono::seconds timeout{60};      /* per-command basis budget */
};

/* exit codes: 0 ok, 1 assertion/precondition failure, 2 parse or session
   error, 3 timeout */
struct SessionResult {
    std::string output; /* one JSON line per reporting command */
    int exit_code = 0;
    std::string error; /* empty iff exit_code == 0 */
};

SessionResult run_session(const std::string& text, const SessionOptions& opt = {});

struct FixtureOutcome {
    std::string name;
    bool passed = false;
    std::string detail; /* empty when passed */
};

/* Runs every *.session file (sorted) against its byte-exact *.expected
   sibling. Missing expectation files and session errors fail the fixture.
   An empty directory passes with a warning. */
struct FixtureSummary {
    std::vector<FixtureOutcome> outcomes;
    int exit_code = 0;
    std::string warning;
};

FixtureSummary run_fixtures(const std::string& dir, const SessionOptions& opt = {});

} // namespace charvar
