#include "charvar/session.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

/* CHARVAR_TIMEOUT_SECS caps any single basis computation; default 60. */
bool timeout_from_env(std::chrono::seconds& out, std::string& err) {
    const char* raw = std::getenv("CHARVAR_TIMEOUT_SECS");
    if (!raw) return true;
    std::string s(raw);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        })) {
        err = "CHARVAR_TIMEOUT_SECS must be a nonnegative integer, got \"" + s + "\"";
        return false;
    }
    try {
        out = std::chrono::seconds(std::stol(s));
    } catch (const std::exception&) {
        err = "CHARVAR_TIMEOUT_SECS out of range";
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"characteristic varieties of filtered differential modules over F_p"};
    std::string session_path, fixtures_dir, order = "weighted";
    std::uint32_t prime = 0;
    int dim = 0, slack = 4;
    bool json_flag = false;

    app.add_option("session", session_path, "session file (reads stdin when absent)");
    app.add_option("--prime", prime, "default prime when the session has no ring line");
    app.add_option("--dim", dim, "default coordinate count when the session has no ring line");
    app.add_option("--order", order, "commutative monomial order for typed-in ideals")
        ->check(CLI::IsMember({"degrevlex", "weighted"}));
    app.add_option("--slack", slack, "extra degrees added to purity effective bounds")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--fixtures", fixtures_dir,
                   "run every *.session file in a directory against its *.expected sibling");
    app.add_flag("--json", json_flag, "emit JSON reports (the default and only format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    charvar::SessionOptions opt;
    opt.prime = prime;
    opt.dim = dim;
    opt.slack = slack;
    opt.order = order == "degrevlex" ? charvar::OrderKind::degrevlex
                                     : charvar::OrderKind::weighted;
    std::string env_err;
    if (!timeout_from_env(opt.timeout, env_err)) {
        std::cerr << "charvar: " << env_err << "\n";
        return 2;
    }

    if (!fixtures_dir.empty()) {
        if (!session_path.empty()) {
            std::cerr << "charvar: --fixtures and a session file are mutually exclusive\n";
            return 2;
        }
        charvar::FixtureSummary sum = charvar::run_fixtures(fixtures_dir, opt);
        if (!sum.warning.empty()) std::cerr << "charvar: " << sum.warning << "\n";
        for (const auto& o : sum.outcomes) {
            if (o.passed)
                std::cout << "PASS " << o.name << "\n";
            else
                std::cout << "FAIL " << o.name << ": " << o.detail << "\n";
        }
        return sum.exit_code;
    }

    std::string text;
    if (session_path.empty()) {
        std::ostringstream os;
        os << std::cin.rdbuf();
        text = os.str();
    } else {
        std::ifstream in(session_path, std::ios::binary);
        if (!in) {
            std::cerr << "charvar: cannot read " << session_path << "\n";
            return 2;
        }
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }

    charvar::SessionResult res = charvar::run_session(text, opt);
    std::cout << res.output;
    if (res.exit_code != 0) std::cerr << "charvar: " << res.error << "\n";
    return res.exit_code;
}
