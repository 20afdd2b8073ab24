#include "mkg/product_rules.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace mkg {

namespace {

const Rational kHalf{1, 2};
const Rational kOne{1};
const Rational kThreeHalves{3, 2};
const Rational kTwo{2};
const Rational kFiveHalves{5, 2};

struct Cols {
    Rational s0, s1, s2, b1, b2;
};

/// Evaluates the ten inequalities and strictness exceptions for one column
/// order (b0 = 0 already established).
std::vector<ConditionCheck> evaluate(const Cols& c) {
    std::vector<ConditionCheck> out;
    const Rational ssum = c.s0 + c.s1 + c.s2;
    const Rational bsum = c.b1 + c.b2;

    const bool b1_half = c.b1 == kHalf;
    const bool b2_half = c.b2 == kHalf;
    const bool bsum_one = bsum == kOne;

    // lhs >= rhs conditions with their strictness triggers.
    struct Row {
        const char* id;
        std::string formula;
        Rational lhs, rhs;
        bool strict;
        std::string note;
    };
    std::vector<Row> rows;

    auto strict_note = [](std::initializer_list<std::pair<bool, const char*>> trig) {
        std::string n;
        for (auto& [on, name] : trig)
            if (on) n += (n.empty() ? std::string() : std::string(", ")) + name;
        return n;
    };

    // C03..C06 first: their equality status feeds exception E7.
    const std::string n03 = strict_note({{b1_half, "E1(b1=1/2)"},
                                         {b2_half, "E3(b2=1/2)"},
                                         {bsum_one, "E5(b1+b2=1)"}});
    const std::string n04 = strict_note({{b1_half, "E2(b1=1/2)"}, {b2_half, "E3(b2=1/2)"}});
    const std::string n05 = strict_note({{b1_half, "E1(b1=1/2)"}, {b2_half, "E4(b2=1/2)"}});
    const std::string n06 = strict_note({{b1_half, "E2(b1=1/2)"},
                                         {b2_half, "E4(b2=1/2)"},
                                         {bsum_one, "E5(b1+b2=1)"}});

    rows.push_back({"C03", "s0+s1+s2 >= 2-(b1+b2)", ssum, kTwo - bsum, !n03.empty(), n03});
    rows.push_back({"C04", "s0+s1+s2 >= 3/2-b1", ssum, kThreeHalves - c.b1, !n04.empty(), n04});
    rows.push_back({"C05", "s0+s1+s2 >= 3/2-b2", ssum, kThreeHalves - c.b2, !n05.empty(), n05});
    rows.push_back({"C06", "s0+s1+s2 >= 1", ssum, kOne, !n06.empty(), n06});

    bool any_0306_equal = false;
    for (const Row& r : rows)
        if (r.lhs == r.rhs) any_0306_equal = true;

    // E6: exceptional s0 values force C07 strict.
    const bool s0_exceptional = c.s0 == kHalf || c.s0 == kThreeHalves ||
                                c.s0 == kThreeHalves - kTwo * c.b1 ||
                                c.s0 == kThreeHalves - kTwo * c.b2 ||
                                c.s0 == kFiveHalves - kTwo * bsum;
    rows.push_back({"C07", "s0+2(s1+s2) >= 3/2", c.s0 + kTwo * (c.s1 + c.s2), kThreeHalves,
                    s0_exceptional, s0_exceptional ? "E6(exceptional s0)" : ""});

    const std::string n_e7 = any_0306_equal ? "E7(equality among C03..C06)" : "";
    rows.push_back({"C08", "s1+s2 >= 0", c.s1 + c.s2, Rational(0), any_0306_equal, n_e7});
    rows.push_back({"C09", "s0+s2 >= 0", c.s0 + c.s2, Rational(0), any_0306_equal, n_e7});
    rows.push_back({"C10", "s0+s1 >= 0", c.s0 + c.s1, Rational(0), any_0306_equal, n_e7});

    // C01, C02 are strictness-free base conditions.
    ConditionCheck c01{"C01", "b1 > 0 and b2 > 0", c.b1 > Rational(0) && c.b2 > Rational(0),
                       false, ""};
    ConditionCheck c02{"C02", "b1+b2 >= 1/2", c.b1 + c.b2 >= kHalf, false, ""};
    out.push_back(c01);
    out.push_back(c02);

    for (const Row& r : rows) {
        ConditionCheck cc{r.id, r.formula, false, r.strict, r.note};
        cc.satisfied = r.strict ? (r.lhs > r.rhs) : (r.lhs >= r.rhs);
        out.push_back(cc);
    }
    std::sort(out.begin(), out.end(),
              [](const ConditionCheck& a, const ConditionCheck& b) { return a.id < b.id; });
    return out;
}

int count_failures(const std::vector<ConditionCheck>& cs) {
    int k = 0;
    for (const auto& c : cs)
        if (!c.satisfied) ++k;
    return k;
}

} // namespace

std::string CheckReport::failed_ids() const {
    std::string out;
    for (const auto& c : conditions)
        if (!c.satisfied) out += (out.empty() ? "" : ",") + c.id;
    return out;
}

CheckReport is_product(const ExponentMatrix& M) {
    static const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

    CheckReport best;
    best.verdict = Verdict::OutOfScope;
    int best_fail = -1;

    for (const auto& p : perms) {
        if (!(M.b[p[0]] == Rational(0))) continue;
        Cols c{M.s[p[0]], M.s[p[1]], M.s[p[2]], M.b[p[1]], M.b[p[2]]};
        auto checks = evaluate(c);
        const int fails = count_failures(checks);
        if (fails == 0)
            return CheckReport{Verdict::Product, p, std::move(checks)};
        if (best_fail < 0 || fails < best_fail) {
            best_fail = fails;
            best = CheckReport{Verdict::Rejected, p, std::move(checks)};
        }
    }
    return best;
}

ExponentMatrix parse_matrix_line(const std::string& line) {
    std::istringstream iss(line);
    std::array<Rational, 6> vals;
    std::string tok;
    for (int i = 0; i < 6; ++i) {
        if (!(iss >> tok)) throw ConfigError("expected six rationals, got " + std::to_string(i));
        vals[i] = Rational::parse(tok);
    }
    if (iss >> tok) throw ConfigError("trailing token '" + tok + "' after six rationals");
    ExponentMatrix M;
    M.s = {vals[0], vals[1], vals[2]};
    M.b = {vals[3], vals[4], vals[5]};
    return M;
}

std::vector<ExponentMatrix> parse_matrix_file(std::istream& in) {
    std::vector<ExponentMatrix> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        try {
            out.push_back(parse_matrix_line(line));
        } catch (const ConfigError& e) {
            throw ConfigError("fixture parse error at line " + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return out;
}

std::string to_string(const ExponentMatrix& M) {
    std::string out;
    for (int j = 0; j < 3; ++j) out += M.s[j].str() + " ";
    for (int j = 0; j < 3; ++j) out += M.b[j].str() + (j < 2 ? " " : "");
    return out;
}

} // namespace mkg
