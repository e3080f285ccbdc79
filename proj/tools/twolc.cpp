#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "twolc/blab.hpp"
#include "twolc/cf_core.hpp"
#include "twolc/equivalence.hpp"
#include "twolc/exclusion_search.hpp"
#include "twolc/hurwitz.hpp"

using namespace twolc;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// A `[...]` literal is a continued fraction, anything else a surd.
ContinuedFraction read_value(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return ContinuedFraction::parse(text);
    return expand_surd(QuadraticSurd::parse(text));
}

std::string prefix_str(const ContinuedFraction& cf, std::size_t digits) {
    const Digits d = cf.take(digits + 1);
    std::string out = "[" + to_string(d[0]);
    for (std::size_t i = 1; i < d.size(); ++i) out += (i == 1 ? "; " : ", ") + to_string(d[i]);
    if (!cf.is_finite() || d.size() > digits) out += d.size() > 1 ? ", ..." : "; ...";
    return out + "]";
}

Json digits_json(const Digits& d) {
    Json a = Json::array();
    for (const auto& x : d) a.push_back(to_string(x));
    return a;
}

Json cf_json(const ContinuedFraction& cf, std::size_t digits) {
    Json j;
    if (cf.kind() == ContinuedFraction::Kind::Stream) {
        j["prefix"] = digits_json(cf.take(digits + 1));
        return j;
    }
    j["cf"] = cf.str();
    j["a0"] = to_string(cf.a0());
    if (cf.is_finite()) {
        j["body"] = digits_json(cf.body());
    } else {
        j["preperiod"] = digits_json(cf.preperiod());
        j["period"] = digits_json(cf.period());
    }
    return j;
}

void print_cf(const std::string& label, const ContinuedFraction& cf, std::size_t digits) {
    if (!label.empty()) std::cout << label << " = ";
    std::cout << (cf.kind() == ContinuedFraction::Kind::Stream ? prefix_str(cf, digits) : cf.str()) << '\n';
}

Json key_json(const ClassKey& k) { return digits_json(k.word); }

void report_parse_error(const std::string& input, const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n' << "  " << input << '\n'
              << "  " << std::string(e.position(), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplication of continued fractions by 2 and the 2-adic Littlewood searches"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Machine-readable output");

    std::string value;
    std::size_t digits = 0;
    bool digits_set = false;

    auto* expand = app.add_subcommand("expand", "Continued fraction of a quadratic surd");
    expand->add_option("value", value, "Surd such as \"(3 + sqrt(17))/2\"")->required();
    expand->add_option("--digits", digits, "Also print the first N partial quotients");

    struct UnaryOp {
        const char* name;
        const char* help;
        ContinuedFraction (*fn)(const ContinuedFraction&);
    };
    const UnaryOp unary_ops[] = {
        {"double", "2 x by the sliding-window algorithm", &double_cf},
        {"halve", "x / 2", &halve_cf},
        {"halve1", "(x + 1) / 2", &halve_plus1_cf},
    };
    std::vector<std::pair<CLI::App*, const UnaryOp*>> unary;
    for (const auto& op : unary_ops) {
        auto* sub = app.add_subcommand(op.name, op.help);
        sub->add_option("value", value, "CF literal \"[a0; a1, (p1, p2)]\" or surd")->required();
        sub->add_option("--digits", digits, "Prefix length for streamed results");
        unary.emplace_back(sub, &op);
    }

    auto* trio_cmd = app.add_subcommand("trio", "2 x, x / 2 and (x + 1) / 2 with window cases");
    trio_cmd->add_option("value", value, "Positive surd")->required();
    trio_cmd->add_option("--digits", digits, "Windows to annotate (default 20)");

    unsigned C = 0;
    SearchOptions sopts;
    sopts.jobs = default_jobs();
    bool with_witnesses = false;
    auto* search = app.add_subcommand("search", "Exclusion search for a constant C");
    search->add_option("--C", C, "Digit bound")->required()->check(CLI::Range(1u, 64u));
    search->add_option("--max-depth", sopts.max_depth, "Depth cap");
    search->add_option("--k-cap", sopts.k_cap, "Largest doubling exponent tried");
    search->add_option("--jobs", sopts.jobs, "Worker threads");
    search->add_flag("--witnesses", with_witnesses, "Include one witness per excluded prefix");

    long m = 0;
    std::size_t K = 0;
    auto* chain = app.add_subcommand("chain", "beta with 2^k beta in the class of the m-family member");
    chain->add_option("--m", m, "Odd m >= 3")->required();
    chain->add_option("--K", K, "Chain length")->required();

    ScanOptions scan_opts;
    scan_opts.jobs = default_jobs();
    bool csv = false;
    auto* scan = app.add_subcommand("scan", "Self-similar classes among (P + sqrt D)/Q");
    scan->add_option("--d-min", scan_opts.d_min, "Smallest D");
    scan->add_option("--d-max", scan_opts.d_max, "Largest D")->required();
    scan->add_option("--q-max", scan_opts.q_max, "Largest Q")->required();
    scan->add_option("--jobs", scan_opts.jobs, "Worker threads");
    scan->add_flag("--csv", csv, "CSV output");

    std::size_t period_max = 12, preperiod_max = 6;
    unsigned b2_jobs = 1;
    auto* verify_b2 = app.add_subcommand("verify-b2", "Exhaustive check of the B <= 2 characterization");
    verify_b2->add_option("--period-max", period_max, "Longest period");
    verify_b2->add_option("--preperiod-max", preperiod_max, "Longest preperiod");
    verify_b2->add_option("--jobs", b2_jobs, "Worker threads");

    unsigned fC = 0;
    std::size_t f_period = 8, f_pre = 2;
    unsigned f_jobs = default_jobs();
    auto* falsify = app.add_subcommand("falsify", "Bounded search for violations of the B lower bounds");
    falsify->add_option("--C", fC, "2, 3 or 4")->required()->check(CLI::Range(2u, 4u));
    falsify->add_option("--period-max", f_period, "Longest period");
    falsify->add_option("--preperiod-max", f_pre, "Longest preperiod");
    falsify->add_option("--jobs", f_jobs, "Worker threads");

    std::string threshold = "1/15";
    unsigned k_cap = 200;
    auto* witness = app.add_subcommand("witness", "q with q |q|_2 ||q x|| below a threshold");
    witness->add_option("value", value, "Surd")->required();
    witness->add_option("--threshold", threshold, "Rational threshold in (0, 1]");
    witness->add_option("--k-cap", k_cap, "Largest doubling exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    for (auto* sub : app.get_subcommands()) {
        const auto* opt = sub->get_option_no_throw("--digits");
        if (opt != nullptr && opt->count() > 0) digits_set = true;
    }

    try {
        if (expand->parsed()) {
            const QuadraticSurd s = QuadraticSurd::parse(value);
            const ContinuedFraction cf = expand_surd(s);
            if (json) {
                Json j = cf_json(cf, digits);
                j["surd"] = s.str();
                if (digits_set) j["prefix"] = digits_json(cf.take(digits + 1));
                std::cout << j.dump() << '\n';
            } else {
                print_cf("", cf, digits);
                if (digits_set) std::cout << prefix_str(cf, digits) << '\n';
            }
            return kOk;
        }
        for (const auto& [sub, op] : unary) {
            if (!sub->parsed()) continue;
            const ContinuedFraction out = op->fn(read_value(value));
            const std::size_t n = digits_set ? digits : 40;
            if (json) {
                std::cout << cf_json(out, n).dump() << '\n';
            } else {
                print_cf("", out, n);
            }
            return kOk;
        }
        if (trio_cmd->parsed()) {
            const std::size_t n = digits_set ? std::max<std::size_t>(digits, 2) : 20;
            const TrioResult t = trio(QuadraticSurd::parse(value), n);
            Json cases = Json::array();
            for (std::size_t i = 0; i < t.annotations.size(); ++i) {
                const auto& a = t.annotations[i];
                cases.push_back({{"n", i + 2}, {"double", to_string(a[0])}, {"half", to_string(a[1])},
                                 {"half_plus1", to_string(a[2])}});
            }
            if (json) {
                Json j;
                j["double"] = t.twice.str();
                j["half"] = t.half.str();
                j["half_plus1"] = t.half_plus1.str();
                j["windows"] = cases;
                j["distinct"] = t.distinct;
                std::cout << j.dump() << '\n';
            } else {
                print_cf("2x", t.twice, n);
                print_cf("x/2", t.half, n);
                print_cf("(x+1)/2", t.half_plus1, n);
                for (const auto& c : cases) {
                    std::cout << "n=" << c["n"].get<std::size_t>() << ' ' << c["double"].get<std::string>() << ' '
                              << c["half"].get<std::string>() << ' ' << c["half_plus1"].get<std::string>() << '\n';
                }
            }
            return t.distinct ? kOk : kFailed;
        }
        if (search->parsed()) {
            sopts.keep_witnesses = with_witnesses;
            const SearchReport rep = run_search(C, sopts);
            Json j = Json::parse(rep.json());
            if (with_witnesses) {
                j["witnesses"] = Json::array();
                for (const auto& w : rep.witnesses) j["witnesses"].push_back(w.str());
            }
            std::cout << j.dump() << '\n';
            return rep.terminated ? kOk : kFailed;
        }
        if (chain->parsed()) {
            const QuadraticSurd alpha = family_member(m);
            const ChainResult res = build_chain(alpha, K);
            std::vector<Integer> bs;
            for (std::size_t k = 0; k <= K; ++k) {
                bs.push_back(stats(times_pow2(res.beta, static_cast<unsigned>(k))).B);
            }
            if (json) {
                Json j;
                j["m"] = m;
                j["K"] = K;
                j["beta"] = res.beta.str();
                j["target"] = key_json(res.target);
                Json checks = Json::array();
                for (std::size_t k = 0; k <= K; ++k) {
                    checks.push_back({{"k", k}, {"class_key", key_json(res.checks[k])}, {"B", to_string(bs[k])}});
                }
                j["checks"] = checks;
                j["verified"] = res.verified();
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "beta = " << res.beta << '\n' << "target = " << res.target.str() << '\n';
                for (std::size_t k = 0; k <= K; ++k) {
                    std::cout << "k=" << k << " class=" << res.checks[k].str() << " B=" << bs[k] << '\n';
                }
                std::cout << (res.verified() ? "verified" : "FAILED") << '\n';
            }
            return res.verified() ? kOk : kFailed;
        }
        if (scan->parsed()) {
            const auto hits = scan_self_similar(scan_opts);
            if (csv) {
                std::cout << scan_csv(hits);
            } else if (json) {
                Json a = Json::array();
                for (const auto& h : hits) {
                    a.push_back({{"D", h.D}, {"Q", h.Q}, {"P", h.P}, {"period_len", h.key.period_length()},
                                 {"period_max", to_string(h.key.period_max())}, {"class_key", key_json(h.key)}});
                }
                std::cout << a.dump() << '\n';
            } else {
                for (const auto& h : hits) {
                    std::cout << "(" << h.P << " + sqrt(" << h.D << "))/" << h.Q << " period_len=" << h.key.period_length()
                              << " period_max=" << h.key.period_max() << " class=" << h.key.str() << '\n';
                }
            }
            return kOk;
        }
        if (verify_b2->parsed()) {
            const auto rep = b2_exhaustive(period_max, preperiod_max, b2_jobs);
            if (json) {
                Json j;
                j["period_max"] = period_max;
                j["preperiod_max"] = preperiod_max;
                j["checked"] = rep.checked;
                j["shape2"] = rep.shape2;
                j["shape21"] = rep.shape21;
                j["exceptions"] = Json::array();
                for (const auto& e : rep.exceptions) j["exceptions"].push_back(e.str());
                j["ok"] = rep.ok();
                j["seconds"] = rep.seconds;
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "checked=" << rep.checked << " shape2=" << rep.shape2 << " shape21=" << rep.shape21
                          << " exceptions=" << rep.exceptions.size() << '\n';
                for (const auto& e : rep.exceptions) std::cout << "exception " << e << '\n';
            }
            return rep.ok() ? kOk : kFailed;
        }
        if (falsify->parsed()) {
            const auto rep = falsify_bbound(fC, f_period, f_pre, f_jobs);
            if (json) {
                std::cout << rep.json() << '\n';
            } else {
                std::cout << "C=" << fC << " checked=" << rep.checked << " counterexamples=" << rep.counterexamples.size()
                          << " whitelisted=" << rep.whitelisted.size() << '\n';
                for (const auto& c : rep.counterexamples) std::cout << "counterexample " << c.str() << '\n';
                for (const auto& w : rep.whitelisted) {
                    std::cout << "whitelisted " << w.x << " k0=" << w.k0 << " B_after=" << w.b_after
                              << (w.verified() ? "" : " UNVERIFIED") << '\n';
                }
            }
            return rep.ok() ? kOk : kFailed;
        }
        if (witness->parsed()) {
            const QuadraticSurd s = QuadraticSurd::parse(value);
            Rational t;
            {
                const auto slash = threshold.find('/');
                t = slash == std::string::npos
                        ? Rational(Integer(threshold))
                        : Rational(Integer(threshold.substr(0, slash)), Integer(threshold.substr(slash + 1)));
            }
            try {
                const QWitness w = witness_q(s, t, k_cap);
                if (json) {
                    Json j;
                    j["k"] = w.k;
                    j["n"] = w.n;
                    j["digit"] = to_string(w.digit);
                    j["q"] = to_string(w.q);
                    j["value"] = w.value.str();
                    j["value_approx"] = w.value.to_double();
                    j["bound"] = w.bound.str();
                    std::cout << j.dump() << '\n';
                } else {
                    std::cout << "k=" << w.k << " n=" << w.n << " digit=" << w.digit << " q=" << w.q << '\n'
                              << "value = " << w.value << " ~ " << w.value.to_double() << '\n'
                              << "bound = " << w.bound << '\n';
                }
                return kOk;
            } catch (const WitnessSearchExhausted& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kFailed;
            }
        }
    } catch (const ParseError& e) {
        report_parse_error(value, e);
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
