// Command-line front end: single computation, batch processing, benchmarking,
// and an embedded self-test.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 internal
// consistency failure (including method disagreement in `both` mode).

#include <CLI11.hpp>
#include <fdsum/fdsum.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fdsum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

Integer parse_integer(const std::string& s) {
    std::string t = s;
    std::size_t b = t.find_first_not_of(" \t");
    std::size_t e = t.find_last_not_of(" \t");
    t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    if (t.empty()) throw InvalidInstance("bad_integer", "empty integer");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw InvalidInstance("bad_integer", "bad integer '" + s + "'");
    for (std::size_t i = start; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
            throw InvalidInstance("bad_integer", "bad integer '" + s + "'");
    return Integer(t);
}

IntVector parse_int_list(const std::string& s) {
    IntVector out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) {
        std::size_t b = cur.find_first_not_of(" \t");
        std::size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos) throw InvalidInstance("bad_integer", "empty list entry");
        out.push_back(parse_integer(cur.substr(b, e - b + 1)));
    }
    return out;
}

std::string join_list(const IntVector& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s;
}

std::string instance_label(const FDInstance& inst) {
    return "s_" + inst.n.get_str() + "(" + join_list(inst.a) + ";" + inst.b.get_str() + ")";
}

std::string format_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", ms);
    return buf;
}

// Reduced fraction for the exact methods; the float method reports the dyadic
// rational of the computed double (exact and schema-stable).
std::string value_fraction(const FDResult& r) {
    if (r.value) return r.value->str_fraction();
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), *r.approx);
    return Rational(Integer(q.get_num()), Integer(q.get_den())).str_fraction();
}

std::string value_plain(const FDResult& r) {
    if (r.value) return r.value->str();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", *r.approx);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

std::string json_record(const FDInstance& inst, const std::string& method,
                        const std::string& value, long long cones, double ms) {
    std::string s = "{\"n\":" + inst.n.get_str() + ",\"a\":[" + join_list(inst.a) + "]";
    s += ",\"b\":" + inst.b.get_str();
    s += ",\"method\":\"" + method + "\"";
    s += ",\"value\":\"" + value + "\"";
    s += ",\"unimodular_cones\":" + std::to_string(cones);
    s += ",\"time_ms\":" + format_ms(ms) + "}";
    return s;
}

Method single_method(const std::string& name) {
    if (name == "barvinok") return Method::barvinok;
    if (name == "cyclotomic") return Method::cyclotomic;
    if (name == "float") return Method::floating;
    throw InvalidInstance("bad_method", "unknown method '" + name + "'");
}

int run_compute(const std::string& n_str, const std::string& a_str, const std::string& b_str,
                const std::string& method, const std::string& format, bool dump) {
    FDInstance inst;
    try {
        inst = validate(parse_integer(n_str), parse_int_list(a_str), parse_integer(b_str));
        if (format != "plain" && format != "json")
            throw InvalidInstance("bad_format", "unknown format '" + format + "'");
        if (method != "both") single_method(method);
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    try {
        ComputeOptions opts;
        opts.keep_decomposition = dump;
        FDResult res;
        if (method == "both") {
            FDResult rb = compute(inst, Method::barvinok, opts);
            FDResult rc = compute(inst, Method::cyclotomic);
            if (*rb.value != *rc.value) {
                std::cerr << "internal error: method disagreement for " << instance_label(inst)
                          << ": barvinok " << rb.value->str() << " vs cyclotomic "
                          << rc.value->str() << "\n";
                return kExitInternal;
            }
            rb.elapsed_ms += rc.elapsed_ms;
            res = std::move(rb);
        } else {
            res = compute(inst, single_method(method), opts);
        }
        if (format == "json")
            std::cout << json_record(inst, method, value_fraction(res), res.unimodular_cones,
                                     res.elapsed_ms)
                      << "\n";
        else
            std::cout << instance_label(inst) << " = " << value_plain(res) << "\n";
        if (dump && res.decomposition) std::cout << fdsum::dump(*res.decomposition);
        return kExitOk;
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int run_batch(const std::string& input, const std::string& format, const std::string& method) {
    Method m = Method::barvinok;
    try {
        m = single_method(method);
        if (format != "jsonl" && format != "csv")
            throw InvalidInstance("bad_format", "unknown format '" + format + "'");
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    std::ifstream file;
    std::istream* in = &std::cin;
    if (input != "-") {
        file.open(input);
        if (!file) {
            std::cerr << "error: cannot read '" << input << "'\n";
            return kExitIo;
        }
        in = &file;
    }
    if (format == "csv") std::cout << "n,a,b,method,value,unimodular_cones,time_ms,error\n";
    auto emit_error = [&format](long lineno, const std::string& message) {
        if (format == "csv")
            std::cout << ",,,,,,,\"line " << lineno << ": " << json_escape(message) << "\"\n";
        else
            std::cout << "{\"line\":" << lineno << ",\"error\":\"" << json_escape(message)
                      << "\"}\n";
    };
    bool any_invalid = false;
    std::string line;
    long lineno = 0;
    while (std::getline(*in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        FDInstance inst;
        try {
            std::vector<std::string> parts;
            std::string cur;
            std::stringstream ss(line);
            while (std::getline(ss, cur, ';')) parts.push_back(cur);
            if (parts.size() != 3)
                throw InvalidInstance("bad_line", "expected 'n; a1,...,ad; b'");
            inst = validate(parse_integer(parts[0]), parse_int_list(parts[1]),
                            parse_integer(parts[2]));
        } catch (const InvalidInstance& e) {
            any_invalid = true;
            emit_error(lineno, e.what());
            continue;
        }
        try {
            FDResult res = compute(inst, m);
            if (format == "csv")
                std::cout << inst.n.get_str() << ",\"" << join_list(inst.a) << "\","
                          << inst.b.get_str() << "," << method_name(m) << ","
                          << value_fraction(res) << "," << res.unimodular_cones << ","
                          << format_ms(res.elapsed_ms) << ",\n";
            else
                std::cout << json_record(inst, method_name(m), value_fraction(res),
                                         res.unimodular_cones, res.elapsed_ms)
                          << "\n";
        } catch (const BoundExceeded& e) {
            any_invalid = true;
            emit_error(lineno, e.what());
        } catch (const Error& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return kExitInternal;
        }
    }
    return any_invalid ? kExitInvalid : kExitOk;
}

int run_bench(const std::string& a_str, const std::string& n_str, const std::string& blist_str,
              int repeat, const std::string& method) {
    IntVector a, blist;
    Integer n;
    Method m = Method::barvinok;
    try {
        m = single_method(method);
        if (m == Method::floating)
            throw InvalidInstance("bad_method", "bench supports barvinok or cyclotomic");
        if (repeat < 1) throw InvalidInstance("bad_repeat", "--repeat must be >= 1");
        a = parse_int_list(a_str);
        n = parse_integer(n_str);
        blist = parse_int_list(blist_str);
        for (const auto& b : blist) validate(n, a, b);
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    std::cout << "b,method,time_ms_median,value\n";
    for (const auto& b : blist) {
        FDInstance inst{n, a, b};
        std::vector<double> times;
        std::string value;
        try {
            for (int r = 0; r < repeat; ++r) {
                FDResult res = compute(inst, m);
                times.push_back(res.elapsed_ms);
                value = res.value->str();
            }
        } catch (const BoundExceeded& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInvalid;
        } catch (const Error& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return kExitInternal;
        }
        std::sort(times.begin(), times.end());
        double median = (times.size() % 2)
                            ? times[times.size() / 2]
                            : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
        std::cout << b.get_str() << "," << method_name(m) << "," << format_ms(median) << ","
                  << value << "\n";
    }
    return kExitOk;
}

struct SelftestRng {
    std::uint64_t s = 0x5eedf00dcafe1234ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Deterministic output (no timing), so repeated invocations are byte-identical.
int run_selftest() {
    int failures = 0;
    auto report = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };
    try {
        {
            FDInstance inst = validate(4, {4, 3, 5}, 7);
            Rational vb = *compute(inst, Method::barvinok).value;
            Rational vc = *compute(inst, Method::cyclotomic).value;
            report("golden s_4(4,3,5;7) = 1/7 via barvinok", vb == Rational(1, 7));
            report("golden s_4(4,3,5;7) = 1/7 via cyclotomic", vc == Rational(1, 7));
        }
        {
            bool ok = *compute(validate(0, {1}, 2), Method::barvinok).value == Rational(1, 4) &&
                      *compute(validate(1, {1}, 2), Method::barvinok).value == Rational(-1, 4) &&
                      *compute(validate(0, {1}, 3), Method::barvinok).value == Rational(1, 3);
            report("closed-form values s_0(1;2), s_1(1;2), s_0(1;3)", ok);
        }
        {
            SelftestRng rng;
            int agreed = 0, total = 0;
            while (total < 25) {
                Integer b(rng.range(2, 60));
                std::size_t d = static_cast<std::size_t>(rng.range(1, 3));
                IntVector a;
                for (std::size_t j = 0; j < d; ++j) {
                    Integer x(rng.range(1, 200));
                    if (gcd_of(x, b) != 1) {
                        a.clear();
                        break;
                    }
                    a.push_back(x);
                }
                if (a.size() != d) continue;
                Integer n(rng.range(-60, 120));
                FDInstance inst{n, a, b};
                ++total;
                if (*compute(inst, Method::barvinok).value ==
                    *compute(inst, Method::cyclotomic).value)
                    ++agreed;
            }
            report("25 random instances: barvinok agrees with cyclotomic (" +
                       std::to_string(agreed) + "/25)",
                   agreed == 25);
        }
    } catch (const Error& e) {
        std::cout << "FAIL  unexpected error: " << e.what() << "\n";
        ++failures;
    }
    std::cout << (failures ? "selftest: FAILURE (" + std::to_string(failures) + ")"
                           : "selftest: all checks passed")
              << "\n";
    return failures ? kExitInternal : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Fourier-Dedekind sums s_n(a_1,...,a_d;b)"};
    app.require_subcommand(1);

    std::string n_str, a_str, b_str, blist_str;
    std::string method = "barvinok";
    std::string format = "plain";
    std::string input = "-";
    bool dump = false;
    int repeat = 3;

    CLI::App* compute_cmd = app.add_subcommand("compute", "compute one value");
    compute_cmd->add_option("--n", n_str, "numerator shift n")->required();
    compute_cmd->add_option("--a", a_str, "comma-separated a_1,...,a_d")->required();
    compute_cmd->add_option("--b", b_str, "modulus b")->required();
    compute_cmd->add_option("--method", method, "barvinok|cyclotomic|float|both");
    compute_cmd->add_option("--format", format, "plain|json");
    compute_cmd->add_flag("--dump-decomposition", dump, "print the canonical SRF terms");

    std::string batch_format = "jsonl";
    std::string batch_method = "barvinok";
    CLI::App* batch_cmd = app.add_subcommand("batch", "process 'n; a1,...,ad; b' lines");
    batch_cmd->add_option("--input", input, "input file, or - for stdin")->required();
    batch_cmd->add_option("--format", batch_format, "jsonl|csv");
    batch_cmd->add_option("--method", batch_method, "barvinok|cyclotomic|float");

    std::string bench_method = "barvinok";
    CLI::App* bench_cmd = app.add_subcommand("bench", "CSV timing over a list of b values");
    bench_cmd->add_option("--a", a_str, "comma-separated a_1,...,a_d")->required();
    bench_cmd->add_option("--n", n_str, "numerator shift n")->required();
    bench_cmd->add_option("--b-list", blist_str, "comma-separated b values")->required();
    bench_cmd->add_option("--repeat", repeat, "repetitions per point (median reported)");
    bench_cmd->add_option("--method", bench_method, "barvinok|cyclotomic");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the embedded golden suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitInvalid;
    }

    if (compute_cmd->parsed()) return run_compute(n_str, a_str, b_str, method, format, dump);
    if (batch_cmd->parsed()) return run_batch(input, batch_format, batch_method);
    if (bench_cmd->parsed()) return run_bench(a_str, n_str, blist_str, repeat, bench_method);
    if (selftest_cmd->parsed()) return run_selftest();
    return kExitInvalid;
}
