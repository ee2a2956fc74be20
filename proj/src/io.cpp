// SPDX-License-Identifier: MIT
#include "ffrtf/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

std::string strip(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::string& required(const std::map<std::string, std::string>& kv, const std::string& key)
{
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("curve spec is missing '" + key + "'");
    return it->second;
}

long parse_long(const std::string& s)
{
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
}

FieldSpec field_from_q(long q)
{
    if (q < 3) throw std::invalid_argument("q must be at least 3");
    for (long p = 2; p <= q; ++p) {
        if (q % p) continue;
        unsigned k = 0;
        long r = q;
        while (r % p == 0) {
            r /= p;
            ++k;
        }
        if (r != 1) throw std::invalid_argument("q is not a prime power");
        FieldSpec fs{static_cast<unsigned>(p), k};
        fs.validate();
        return fs;
    }
    throw std::invalid_argument("q is not a prime power");
}

} // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        if (kv.count(key)) throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = strip(line.substr(eq + 1));
    }
    return kv;
}

std::vector<long> parse_integers(const std::string& s)
{
    std::vector<long> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(parse_long(tok));
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s)
{
    std::vector<Rational> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        Rational r;
        if (r.set_str(tok, 10) != 0) throw std::invalid_argument("not a rational: " + tok);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

CurveSpec parse_curve_spec(std::istream& in)
{
    auto kv = parse_key_values(in);
    CurveSpec spec;
    const std::string& backend = required(kv, "backend");
    spec.field = field_from_q(parse_long(required(kv, "q")));
    if (kv.count("name")) spec.name = kv["name"];
    if (backend == "hyperelliptic") {
        spec.backend = Backend::hyperelliptic;
        spec.f = parse_integers(required(kv, "f"));
        spec.f1 = parse_integers(required(kv, "f1"));
    } else if (backend == "synthetic") {
        spec.backend = Backend::synthetic;
        spec.genus = static_cast<int>(parse_long(required(kv, "g")));
        spec.split = parse_integers(required(kv, "split"));
        spec.inert = parse_integers(required(kv, "inert"));
    } else {
        throw std::invalid_argument("unknown backend '" + backend + "'");
    }
    return spec;
}

CurveSpec load_curve_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CurveSpec spec = parse_curve_spec(in);
    if (spec.name.empty()) {
        auto slash = path.find_last_of('/');
        std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
        spec.name = base.substr(0, base.find('.'));
    }
    return spec;
}

std::string format_curve_spec(const CurveSpec& spec)
{
    std::ostringstream os;
    auto list = [&](const std::vector<long>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << "\n";
    };
    if (!spec.name.empty()) os << "name = " << spec.name << "\n";
    os << "q = " << spec.field.q() << "\n";
    if (spec.backend == Backend::hyperelliptic) {
        os << "backend = hyperelliptic\nf = ";
        list(spec.f);
        os << "f1 = ";
        list(spec.f1);
    } else {
        os << "backend = synthetic\ng = " << spec.genus << "\nsplit = ";
        list(spec.split);
        os << "inert = ";
        list(spec.inert);
    }
    return os.str();
}

std::string data_dir()
{
    if (const char* env = std::getenv("FFRTF_DATA_DIR")) return env;
    return FFRTF_DATA_DIR;
}

} // namespace ffrtf
