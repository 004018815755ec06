#include "stri/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stri/csv.hpp"

namespace stri {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_theta_value(const std::string& s) {
    // a few symbolic tags are accepted for convenience; they only fix the
    // double value, the tag itself is carried separately for reporting
    if (s == "sqrt2") return 1.41421356237309515;
    if (s == "sqrt3") return 1.7320508075688772;
    if (s == "sqrt5") return 2.23606797749979;
    if (s == "golden") return 1.618033988749895;
    return std::stod(s);
}

}  // namespace

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    bool theta_given = false;
    while (std::getline(ss, line)) {
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("config: expected key = value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "version") cfg.version = std::stoi(value);
        else if (key == "experiment") cfg.experiment = value;
        else if (key == "d") cfg.d = std::stoi(value);
        else if (key == "theta") {
            cfg.theta.clear();
            cfg.theta_tags.clear();
            for (const auto& item : split_list(value)) {
                cfg.theta.push_back(parse_theta_value(item));
                cfg.theta_tags.push_back(item);
            }
            theta_given = true;
        } else if (key == "p") cfg.p = std::stod(value);
        else if (key == "r") cfg.r = std::stod(value);
        else if (key == "N") {
            cfg.N_list.clear();
            for (const auto& item : split_list(value)) cfg.N_list.push_back(std::stoll(item));
        } else if (key == "I") {
            auto parts = split_list(value);
            if (parts.size() != 2) throw std::runtime_error("config: I needs two endpoints");
            cfg.t0 = std::stod(parts[0]);
            cfg.t1 = std::stod(parts[1]);
        } else if (key == "grid_oversample_x") cfg.grid_oversample_x = std::stoll(value);
        else if (key == "grid_oversample_t") cfg.grid_oversample_t = std::stoll(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "random_seeds") cfg.random_seeds = std::stoi(value);
        else if (key == "families") cfg.families = split_list(value);
        else if (key == "workers") cfg.workers = std::stoi(value);
        else if (key == "partial") cfg.partial = (value == "1" || value == "true");
        else if (key == "k") cfg.k = std::stoi(value);
        else if (key == "mu") cfg.mu = std::stoi(value);
        else if (key == "dt") cfg.dt = std::stod(value);
        else if (key == "T") cfg.T = std::stod(value);
        else if (key == "amplitude") cfg.amplitude = std::stod(value);
        else if (key == "radii") {
            cfg.radii.clear();
            for (const auto& item : split_list(value)) cfg.radii.push_back(std::stoll(item));
        } else if (key == "s") cfg.s = std::stod(value);
        else if (key == "delta") cfg.delta = std::stod(value);
        else if (key == "eps") cfg.eps = std::stod(value);
        else if (key == "lambda_power") cfg.lambda_power = std::stod(value);
        else if (key == "inputs") cfg.inputs = split_list(value);
        else if (key == "fit_tolerance") cfg.fit_tolerance = std::stod(value);
        else throw std::runtime_error("config: unknown key " + key);
    }
    if (theta_given) cfg.d = static_cast<int>(cfg.theta.size());
    if (cfg.version != 1) throw std::runtime_error("config: unsupported version");
    return cfg;
}

void RunConfig::validate() const {
    static const std::vector<std::string> known = {"moment",   "strichartz", "multilinear",
                                                   "levelset", "arcs",       "kernel",
                                                   "nls",      "fit"};
    if (std::find(known.begin(), known.end(), experiment) == known.end())
        throw std::runtime_error("config: unknown experiment '" + experiment + "'");
    if (experiment != "fit" && experiment != "moment" && experiment != "arcs" &&
        experiment != "kernel") {
        if (static_cast<int>(theta.size()) != d)
            throw std::runtime_error("config: theta length must equal d");
        for (double t : theta)
            if (!(t > 0)) throw std::runtime_error("config: theta components must be positive");
    }
    if (!(t1 > t0)) throw std::runtime_error("config: empty time interval");
    if (experiment == "strichartz" && N_list.size() < 3)
        throw std::runtime_error("config: strichartz needs >= 3 values of N");
    if (experiment == "nls" && (k < 1 || (mu != 1 && mu != -1) || !(dt > 0) || !(T > 0)))
        throw std::runtime_error("config: bad nls parameters");
    if (experiment == "multilinear" && radii.size() < 2)
        throw std::runtime_error("config: multilinear needs >= 2 radii");
    if (experiment == "fit" && inputs.empty())
        throw std::runtime_error("config: fit needs inputs");
    for (auto n : N_list)
        if (n < 0) throw std::runtime_error("config: N must be >= 0");
}

std::string RunConfig::canonical() const {
    std::map<std::string, std::string> kv;
    auto num = [](double v) { return csv::format_double(v); };
    kv["version"] = std::to_string(version);
    kv["experiment"] = experiment;
    kv["d"] = std::to_string(d);
    {
        std::string t;
        for (std::size_t i = 0; i < theta_tags.size(); ++i) {
            if (i) t += ',';
            t += theta_tags[i];
        }
        if (t.empty())
            for (std::size_t i = 0; i < theta.size(); ++i) {
                if (i) t += ',';
                t += num(theta[i]);
            }
        kv["theta"] = t;
    }
    kv["p"] = num(p);
    kv["r"] = num(r);
    {
        std::string t;
        for (std::size_t i = 0; i < N_list.size(); ++i) {
            if (i) t += ',';
            t += std::to_string(N_list[i]);
        }
        kv["N"] = t;
    }
    kv["I"] = num(t0) + "," + num(t1);
    kv["grid_oversample_x"] = std::to_string(grid_oversample_x);
    kv["grid_oversample_t"] = std::to_string(grid_oversample_t);
    kv["seed"] = std::to_string(seed);
    kv["random_seeds"] = std::to_string(random_seeds);
    {
        std::string t;
        for (std::size_t i = 0; i < families.size(); ++i) {
            if (i) t += ',';
            t += families[i];
        }
        kv["families"] = t;
    }
    kv["partial"] = partial ? "1" : "0";
    kv["k"] = std::to_string(k);
    kv["mu"] = std::to_string(mu);
    kv["dt"] = num(dt);
    kv["T"] = num(T);
    kv["amplitude"] = num(amplitude);
    {
        std::string t;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (i) t += ',';
            t += std::to_string(radii[i]);
        }
        kv["radii"] = t;
    }
    kv["s"] = num(s);
    kv["delta"] = num(delta);
    kv["eps"] = num(eps);
    kv["lambda_power"] = num(lambda_power);
    kv["fit_tolerance"] = num(fit_tolerance);

    std::string out;
    for (const auto& [key, value] : kv) {
        out += key;
        out += '=';
        out += value;
        out += ';';
    }
    return out;
}

std::uint64_t RunConfig::hash() const {
    std::string c = canonical();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : c) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string RunConfig::hash_hex() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

std::string RunConfig::theta_label() const {
    std::string t;
    const auto& src = theta_tags;
    if (!src.empty()) {
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (i) t += '|';
            t += src[i];
        }
        return t;
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (i) t += '|';
        t += csv::format_double(theta[i]);
    }
    return t;
}

}  // namespace stri
