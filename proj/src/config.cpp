// SPDX-License-Identifier: Apache-2.0
#include "starloc/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace starloc {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

ExperimentConfig ExperimentConfig::profile(const std::string& name) {
    ExperimentConfig cfg;
    cfg.snr_db_list.clear();
    for (int s = -10; s <= 40; s += 5) cfg.snr_db_list.push_back(s);
    if (name == "desk") {
        cfg.m = 16;
        cfg.n = 16;
        cfg.k = 33;
        cfg.eps1 = std::sqrt(0.5);
        cfg.eta1 = std::sqrt(0.5);
    } else if (name == "paper") {
        cfg.m = 16;
        cfg.n = 36;
        cfg.k = 100;
        cfg.eps1 = std::sqrt(0.9);
        cfg.eta1 = std::sqrt(0.5);
    } else {
        throw ConfigError("unknown profile '" + name + "' (expected desk or paper)");
    }
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("config key '" + key + "': bad number '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) throw ConfigError("config key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("config key '" + key + "': bad unsigned integer '" + value + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config key '" + key + "': empty list element");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

Position3D parse_vec3(const std::string& key, const std::string& value) {
    const std::vector<double> v = parse_list(key, value);
    if (v.size() != 3) {
        throw ConfigError("config key '" + key + "' must have exactly three components");
    }
    return {v[0], v[1], v[2]};
}

}  // namespace

void ExperimentConfig::apply_text(const std::string& text) {
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line without '=': " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("config key '" + key + "' has no value");

        if (key == "m") {
            m = parse_int(key, value);
        } else if (key == "n") {
            n = parse_int(key, value);
        } else if (key == "k") {
            k = parse_int(key, value);
        } else if (key == "snr_db_list") {
            snr_db_list = parse_list(key, value);
        } else if (key == "eps1") {
            eps1 = parse_double(key, value);
        } else if (key == "eta1") {
            eta1 = parse_double(key, value);
        } else if (key == "schedule") {
            schedule = value;
        } else if (key == "trials") {
            trials = parse_int(key, value);
        } else if (key == "seed") {
            seed = parse_u64(key, value);
        } else if (key == "pathloss") {
            pathloss = value;
        } else if (key == "fc_ghz") {
            fc_ghz = parse_double(key, value);
        } else if (key == "p_b") {
            p_b = parse_vec3(key, value);
        } else if (key == "p_r") {
            p_r = parse_vec3(key, value);
        } else if (key == "p_u1") {
            p_u1 = parse_vec3(key, value);
        } else if (key == "p_u2") {
            p_u2 = parse_vec3(key, value);
        } else if (key == "d_hat") {
            d_hat = parse_double(key, value);
        } else if (key == "phi_hat") {
            phi_hat = parse_double(key, value);
        } else if (key == "mpc_case") {
            mpc_case = parse_int(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

void ExperimentConfig::apply_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_text(buffer.str());
}

void ExperimentConfig::validate() const {
    if (m < 1 || n < 1 || k < 1) throw ConfigError("m, n, k must be positive");
    if (schedule != "dft" && schedule != "random") {
        throw ConfigError("schedule must be 'dft' or 'random'");
    }
    if (schedule == "dft" && k < 2 * n + 1) {
        throw ConfigError("dft schedule requires k >= 2n+1");
    }
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (snr_db_list.empty()) throw ConfigError("snr_db_list must be nonempty");
    if (!(eps1 > 0.0 && eps1 < 1.0)) throw ConfigError("eps1 must lie in (0, 1)");
    if (!(eta1 > 0.0 && eta1 < 1.0)) throw ConfigError("eta1 must lie in (0, 1)");
    if (pathloss != "squared" && pathloss != "freespace" && pathloss != "umi") {
        throw ConfigError("pathloss must be squared, freespace or umi");
    }
    if (!(fc_ghz > 0.0)) throw ConfigError("fc_ghz must be positive");
    if (d_hat < 0.0 || phi_hat < 0.0) throw ConfigError("d_hat, phi_hat must be >= 0");
    if (mpc_case < 0 || mpc_case > 2) throw ConfigError("mpc_case must be 0, 1 or 2");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    out << "m=" << m << "\nn=" << n << "\nk=" << k << "\nsnr_db_list=";
    for (size_t i = 0; i < snr_db_list.size(); ++i) {
        out << (i ? "," : "") << format_double(snr_db_list[i]);
    }
    out << "\neps1=" << format_double(eps1) << "\neta1=" << format_double(eta1)
        << "\nschedule=" << schedule << "\ntrials=" << trials << "\nseed=" << seed
        << "\npathloss=" << pathloss << "\nfc_ghz=" << format_double(fc_ghz);
    const auto vec = [&out](const char* key, const Position3D& p) {
        out << "\n" << key << "=" << format_double(p.x()) << "," << format_double(p.y())
            << "," << format_double(p.z());
    };
    vec("p_b", p_b);
    vec("p_r", p_r);
    vec("p_u1", p_u1);
    vec("p_u2", p_u2);
    out << "\nd_hat=" << format_double(d_hat) << "\nphi_hat=" << format_double(phi_hat)
        << "\nmpc_case=" << mpc_case << "\n";
    return out.str();
}

std::string ExperimentConfig::hash() const {
    // FNV-1a 64
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : canonical()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double ExperimentConfig::wavelength() const { return speed_of_light / (fc_ghz * 1e9); }

PathLossModel ExperimentConfig::path_loss_model() const {
    if (pathloss == "squared") return PathLossModel::squared_distance();
    if (pathloss == "freespace") return PathLossModel::free_space(fc_ghz * 1e6);
    return PathLossModel::umi_3gpp(fc_ghz);
}

Scenario ExperimentConfig::scenario() const {
    const double lambda = wavelength();
    const auto [mx, mz] = square_factor(m);
    const auto [nx, nz] = square_factor(n);
    Scenario sc;
    sc.sys.p_b = p_b;
    sc.sys.p_r = p_r;
    sc.p_u1 = p_u1;
    sc.p_u2 = p_u2;
    sc.sys.bs = ArrayGeometry::half_wavelength(mx, mz, lambda);
    sc.sys.ris = ArrayGeometry::half_wavelength(nx, nz, lambda);
    sc.sys.pathloss = path_loss_model();
    sc.sys.lambda = lambda;
    return sc;
}

PowerConfig ExperimentConfig::power() const { return PowerConfig::from_split(eps1, eta1); }

PhaseSchedule ExperimentConfig::make_schedule() const {
    if (schedule == "dft") return dft_design(n, k);
    return random_design(n, k, seed);
}

}  // namespace starloc
