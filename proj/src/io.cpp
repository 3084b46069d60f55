#include "hjhomog/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hjh {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write file: " + path);
    return out;
}

json meta_json(const FieldMeta& m) {
    return json{{"scheme", m.scheme},     {"dt", m.dt},
                {"lambda", m.lambda},     {"residual", m.residual},
                {"iterations", m.iterations}, {"cfl_factor", m.cfl_factor},
                {"lipschitz", m.lipschitz},   {"value_bound", m.value_bound}};
}

} // namespace

void write_field_csv(const std::string& path, const ValueField& field) {
    auto out = open_out(path);
    out << "index,x1,x2,value\n";
    const Grid& g = field.grid;
    if (g.dim == 1) {
        for (int i = 0; i < g.n[0]; ++i)
            out << i << ',' << format_double(g.point1(i)) << ",0," << format_double(field.values[i])
                << '\n';
    } else {
        for (int i = 0; i < g.n[0]; ++i)
            for (int j = 0; j < g.n[1]; ++j) {
                const Vec2 x = g.point2(i, j);
                out << g.index(i, j) << ',' << format_double(x.x) << ',' << format_double(x.y)
                    << ',' << format_double(field.values[g.index(i, j)]) << '\n';
            }
    }
    auto meta = open_out(path + ".meta.json");
    meta << meta_json(field.meta).dump(2) << '\n';
}

void write_curve_csv(const std::string& path, const FluxLimiterCurve& curve) {
    auto out = open_out(path);
    out << "p2,value,rho_last,increment,converged";
    if (!curve.extra.empty())
        out << ',' << curve.extra_name;
    out << '\n';
    for (size_t i = 0; i < curve.p2.size(); ++i) {
        out << format_double(curve.p2[i]) << ',' << format_double(curve.value[i]) << ','
            << format_double(i < curve.rho_last.size() ? curve.rho_last[i] : 0.0) << ','
            << format_double(i < curve.increment.size() ? curve.increment[i] : 0.0) << ','
            << (i < curve.converged.size() ? curve.converged[i] : 1);
        if (!curve.extra.empty())
            out << ',' << format_double(curve.extra[i]);
        out << '\n';
    }
}

void write_table_csv(const std::string& path, const EffectiveTable& table) {
    auto out = open_out(path);
    out << "p1,p2,value\n";
    for (size_t i = 0; i < table.p1_nodes.size(); ++i)
        for (size_t j = 0; j < table.p2_nodes.size(); ++j)
            out << format_double(table.p1_nodes[i]) << ',' << format_double(table.p2_nodes[j])
                << ',' << format_double(table.values[i * table.p2_nodes.size() + j]) << '\n';
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot hash missing file: " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.good()) {
        in.read(buf, sizeof(buf));
        EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

namespace {

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config: cannot parse list entry '" + item + "' for " + key);
        }
    }
    if (out.empty())
        throw ConfigError("config: empty list for " + key);
    return out;
}

double parse_num(const std::string& s, const std::string& key) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + s + "' for " + key);
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    RunConfig c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "medium.medium" || key == "medium.builtin" || key == "medium.file")
            c.medium = val;
        else if (key == "medium.far_field")
            c.far_field = (val == "true" || val == "1" || val == "yes");
        else if (key == "medium.far_field_cap")
            c.far_field_cap = parse_num(val, key);
        else if (key == "profile.a")
            c.profile_a = parse_num(val, key);
        else if (key == "profile.b")
            c.profile_b = parse_num(val, key);
        else if (key == "profile.h")
            c.profile_h = parse_num(val, key);
        else if (key == "profile.samples")
            c.profile_samples = val;
        else if (key == "scales.eta_list")
            c.eta_list = parse_list(val, key);
        else if (key == "scales.eps_list")
            c.eps_list = parse_list(val, key);
        else if (key == "cell.p2_list")
            c.p2_list = parse_list(val, key);
        else if (key == "cell.rho_schedule")
            c.rho_schedule = parse_list(val, key);
        else if (key == "cell.rho_schedule_1d")
            c.rho_schedule_1d = parse_list(val, key);
        else if (key == "cell.lambda_schedule")
            c.lambda_schedule = parse_list(val, key);
        else if (key == "cell.increment_tol")
            c.increment_tol = parse_num(val, key);
        else if (key == "solver.discount")
            c.discount = parse_num(val, key);
        else if (key == "solver.tol")
            c.tol = parse_num(val, key);
        else if (key == "solver.jobs")
            c.jobs = static_cast<int>(parse_num(val, key));
        else if (key == "solver.finger_n2")
            c.finger_n2 = static_cast<int>(parse_num(val, key));
        else if (key == "solver.finger_h1")
            c.finger_h1 = parse_num(val, key);
        else if (key == "solver.max_n1")
            c.max_n1 = static_cast<int>(parse_num(val, key));
        else if (key == "output.dir")
            c.out_dir = val;
        else
            throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    if (!(0.0 < c.profile_a && c.profile_a < c.profile_b && c.profile_b < 1.0))
        throw ConfigError("config: profile needs 0 < a < b < 1");
    if (!(c.tol > 0.0) || !(c.increment_tol > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (!(c.discount > 0.0))
        throw ConfigError("config: discount must be positive");
    if (c.p2_list.empty() || c.eps_list.empty() || c.eta_list.empty())
        throw ConfigError("config: p2/eps/eta lists must be nonempty");
    if (c.lambda_schedule.size() < 2)
        throw ConfigError("config: lambda_schedule needs at least 2 entries");
    for (size_t i = 1; i < c.lambda_schedule.size(); ++i)
        if (c.lambda_schedule[i] >= c.lambda_schedule[i - 1])
            throw ConfigError("config: lambda_schedule must be decreasing");
    if (c.medium != "c5" && c.medium != "asym") {
        std::ifstream probe(c.medium);
        if (!probe)
            throw ConfigError("config: medium file not found: " + c.medium);
    }
    if (!c.profile_samples.empty()) {
        std::ifstream probe(c.profile_samples);
        if (!probe)
            throw ConfigError("config: profile samples file not found: " + c.profile_samples);
    }
}

MediumPair medium_from_config(const RunConfig& c) {
    MediumPair pair;
    if (c.medium == "c5")
        pair = make_pair_c5();
    else if (c.medium == "asym")
        pair = make_pair_asym();
    else
        pair = load_medium_file(c.medium);
    if (c.far_field)
        pair.far_field_cost = FarFieldCost{1.0, c.far_field_cap};
    return pair;
}

ToothProfile profile_from_config(const RunConfig& c) {
    if (!c.profile_samples.empty()) {
        std::ifstream in(c.profile_samples);
        std::vector<double> samples;
        double v;
        while (in >> v)
            samples.push_back(v);
        return ToothProfile::sampled(c.profile_a, c.profile_b, std::move(samples));
    }
    return ToothProfile::sine(c.profile_a, c.profile_b, c.profile_h);
}

CellOptions cell_options_from_config(const RunConfig& c) {
    CellOptions o;
    o.lambda_schedule = c.lambda_schedule;
    o.increment_tol = c.increment_tol;
    o.n2 = c.finger_n2;
    o.h1 = c.finger_h1;
    o.max_n1 = c.max_n1;
    o.tol = c.tol;
    return o;
}

std::map<std::string, std::string> RunConfig::flat() const {
    const auto list_str = [](const std::vector<double>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + format_double(v[i]);
        return s;
    };
    return {
        {"medium.medium", medium},
        {"medium.far_field", far_field ? "true" : "false"},
        {"medium.far_field_cap", format_double(far_field_cap)},
        {"profile.a", format_double(profile_a)},
        {"profile.b", format_double(profile_b)},
        {"profile.h", format_double(profile_h)},
        {"profile.samples", profile_samples},
        {"scales.eta_list", list_str(eta_list)},
        {"scales.eps_list", list_str(eps_list)},
        {"cell.p2_list", list_str(p2_list)},
        {"cell.rho_schedule", list_str(rho_schedule)},
        {"cell.rho_schedule_1d", list_str(rho_schedule_1d)},
        {"cell.lambda_schedule", list_str(lambda_schedule)},
        {"cell.increment_tol", format_double(increment_tol)},
        {"solver.discount", format_double(discount)},
        {"solver.tol", format_double(tol)},
        {"solver.jobs", std::to_string(jobs)},
        {"solver.finger_n2", std::to_string(finger_n2)},
        {"solver.finger_h1", format_double(finger_h1)},
        {"solver.max_n1", std::to_string(max_n1)},
        {"output.dir", out_dir},
    };
}

RunManifest::RunManifest(const RunConfig& config) : config_(config.flat()) {}

void RunManifest::add_stage(const std::string& name, double seconds) {
    stages_.emplace_back(name, seconds);
}

void RunManifest::add_artifact(const std::string& path) {
    artifacts_.emplace_back(path, sha256_file(path));
}

void RunManifest::add_check(const std::string& name, bool pass, const std::string& detail) {
    checks_.push_back({name, pass, detail});
}

bool RunManifest::verify_artifacts() const {
    for (const auto& [path, hash] : artifacts_)
        if (sha256_file(path) != hash)
            return false;
    return true;
}

void RunManifest::write(const std::string& path) const {
    json j;
    j["config"] = config_;
    j["stages"] = json::array();
    for (const auto& [name, secs] : stages_)
        j["stages"].push_back({{"name", name}, {"seconds", secs}});
    j["artifacts"] = json::array();
    for (const auto& [p, hash] : artifacts_)
        j["artifacts"].push_back({{"path", p}, {"sha256", hash}});
    j["checks"] = json::array();
    for (const auto& c : checks_)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace hjh
