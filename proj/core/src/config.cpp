#include "ddefit/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ddefit {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

using KvMap = std::map<std::string, std::string>; // "section.key" -> value

KvMap parse_ini(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config: " + path);
    KvMap kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        kv[section + "." + key] = value;
    }
    return kv;
}

double to_double(const std::string& raw, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (trim(raw.substr(pos)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError("config key '" + key + "': bad number '" + raw + "'");
}

Vec to_vec(const std::string& raw, const std::string& key) {
    Vec out;
    std::istringstream ss(raw);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) continue;
        out.push_back(to_double(cell, key));
    }
    return out;
}

bool to_bool(const std::string& raw, const std::string& key) {
    std::string v = raw;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': bad boolean '" + raw + "'");
}

NormKind::Kind to_norm(const std::string& raw, const std::string& key) {
    std::string v = raw;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "l1") return NormKind::L1;
    if (v == "l2") return NormKind::L2;
    if (v == "linf") return NormKind::LInf;
    throw ConfigError("config key '" + key + "': expected l1, l2, or linf, got '" + raw + "'");
}

class Reader {
public:
    explicit Reader(KvMap kv) : kv_(std::move(kv)) {}

    std::optional<std::string> get(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        used_.push_back(key);
        return it->second;
    }
    void set_if(double& target, const std::string& key) {
        if (auto v = get(key)) target = to_double(*v, key);
    }
    void set_if(int& target, const std::string& key) {
        if (auto v = get(key)) target = static_cast<int>(to_double(*v, key));
    }
    void set_if(std::uint64_t& target, const std::string& key) {
        if (auto v = get(key)) target = static_cast<std::uint64_t>(to_double(*v, key));
    }
    void set_if(Vec& target, const std::string& key) {
        if (auto v = get(key)) target = to_vec(*v, key);
    }
    void set_if(bool& target, const std::string& key) {
        if (auto v = get(key)) target = to_bool(*v, key);
    }
    void set_if(std::string& target, const std::string& key) {
        if (auto v = get(key)) target = *v;
    }

    void check_all_used(const std::string& path) const {
        for (const auto& [key, value] : kv_) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw ConfigError(path + ": unknown config key '" + key + "'");
        }
    }

private:
    KvMap kv_;
    std::vector<std::string> used_;
};

} // namespace

RunConfig config_from_benchmark(const std::string& model_name) {
    const Benchmark b = benchmark(model_name);
    RunConfig rc;
    rc.model_name = b.model_name;
    rc.ic_family = b.ic_family;
    rc.theta_true = b.theta_true;
    rc.tau_true = b.tau_true;
    rc.phi_true = b.phi_true;
    rc.theta_init = b.theta_init;
    rc.tau_init = b.tau_init;
    rc.phi_init = b.phi_init;
    rc.init_b_from_data = b.init_b_from_data;
    rc.t_final = b.t_final;
    rc.gen_dt = b.gen_dt;
    rc.n_tau = b.n_tau;
    rc.running_norm = b.running_norm;
    return rc;
}

RunConfig load_config(const std::string& path) {
    Reader reader(parse_ini(path));

    const auto model = reader.get("model.name");
    if (!model) throw ConfigError(path + ": missing required key [model] name");
    RunConfig rc = config_from_benchmark(*model);

    reader.set_if(rc.ic_family, "ic.family");
    reader.set_if(rc.init_b_from_data, "ic.init_b_from_data");

    reader.set_if(rc.theta_true, "true_params.theta");
    reader.set_if(rc.tau_true, "true_params.tau");
    reader.set_if(rc.phi_true, "true_params.phi");
    reader.set_if(rc.theta_init, "init_params.theta");
    reader.set_if(rc.tau_init, "init_params.tau");
    reader.set_if(rc.phi_init, "init_params.phi");

    reader.set_if(rc.t_final, "grid.t_final");
    reader.set_if(rc.gen_dt, "grid.gen_dt");
    reader.set_if(rc.n_tau, "grid.n_tau");

    reader.set_if(rc.n_epochs, "optimizer.n_epochs");
    reader.set_if(rc.lr0, "optimizer.lr");
    reader.set_if(rc.loss_min, "optimizer.loss_min");
    reader.set_if(rc.beta1, "optimizer.beta1");
    reader.set_if(rc.beta2, "optimizer.beta2");
    reader.set_if(rc.tau_floor, "optimizer.tau_floor");

    if (auto v = reader.get("loss.running_norm")) rc.running_norm = to_norm(*v, "loss.running_norm");
    if (auto v = reader.get("loss.terminal_norm")) {
        std::string lowered = *v;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (lowered == "none") rc.terminal_norm.reset();
        else rc.terminal_norm = to_norm(*v, "loss.terminal_norm");
    }

    reader.set_if(rc.noise_levels, "noise.levels");
    reader.set_if(rc.trials, "noise.trials");
    reader.set_if(rc.seed, "noise.seed");
    reader.set_if(rc.out_dir, "output.dir");

    reader.check_all_used(path);

    // validation
    make_model(rc.model_name);
    const auto ic = make_ic(rc.ic_family, benchmark(rc.model_name).d);
    if (rc.n_tau < 1) throw ConfigError(path + ": n_tau must be >= 1");
    if (!(rc.loss_min > 0.0)) throw ConfigError(path + ": loss_min must be positive");
    if (!(rc.tau_init > 0.0) || !(rc.tau_true > 0.0))
        throw ConfigError(path + ": tau values must be positive");
    if (static_cast<int>(rc.phi_init.size()) != ic->param_count() ||
        static_cast<int>(rc.phi_true.size()) != ic->param_count())
        throw ConfigError(path + ": phi length does not match the ic family");
    if (rc.trials < 1) throw ConfigError(path + ": trials must be >= 1");
    for (double l : rc.noise_levels) {
        if (l < 0.0) throw ConfigError(path + ": noise levels must be >= 0");
    }
    return rc;
}

FitConfig make_fit_config(const RunConfig& rc) {
    FitConfig fc;
    fc.model = make_model(rc.model_name);
    fc.ic = make_ic(rc.ic_family, fc.model->dim());
    fc.theta0 = rc.theta_init;
    fc.tau0 = rc.tau_init;
    fc.phi0 = rc.phi_init;
    fc.t_final = rc.t_final;
    fc.n_tau = rc.n_tau;
    fc.n_epochs = rc.n_epochs;
    fc.lr0 = rc.lr0;
    fc.loss_min = rc.loss_min;
    fc.beta1 = rc.beta1;
    fc.beta2 = rc.beta2;
    fc.tau_floor = rc.tau_floor;
    fc.loss.running.kind = rc.running_norm;
    if (rc.terminal_norm) fc.loss.terminal = NormKind{*rc.terminal_norm, std::nullopt};
    fc.init_b_from_data = rc.init_b_from_data;
    return fc;
}

} // namespace ddefit
