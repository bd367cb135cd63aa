#include "ddefit/data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ddefit/solver.hpp"

namespace ddefit {

Dataset generate_true(const DynamicsModel& f, const InitialConditionModel& x0,
                      const Vec& theta, Delay tau, const Vec& phi,
                      double t_final, double solve_dt) {
    if (!(solve_dt > 0.0)) throw DegenerateInput("generate_true: solve_dt must be positive");
    const double ratio = tau.value() / solve_dt;
    const int n_tau = static_cast<int>(std::lround(ratio));
    if (n_tau < 1 || std::abs(ratio - n_tau) > 1e-9 * std::max(1.0, ratio))
        throw DegenerateInput("generate_true: solve_dt must divide tau");

    const Trajectory traj = solve_forward(f, x0, theta, tau, phi, t_final, n_tau);
    const int n_data = static_cast<int>(std::floor(t_final / traj.dt + 1e-9));
    if (n_data < 2 || n_data > traj.size())
        throw DegenerateInput("generate_true: too few samples in [0, t_final]");

    Dataset ds;
    ds.times.reserve(n_data);
    ds.values.reserve(n_data);
    for (int k = 0; k < n_data; ++k) {
        ds.times.push_back(traj.time_at(k));
        ds.values.push_back(traj.states[k]);
    }
    return ds;
}

Dataset add_noise(const Dataset& ds, const NoiseSpec& spec) {
    if (ds.times.empty()) throw DegenerateInput("add_noise: empty dataset");
    if (spec.level < 0.0) throw DegenerateInput("add_noise: negative noise level");
    if (spec.level == 0.0) return ds;

    const int n = ds.size();
    const int d = ds.dim();

    // Per-component unbiased sample standard deviation of the clean data.
    Vec sigma(d, 0.0);
    if (n >= 2) {
        for (int c = 0; c < d; ++c) {
            double mean = 0.0;
            for (const Vec& v : ds.values) mean += v[c];
            mean /= n;
            double ss = 0.0;
            for (const Vec& v : ds.values) ss += (v[c] - mean) * (v[c] - mean);
            sigma[c] = spec.level * std::sqrt(ss / (n - 1));
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    Dataset out = ds;
    for (Vec& v : out.values) {
        for (int c = 0; c < d; ++c) v[c] += sigma[c] * unit(rng);
    }
    return out;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream file(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!file) throw IoError("cannot open for writing: " + path);
    const int d = ds.dim();
    file << "t";
    for (int c = 0; c < d; ++c) file << ",x" << c;
    file << "\n";
    char buf[64];
    for (int i = 0; i < ds.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", ds.times[i]);
        file << buf;
        for (int c = 0; c < d; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.values[i][c]);
            file << ',' << buf;
        }
        file << "\n";
    }
    if (!file) throw IoError("write failed: " + path);
}

Dataset read_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open for reading: " + path);

    std::string line;
    if (!std::getline(file, line)) throw ParseError(path + ": empty file");
    if (line.rfind("t", 0) != 0) throw ParseError(path + ": missing 't,...' header");
    int d = 0;
    for (char ch : line) {
        if (ch == ',') ++d;
    }
    if (d < 1) throw ParseError(path + ": header has no state columns");

    Dataset ds;
    int row = 1;
    while (std::getline(file, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        Vec values;
        double t = 0.0;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            double x = 0.0;
            try {
                std::size_t pos = 0;
                x = std::stod(cell, &pos);
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
                if (pos != cell.size()) throw ParseError("");
            } catch (...) {
                throw ParseError(path + ":" + std::to_string(row) + ": bad number '" + cell + "'");
            }
            if (!std::isfinite(x))
                throw ParseError(path + ":" + std::to_string(row) + ": non-finite value");
            if (col == 0) t = x;
            else values.push_back(x);
            ++col;
        }
        if (col != d + 1)
            throw ParseError(path + ":" + std::to_string(row) + ": expected " +
                             std::to_string(d + 1) + " columns, got " + std::to_string(col));
        if (!ds.times.empty() && !(t > ds.times.back()))
            throw ParseError(path + ":" + std::to_string(row) + ": times must be strictly ascending");
        ds.times.push_back(t);
        ds.values.push_back(std::move(values));
    }
    if (ds.times.empty()) throw ParseError(path + ": no data rows");
    return ds;
}

} // namespace ddefit
