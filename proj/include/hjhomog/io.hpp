#pragma once

#include <map>
#include <string>
#include <vector>

#include "hjhomog/cell_problems.hpp"
#include "hjhomog/control_model.hpp"
#include "hjhomog/effective_table.hpp"
#include "hjhomog/geometry.hpp"
#include "hjhomog/grid.hpp"

namespace hjh {

std::string format_double(double v);

/// CSV "index,x1,x2,value" plus a JSON meta sidecar at <path>.meta.json.
void write_field_csv(const std::string& path, const ValueField& field);

/** Sampled flux-limiter map p2 -> value with its rho-schedule diagnostics. */
struct FluxLimiterCurve {
    std::string kind; // E0_L, E0_R, E0_M, E_LM, E_MR, E_limit, E_eps(<eps>)
    std::vector<double> p2;
    std::vector<double> value;
    std::vector<double> rho_last;
    std::vector<double> increment;
    std::vector<int> converged;
    std::vector<double> extra; ///< optional check column
    std::string extra_name;
};

void write_curve_csv(const std::string& path, const FluxLimiterCurve& curve);
void write_table_csv(const std::string& path, const EffectiveTable& table);

std::string sha256_file(const std::string& path);

/** Flat key-value run configuration with [sections]; arrays as comma lists. */
struct RunConfig {
    // [medium]
    std::string medium = "asym"; ///< c5 | asym | path to a control file
    bool far_field = false;
    double far_field_cap = 2.0;
    // [profile]
    double profile_a = 0.25;
    double profile_b = 0.75;
    double profile_h = 0.25;
    std::string profile_samples; ///< optional CSV of g samples
    // [scales]
    std::vector<double> eta_list{0.4, 0.2, 0.1};
    std::vector<double> eps_list{0.4, 0.2, 0.1};
    // [cell]
    std::vector<double> p2_list{-1.0, 0.0, 1.0};
    std::vector<double> rho_schedule{2.0, 3.0, 4.0, 6.0};
    std::vector<double> rho_schedule_1d{4.0, 8.0, 16.0};
    std::vector<double> lambda_schedule{0.02, 0.01, 0.005};
    double increment_tol = 5e-3;
    // [solver]
    double discount = 1.0;
    double tol = 1e-8;
    int jobs = 1;
    int finger_n2 = 64;
    double finger_h1 = 1.0 / 16.0;
    int max_n1 = 201;
    // [output]
    std::string out_dir = "out";

    std::map<std::string, std::string> flat() const;
};

RunConfig load_run_config(const std::string& path);
void validate(const RunConfig& config);
MediumPair medium_from_config(const RunConfig& config);
ToothProfile profile_from_config(const RunConfig& config);
CellOptions cell_options_from_config(const RunConfig& config);

/** Run manifest: config snapshot, stage timings, artifact hashes, checks. */
class RunManifest {
  public:
    explicit RunManifest(const RunConfig& config);
    void add_stage(const std::string& name, double seconds);
    void add_artifact(const std::string& path);
    void add_check(const std::string& name, bool pass, const std::string& detail = "");
    bool verify_artifacts() const; ///< re-hash every listed file
    void write(const std::string& path) const;

  private:
    std::map<std::string, std::string> config_;
    std::vector<std::pair<std::string, double>> stages_;
    std::vector<std::pair<std::string, std::string>> artifacts_;
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks_;
};

} // namespace hjh
