#pragma once

#include <string>
#include <vector>

#include "contagion/bond.hpp"
#include "contagion/cds.hpp"
#include "contagion/mc.hpp"
#include "contagion/model.hpp"

namespace contagion::config {

enum class Command { survival, bond, cds, sweep, validate };

Command command_from_string(const std::string& s);
std::string to_string(Command c);

// Fully-validated run description: flat parameters with the standard
// benchmark defaults, an optional sweep axis, and the output path.
struct RunSpec {
    Command command = Command::survival;
    Command target  = Command::bond;  // quantity computed per sweep row

    double sigma1 = 0.2, sigma2 = 0.2;
    double q1 = 0.0, q2 = 0.0;
    double gamma1 = 0.03, gamma2 = 0.03;
    double quality1 = 2.0, quality2 = 2.0;
    double face = 100.0;
    double notional = 100.0;
    double rf = 0.05;
    double rho = 0.0;
    double maturity = 5.0;  // T
    double t = 5.0;         // survival horizon for the survival command
    double omega = 0.7;
    double recovery = 0.5;
    cds::Flavor flavor = cds::Flavor::first;

    NumericsConfig numerics;
    mc::McConfig mc;

    std::string sweep_key;
    std::vector<double> sweep_values;
    std::string out;

    // Initial firm value from credit quality: V0 = quality * K * e^{-gamma T}.
    PairModel model() const;
    bond::BondContract bond_contract() const;
    cds::CdsContract cds_contract() const;

    bool operator==(const RunSpec&) const = default;
};

// Parses flat `key = value` text with '#' comments. Unknown keys, malformed
// numbers and violated invariants raise std::invalid_argument naming the key
// and line.
RunSpec parse_config(const std::string& text);

// Canonical key=value rendering; parse_config(render(spec)) == spec.
std::string render(const RunSpec& spec);

// Executes the run and returns an RFC-4180-style CSV document (LF endings,
// 12 significant digits). Sweep rows that fail to compute are kept, with
// their value columns set to "failed".
std::string run(const RunSpec& spec);

}  // namespace contagion::config
