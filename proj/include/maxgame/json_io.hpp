#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "maxgame/core_types.hpp"
#include "maxgame/equilibrium.hpp"
#include "maxgame/oracle.hpp"
#include "maxgame/payoff.hpp"
#include "maxgame/simulate.hpp"

namespace maxgame {

// 17 significant digits, locale-free; round-trips any double exactly.
std::string format_real(double v);

// {"points": [[x, p], ...]} with x ascending.
nlohmann::json distribution_to_json(const DiscreteDistribution& d);
DiscreteDistribution distribution_from_json(const nlohmann::json& j);

// {"n", "mu", "regime", "a", "s"}.
nlohmann::json strategy_to_json(const EquilibriumStrategy& eq);
EquilibriumStrategy strategy_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BestResponseReport& report);
nlohmann::json report_to_json(const SimulationReport& report);

// Header exactly "n,mu,a,s,regime".
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Row per player: player,wins,win_freq,empirical_mean,atom_draws,ci_radius.
std::string report_to_csv(const SimulationReport& report);

// Header exactly "x,w,line" with line = x/(n*mu).
std::string curve_to_csv(const WinCurve& curve, double mu, int m);

}  // namespace maxgame
