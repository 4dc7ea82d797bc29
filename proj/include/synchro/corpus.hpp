#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "synchro/document.hpp"
#include "synchro/trace.hpp"

namespace synchro::corpus {

/// Parameters of the environment, coping and commitment stages.
struct StageParams {
    /// Environment states; every element is linked to the letter of its name.
    ElementUniverse environment;
    /// Coping strategy letters.
    std::set<std::string> coping;
    /// Commitment functions as elements.
    ElementUniverse commitments;
    /// tau-labeled edges over the environment.
    LabeledGraph g_tau;
    /// Coping-labeled edges over the environment.
    LabeledGraph g_env;
    /// Coping-labeled edges over the commitments.
    LabeledGraph g_commit;
    std::string x0;
    std::string phi0;
    /// (commitment, environment element) -> 0 or 1.
    std::map<std::pair<std::string, std::string>, int> commitment_table;
};

std::vector<Diagnostic> validate_params(const StageParams& params);

/// The "enough money" instantiation.
StageParams money_params();

struct Stage {
    int index = 0;
    ModelDocument document;
    System system;
    std::vector<std::string> notes;
};

/// Stages 1 to 7. Stages 4 and above throw Error without valid parameters.
Stage stage(int k, const std::optional<StageParams>& params = std::nullopt);

/// The worked executions for stages 3 to 6, bound to money_params().
std::vector<Trace> reference_traces(int k);

/// The individual is stressed at (x, phi) iff phi(x) = 0. Throws Error on an
/// unknown element.
bool stressed(const std::string& x, const std::string& phi, const StageParams& params);

/// Small illustrations of each construction.
namespace examples {
/// Three automata: a/tau between q1 and q2, an a-loop on p, b and tau loops on r.
ModelDocument rendezvous();
/// Its two worked executions.
std::vector<Trace> rendezvous_traces();
/// (v2 = a) between two compact states over {x0,x1,x2}, (v2 = b) as a self-loop.
ModelDocument unfolding();
/// One edge-guarded compact transition over {x0,x1,x2}.
ModelDocument graph_transition();
/// Abstract q1/q2 automaton and its five-state refinement.
ModelDocument refinement_abstract();
ModelDocument refinement_refined();
} // namespace examples

} // namespace synchro::corpus
