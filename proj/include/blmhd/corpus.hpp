/// @file corpus.hpp
/// @brief Named initial data and the test-function corpora used by the checks.
#pragma once

#include "blmhd/inequalities.hpp"

#include <string>
#include <vector>

namespace blmhd {

/// equilibrium, smooth, shear, x_independent. The amplitude scales the deviation
/// from the outer state (ignored for equilibrium and x_independent).
InitialData preset(const std::string& name, double amplitude = 0.1);
std::vector<std::string> preset_names();

/// A profile f(x, y) that vanishes on the wall and decays at the top.
struct CorpusFunction {
    std::string name;
    Profile2D f;
};

/// Twelve Hardy test functions.
std::vector<CorpusFunction> hardy_corpus();

/// Six half-line heat problems; the first four have no forcing.
std::vector<HeatProblem> heat_corpus();

/// Ten physical data sets with h1 >= 0.6 and a decaying stream function.
std::vector<InitialData> equivalence_corpus();

}  // namespace blmhd
