#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jf/series.hpp"

namespace jf {

// named series for the command line: theta constants, lattice thetas, one-variable
// forms and every catalog form as "<group prefix>.<form>"
struct NamedSeries {
    std::string name;
    std::string description;
    std::function<FourierSeries(int N)> build;
};

const std::vector<NamedSeries>& series_registry();
const NamedSeries* find_series(const std::string& name);
// closest names by edit distance
std::vector<std::string> suggest_series(const std::string& name, std::size_t max = 5);

// glob with '*' and '?'
bool glob_match(const std::string& pattern, const std::string& text);

}  // namespace jf
