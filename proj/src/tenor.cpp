#include "levyts/tenor.hpp"

#include "levyts/errors.hpp"

namespace levyts {

tenor_structure::tenor_structure(std::vector<double> dates, std::vector<double> fixings) {
  if (dates.size() < 2) throw feasibility_error("tenor needs at least two dates");
  for (std::size_t i = 0; i + 1 < dates.size(); ++i) {
    if (!(dates[i] < dates[i + 1])) throw feasibility_error("tenor dates must strictly increase");
  }
  if (!(dates.front() > 0.0)) throw feasibility_error("tenor must start after time 0");
  if (fixings.empty()) fixings.assign(dates.begin(), dates.end() - 1);
  if (fixings.size() != dates.size() - 1) {
    throw feasibility_error("one fixing date per accrual period expected");
  }
  for (std::size_t i = 0; i < fixings.size(); ++i) {
    if (!(fixings[i] > 0.0) || fixings[i] > dates[i] + 1e-14) {
      throw feasibility_error("fixing dates must satisfy 0 < s_i <= T_i");
    }
    // ordered fixings are assumed throughout the indicator algebra
    if (i > 0 && !(fixings[i] > fixings[i - 1])) {
      throw feasibility_error("fixing dates must strictly increase");
    }
  }
  dates_ = std::move(dates);
  fixings_ = std::move(fixings);
}

composition_spec::composition_spec(tenor_structure t, double level_in, option_side s)
    : tenor(std::move(t)), level(level_in), side(s) {
  if (!(level > 0.0)) throw feasibility_error("cap/floor level K must be positive");
}

}  // namespace levyts
