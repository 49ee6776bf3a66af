#pragma once

#include <vector>

namespace levyts {

/// Discrete tenor T_1 < ... < T_{N+1} = T* with rate fixings s_i <= T_i.
/// Reversed indices T*_j = T_{N+1-j} serve the backward-induction view.
class tenor_structure {
 public:
  /// Fixings default to the period start dates T_1..T_N.
  explicit tenor_structure(std::vector<double> dates, std::vector<double> fixings = {});

  int periods() const { return static_cast<int>(dates_.size()) - 1; }  // N
  double date(int i) const { return dates_[static_cast<std::size_t>(i) - 1]; }      // T_i, i in [1, N+1]
  double fixing(int i) const { return fixings_[static_cast<std::size_t>(i) - 1]; }  // s_i, i in [1, N]
  double accrual(int i) const { return date(i + 1) - date(i); }  // delta_i, i in [1, N]
  double settlement() const { return dates_.back(); }            // T*
  double first_date() const { return dates_.front(); }           // T_1
  double last_fixing() const { return fixings_.back(); }         // s_N

  // reversed view, j in [0, N]: T*_0 = T*, T*_N = T_1
  double reversed_date(int j) const { return date(periods() + 1 - j); }
  double reversed_fixing(int j) const { return fixing(periods() + 1 - j); }  // j in [1, N]
  double reversed_accrual(int j) const { return accrual(periods() + 1 - j); }

  const std::vector<double>& dates() const { return dates_; }
  const std::vector<double>& fixings() const { return fixings_; }

 private:
  std::vector<double> dates_;
  std::vector<double> fixings_;
};

enum class option_side { cap, floor };

/// Cap/floor on the compounded product of the tenor's LIBOR periods,
/// settled at T*.
struct composition_spec {
  tenor_structure tenor;
  double level;  // K
  option_side side = option_side::cap;

  composition_spec(tenor_structure t, double level_in, option_side s = option_side::cap);
};

}  // namespace levyts
