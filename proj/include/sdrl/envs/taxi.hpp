#pragma once

#include <memory>

#include "sdrl/envs/environment.hpp"

namespace sdrl {

// 5x5 grid, (column,row) with (0,0) top-left; standard wall layout.
// Landmarks: R=(0,0) G=(4,0) Y=(0,4) B=(3,4); coupon cell (4,4); reset (0,4).
enum TaxiActionId {
  kTaxiNorth = 0,
  kTaxiSouth,
  kTaxiEast,
  kTaxiWest,
  kTaxiPickup,
  kTaxiDropoff,
  kTaxiCollect,
  kTaxiActionCount
};

enum TaxiLandmark { kLandmarkR = 0, kLandmarkG, kLandmarkY, kLandmarkB, kPassengerInTaxi };

struct TaxiState {
  int x = 0;
  int y = 4;
  int passenger = kLandmarkR;    // landmark index or kPassengerInTaxi
  int destination = kLandmarkG;  // landmark index
  bool coupon_available = true;

  EnvObs encode() const;
  static TaxiState decode(EnvObs obs);
  friend bool operator==(const TaxiState&, const TaxiState&) = default;
};

struct TaxiParams {
  double dropoff_reward = 50.0;
  int passenger_source = kLandmarkR;
  int destination = kLandmarkG;
};

std::pair<int, int> taxi_landmark_cell(int landmark);
bool taxi_wall_between(int x, int y, int nx, int ny);

// Deterministic step: movement costs -1 (blocked moves stay, still -1);
// successful dropoff pays the task reward and ends the episode; improper
// pickup/dropoff/collect cost -10; collect at (4,4) pays +10 once.
// Pickup succeeds only at the passenger cell after the coupon was collected.
std::tuple<TaxiState, double, bool> taxi_step(const TaxiState& s, int action,
                                              const TaxiParams& params);

struct TaskSchedule {
  double base_dropoff_reward = 50.0;
  double decrement = 5.0;
  long episodes_per_task = 2000;
  int num_tasks = 10;

  double dropoff_reward(int task) const {  // 1-based
    return base_dropoff_reward - decrement * (task - 1);
  }
};

class TaxiEnv : public Environment {
 public:
  explicit TaxiEnv(TaxiParams params = {});

  EnvObs reset() override;
  StepResult step(int action) override;
  EnvObs observation() const override { return state_.encode(); }
  int action_count() const override { return kTaxiActionCount; }
  bool grounds(const SymbolicState& s, EnvObs obs) const override;

  void set_dropoff_reward(double r) { params_.dropoff_reward = r; }
  void set_state(const TaxiState& s) { state_ = s; }
  const TaxiState& state() const { return state_; }
  const TaxiParams& params() const { return params_; }

  const ActionDescription& description() const { return *description_; }
  SymbolicState initial_symbolic_state() const;
  GroundingOracle grounding_oracle() const;

  std::string render() const;  // ASCII map for debugging

  static const char* domain_text();

 private:
  TaxiParams params_;
  TaxiState state_;
  std::shared_ptr<const ActionDescription> description_;
  int f_at_, f_have_passenger_, f_coupon_taken_, f_delivered_;
};

}  // namespace sdrl
