#include "lsm/tmaze.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace lsm {

const char* to_string(EpisodeEvent e) {
    switch (e) {
        case EpisodeEvent::None: return "none";
        case EpisodeEvent::Food: return "food";
        case EpisodeEvent::Poison: return "poison";
        case EpisodeEvent::Timeout: return "timeout";
        case EpisodeEvent::Collision: return "collision";
    }
    return "?";
}

std::array<double, 3> tmaze_observation_currents(const TMazeObservation& obs) {
    auto amp = [](TMazeSymbol s) {
        switch (s) {
            case TMazeSymbol::Wall: return 0.5;
            case TMazeSymbol::Road: return 1.0;
            case TMazeSymbol::Poison: return 1.5;
            case TMazeSymbol::Food: return 2.0;
        }
        throw std::invalid_argument("unknown maze symbol");
    };
    return {amp(obs.left), amp(obs.front), amp(obs.right)};
}

namespace {

// Arm row on top, stem down the middle. Terminal ends at the arm tips.
//   T . J . T      row 0
//   . . s . .      rows 1..4: stem, start at the bottom
constexpr int kDr[4] = {-1, 0, 1, 0};  // N E S W
constexpr int kDc[4] = {0, 1, 0, -1};

}  // namespace

TMazeWorld::TMazeWorld(const TMazeParams& params, uint64_t seed)
    : params_(params), rng_(seed) {
    if (params_.step_budget < 1)
        throw std::invalid_argument("TMazeParams: step_budget must be >= 1");
    reset_episode();
}

bool TMazeWorld::walkable(int row, int col) const {
    if (row == 0) return col >= 0 && col < kCols;
    return col == 2 && row >= 1 && row < kRows;
}

bool TMazeWorld::terminal(int row, int col) const {
    return row == 0 && (col == 0 || col == kCols - 1);
}

int TMazeWorld::cell_index(int row, int col) const {
    // Fixed enumeration of the 7 non-terminal cells: arm row left to right,
    // then the stem top to bottom.
    if (row == 0) return col - 1;           // cols 1..3 -> 0..2
    return 3 + (row - 1);                   // rows 1..4 -> 3..6
}

TMazeSymbol TMazeWorld::symbol_at(int row, int col) const {
    if (!walkable(row, col)) return TMazeSymbol::Wall;
    if (terminal(row, col)) {
        bool west = col == 0;
        bool is_food = west == food_west_;
        return is_food ? TMazeSymbol::Food : TMazeSymbol::Poison;
    }
    return TMazeSymbol::Road;
}

TMazeObservation TMazeWorld::observation() const {
    auto look = [&](int dir) {
        return symbol_at(row_ + kDr[dir], col_ + kDc[dir]);
    };
    return {look((heading_ + 3) % 4), look(heading_), look((heading_ + 1) % 4)};
}

std::vector<double> TMazeWorld::observation_currents() const {
    auto a = tmaze_observation_currents(observation());
    return {a.begin(), a.end()};
}

int TMazeWorld::distance_to_food() const {
    // Breadth-first distance on the walkable cells.
    const int food_col = food_west_ ? 0 : kCols - 1;
    std::vector<int> dist(kRows * kCols, -1);
    std::deque<std::pair<int, int>> queue{{0, food_col}};
    dist[food_col] = 0;
    while (!queue.empty()) {
        auto [r, c] = queue.front();
        queue.pop_front();
        for (int dir = 0; dir < 4; ++dir) {
            int nr = r + kDr[dir], nc = c + kDc[dir];
            if (nr < 0 || nr >= kRows || nc < 0 || nc >= kCols) continue;
            if (!walkable(nr, nc) || dist[nr * kCols + nc] >= 0) continue;
            dist[nr * kCols + nc] = dist[r * kCols + c] + 1;
            queue.push_back({nr, nc});
        }
    }
    return dist[row_ * kCols + col_];
}

StepOutcome TMazeWorld::step(int action) {
    if (action < 0 || action >= 3)
        throw std::invalid_argument("TMazeWorld: invalid action id");
    if (pending_event_ != EpisodeEvent::None)
        throw std::logic_error("TMazeWorld: episode already finished");

    const int dist_before = distance_to_food();

    switch (static_cast<TMazeAction>(action)) {
        case TMazeAction::Forward: break;
        case TMazeAction::Left: heading_ = (heading_ + 3) % 4; break;
        case TMazeAction::Right: heading_ = (heading_ + 1) % 4; break;
    }
    int nr = row_ + kDr[heading_], nc = col_ + kDc[heading_];
    if (nr >= 0 && nr < kRows && nc >= 0 && nc < kCols && walkable(nr, nc)) {
        row_ = nr;
        col_ = nc;
    }
    ++steps_in_episode_;

    StepOutcome out;
    if (terminal(row_, col_)) {
        bool got_food = symbol_at(row_, col_) == TMazeSymbol::Food;
        out.da = got_food ? 3.0 : -3.0;
        out.done = true;
        out.event = got_food ? EpisodeEvent::Food : EpisodeEvent::Poison;
    } else {
        int dis_m = distance_to_food() - dist_before;
        out.da = dis_m < 0 ? 1.0 : -1.0;
        if (steps_in_episode_ >= params_.step_budget) {
            out.done = true;
            out.event = EpisodeEvent::Timeout;
        }
    }
    if (out.done) pending_event_ = out.event;
    return out;
}

void TMazeWorld::record_episode_end(EpisodeEvent event) {
    if (event == EpisodeEvent::Food)
        ++food_streak_;
    else
        food_streak_ = 0;
}

bool TMazeWorld::maybe_reverse() {
    if (food_streak_ < params_.reversal_streak) return false;
    if (!rng_.bernoulli(params_.reversal_probability)) return false;
    food_west_ = !food_west_;
    food_streak_ = 0;
    return true;
}

bool TMazeWorld::finish_episode() {
    record_episode_end(pending_event_);
    bool reversed = maybe_reverse();
    reset_episode();
    return reversed;
}

void TMazeWorld::reset_episode() {
    row_ = kRows - 1;
    col_ = 2;
    heading_ = 0;
    steps_in_episode_ = 0;
    pending_event_ = EpisodeEvent::None;
}

std::string TMazeWorld::state_label() const {
    static const char* headings = "NESW";
    auto obs = observation();
    auto sym = [](TMazeSymbol s) {
        switch (s) {
            case TMazeSymbol::Wall: return 'w';
            case TMazeSymbol::Road: return 'r';
            case TMazeSymbol::Food: return 'f';
            case TMazeSymbol::Poison: return 'p';
        }
        return '?';
    };
    std::string label = "r" + std::to_string(row_) + "c" + std::to_string(col_);
    label += headings[heading_];
    label += ':';
    label += sym(obs.left);
    label += sym(obs.front);
    label += sym(obs.right);
    return label;
}

std::vector<std::vector<double>> TMazeWorld::probe_ensemble() const {
    // Every observation the agent can encounter, under both reward layouts.
    std::set<std::array<double, 3>> unique;
    TMazeWorld scratch(params_, 0);
    for (int placement = 0; placement < 2; ++placement) {
        scratch.food_west_ = placement == 0;
        for (int r = 0; r < kRows; ++r) {
            for (int c = 0; c < kCols; ++c) {
                if (!scratch.walkable(r, c) || scratch.terminal(r, c)) continue;
                scratch.row_ = r;
                scratch.col_ = c;
                for (int h = 0; h < 4; ++h) {
                    scratch.heading_ = h;
                    unique.insert(tmaze_observation_currents(scratch.observation()));
                }
            }
        }
    }
    std::vector<std::vector<double>> ensemble;
    for (const auto& a : unique) ensemble.emplace_back(a.begin(), a.end());
    return ensemble;
}

int TMazeWorld::q_state_count() const { return 7 * 4; }

int TMazeWorld::q_state_index() const {
    return cell_index(row_, col_) * 4 + heading_;
}

}  // namespace lsm
