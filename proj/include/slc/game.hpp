// SPDX-License-Identifier: MIT
// Finite extensive-form games for the two-relay, one-relay and augmented
// protocols, repeated k times, with exact rational utilities.
#pragma once

#include "slc/clauses.hpp"
#include "slc/econ.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slc {

enum class GameMode { TwoRelay, OneRelay, Augmented };
std::string to_string(GameMode m);

struct TooLarge : std::runtime_error {
    explicit TooLarge(std::uint64_t n) : std::runtime_error("TooLarge: " + std::to_string(n) + " terminals"), count(n) {}
    std::uint64_t count;
};
struct NotTerminal : std::invalid_argument {
    explicit NotTerminal(const std::string& why) : std::invalid_argument("NotTerminal: " + why) {}
};

inline constexpr int kChancePlayer = -1;
inline constexpr int kNumPlayers = 4;  // LW, R1, R2, PFN; R1 stands for the coalition when merged
std::string player_name(int player, bool coalition = false);

struct GameSpec {
    GameMode mode = GameMode::TwoRelay;
    std::uint32_t k = 1;
    EconomicParams econ;
    Terms terms;
    bool coalition = false;        // R1 and R2 act as one player with pooled utility
    bool pfn_forced_idle = false;  // augmented only: PFN's first move set is {x}
};

using Payoff = std::array<Rational, kNumPlayers>;

struct GameNode {
    int player = kChancePlayer;  // kChancePlayer also for terminals
    int infoset = -1;
    std::uint32_t first_child = 0;
    std::uint16_t n_children = 0;
    int parent = -1;
    std::uint16_t action = 0;  // index among the parent's children
    std::uint16_t stage = 0;
    int terminal = -1;         // index into utilities
    bool continues = false;    // terminal that would lead into another stage (for staged checks)
    bool terminal_node() const { return terminal >= 0; }
};

struct InfoSet {
    int owner = 0;
    std::string key;
    std::vector<std::string> actions;
    std::vector<std::uint32_t> nodes;
    std::uint16_t stage = 0;
    bool final_client_stage = false;  // post-claim client set in the last stage
};

struct GameTree {
    GameSpec spec;
    std::vector<GameNode> nodes;
    std::vector<InfoSet> infosets;
    std::vector<Payoff> utilities;  // per terminal, raw per-party (not coalition-merged)

    std::size_t terminal_count() const { return utilities.size(); }
    std::string action_label(std::uint32_t node, std::size_t child) const;
    std::vector<std::string> history(std::uint32_t node) const;
    Rational chance_prob(std::size_t child) const;  // a, a'
    // Utility of `player` as a decision maker (pooled under coalition).
    Rational payoff(const Payoff& u, int player) const;
};

// Terminal count without building; the guard for build_game.
std::uint64_t count_terminals(const GameSpec& spec);
GameTree build_game(const GameSpec& spec, std::uint64_t max_terminals = 10'000'000);

// Per-party utility of a terminal history given as action labels.
Payoff utility_of(const std::vector<std::string>& history, const GameSpec& spec);

// ---- strategies and equilibrium search ---------------------------------

using Distribution = std::vector<Rational>;
struct Profile {
    std::vector<Distribution> probs;  // per infoset
};

struct Assessment {
    Profile profile;
    std::vector<std::vector<Rational>> beliefs;  // per infoset, aligned with InfoSet::nodes
};

// Constants added at continuing terminals, for stage-by-stage evaluation.
struct Continuation {
    Payoff on_path{};  // honest continuation, per party
    Payoff best{};     // best continuation, per decision maker (pooled under coalition)
};

Profile pure_profile(const GameTree& g, const std::vector<std::size_t>& choice);
// Relays t, PFN m then d, client Q and follow unanimous claims; every other
// client set gets a sequentially rational reply under tremble beliefs.
Profile honest_profile(const GameTree& g, const Rational& eta, const Continuation* cont = nullptr);

// p' = p(1 - eta*n) + eta per decision set; chance untouched.
Profile tremble(const GameTree& g, const Profile& s, const Rational& eta);
std::vector<Rational> reach_probabilities(const GameTree& g, const Profile& s);
Assessment beliefs_from_trembles(const GameTree& g, const Profile& s, const Rational& eta);
// Per-node expected payoff vectors under s.
std::vector<Payoff> node_values(const GameTree& g, const Profile& s, const Continuation* cont = nullptr);
Rational expected_utility(const GameTree& g, const Assessment& a, int player, int infoset);

struct Deviation {
    int player = 0;
    int infoset = 0;
    std::string infoset_key;
    std::string action;
    Rational gain;
};

struct SearchStats {
    std::size_t nodes = 0, infosets = 0, tested = 0;
};

std::optional<Deviation> find_profitable_deviation(const GameTree& g, const Profile& s, const Rational& eta,
                                                   const Rational& tol, SearchStats* stats = nullptr,
                                                   const Continuation* cont = nullptr,
                                                   std::vector<Deviation>* all = nullptr);

// Player's value at the root when it best-responds everywhere (tremble beliefs).
Rational best_response_value(const GameTree& g, const Profile& s, const Rational& eta, int player,
                             const Continuation* cont = nullptr);

// Terminal histories reached with positive probability, as label strings.
std::vector<std::string> on_path_histories(const GameTree& g, const Profile& s);
std::vector<std::string> expected_honest_path(const GameSpec& spec);

// ---- theorem checks -----------------------------------------------------

struct Condition {
    std::string expr;
    Rational lhs, rhs;
    bool ok = false;
};

struct TheoremReport {
    int theorem = 0;
    std::uint32_t k = 1;
    GameSpec spec;
    std::vector<Condition> conditions;
    bool predicted = false;  // all conditions satisfied
    bool holds = false;      // no profitable deviation and path as stated
    bool path_ok = false;
    bool stable = false;     // same verdict at eta and eta/1000
    bool staged = false;
    SearchStats stats;
    std::optional<Deviation> witness;
    std::vector<std::string> path;
    std::vector<std::string> notes;
    bool verdict_matches() const { return holds == predicted; }
    std::string lines() const;
};

struct BadParams : std::invalid_argument {
    explicit BadParams(const std::string& why) : std::invalid_argument("BadParams: " + why) {}
};

// id 1: two relays; 2: single relay; 3: augmented with a monitoring PFN.
TheoremReport check_theorem(int id, const GameSpec& spec, const Rational& eta = Rational(1, 1000000));

// Stage-by-stage search with history-independent continuation constants;
// used for k = 3 where the full tree is too heavy.
std::optional<Deviation> staged_search(const GameSpec& spec, const Rational& eta, const Rational& tol,
                                       SearchStats* stats = nullptr);

struct DominanceResult {
    std::size_t sets = 0, comparisons = 0;
    std::vector<std::string> violations;
};
// T-substituted actions weakly dominate L/R/X ones at every final-stage client set.
DominanceResult check_lemma_dominance(const GameTree& g);

struct EnumerationResult {
    int player = 0;
    std::size_t strategies = 0;
    Rational best_gain;  // ex-ante, over the honest profile
};
// Full pure-strategy enumeration for one player against the honest profile.
EnumerationResult enumerate_best_gain(const GameTree& g, const Profile& honest, int player,
                                      std::size_t max_strategies = 2'000'000);

}  // namespace slc
