#pragma once
// Shared scaffolding: a small bar with one agent and two clients present.

#include <string>
#include <vector>

#include "facework/culture.hpp"
#include "facework/interaction.hpp"

namespace testbar {

using namespace facework;

inline InteractionState make_state() {
  InteractionState s;
  s.norms = default_pack().occasions.at("casual_bar");
  s.cast = {{"agent", Role::agent, std::nullopt, {0, 80}},
            {"client1", Role::client, std::nullopt, {300, 300}},
            {"client2", Role::client, std::nullopt, {500, 500}}};
  for (const auto& p : s.cast) {
    s.present[p.id] = true;
    s.positions[p.id] = p.spawn;
  }
  s.landmarks["counter"] = {0, 0};
  s.ties[{"client1", "client2"}] = Tie::strangers;
  s.catalog.prices = {{"espresso", 110},         {"caffe_macchiato", 130},
                      {"latte", 200},            {"coffee", 250},
                      {"coffee_with_milk", 280}, {"water", 80}};
  s.catalog.compatible.insert({"caffe_macchiato", "espresso"});
  s.catalog.compatible.insert({"coffee", "coffee_with_milk"});
  return s;
}

inline DialogueAct say_act(ActKind kind, const std::string& from,
                           const std::string& to) {
  DialogueAct act;
  act.kind = kind;
  act.speaker = from;
  act.addressees = {to};
  return act;
}

inline Event next_event(const InteractionState& s, EventPayload payload,
                        Tick time) {
  Event ev;
  ev.index = s.last_index + 1;
  ev.time = time;
  ev.payload = std::move(payload);
  return ev;
}

// Apply a scripted say and return the new state.
inline InteractionState step_say(const InteractionState& s, DialogueAct act,
                                 Tick time) {
  return apply_event(s, next_event(s, Say{std::move(act)}, time));
}

}  // namespace testbar
